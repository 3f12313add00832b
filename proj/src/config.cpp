#include "frachelm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "frachelm/errors.hpp"

namespace frachelm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct Reader {
    int line;
    std::string key;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("line " + std::to_string(line) + ": " + key + ": " + msg);
    }

    double real(const std::string& v) const {
        double out = 0.0;
        const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
        if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(out))
            fail("expected a number, got '" + v + "'");
        return out;
    }

    long long integer(const std::string& v) const {
        long long out = 0;
        const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
        if (r.ec != std::errc() || r.ptr != v.data() + v.size()) fail("expected an integer, got '" + v + "'");
        return out;
    }

    std::vector<double> reals(const std::string& v) const {
        std::vector<double> out;
        for (const auto& item : split_list(v)) out.push_back(real(item));
        if (out.empty()) fail("empty list");
        return out;
    }

    bool boolean(const std::string& v) const {
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        fail("expected true or false, got '" + v + "'");
    }

    Point point(const std::string& v) const {
        const auto xs = reals(v);
        if (xs.size() != 2) fail("expected two coordinates");
        return {xs[0], xs[1], 0.0};
    }
};

struct ShapeBlock {
    int line = 0;
    std::string type;
    Point center{0.0, 0.0, 0.0};
    double radius = 1.0;
    std::array<double, 2> half{0.5, 0.5};
    double contrast = 1.0;
    std::string file;
};

ShapeSpec finish_shape(const ShapeBlock& b, const std::filesystem::path& base_dir) {
    const std::string where = "shape block at line " + std::to_string(b.line);
    if (b.type == "disc") return ShapeSpec::make_disc(b.center, b.radius, b.contrast);
    if (b.type == "rect") return ShapeSpec::make_rect(b.center, b.half, b.contrast);
    if (b.type == "boomerang") return ShapeSpec::make_boomerang(b.center, b.radius, b.contrast);
    if (b.type == "mask") {
        if (b.file.empty()) throw ConfigError(where + ": mask needs file = <path>");
        std::filesystem::path p = b.file;
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        return load_mask(p.string());
    }
    throw ConfigError(where + ": unknown shape type '" + b.type + "'");
}

}  // namespace

double RunConfig::floor_fraction() const {
    if (floor_policy == "auto") return noise > 0.0 ? noise : 1e-12;
    double v = 0.0;
    const auto r = std::from_chars(floor_policy.data(), floor_policy.data() + floor_policy.size(), v);
    if (r.ec != std::errc() || r.ptr != floor_policy.data() + floor_policy.size() || v < 0.0)
        throw ConfigError("floor: expected 'auto' or a nonnegative number");
    return v;
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool in_shape = false;
    ShapeBlock block;

    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line == "[shape]") {
            if (in_shape) cfg.shapes.push_back(finish_shape(block, base_dir));
            in_shape = true;
            block = ShapeBlock{};
            block.line = lineno;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const Reader r{lineno, key};

        if (in_shape) {
            if (key == "type") block.type = val;
            else if (key == "center") block.center = r.point(val);
            else if (key == "radius" || key == "scale") block.radius = r.real(val);
            else if (key == "half_widths") {
                const auto hw = r.reals(val);
                if (hw.size() != 2) r.fail("expected two half-widths");
                block.half = {hw[0], hw[1]};
            } else if (key == "contrast") block.contrast = r.real(val);
            else if (key == "file") block.file = val;
            else r.fail("unknown shape key");
            continue;
        }

        if (key == "s") cfg.s = r.reals(val);
        else if (key == "k") cfg.k = r.real(val);
        else if (key == "d") cfg.d = static_cast<int>(r.integer(val));
        else if (key == "x_max") cfg.x_max = r.real(val);
        else if (key == "N_x") cfg.N_x = static_cast<int>(r.integer(val));
        else if (key == "N_inc") cfg.N_inc = static_cast<int>(r.integer(val));
        else if (key == "noise") cfg.noise = r.real(val);
        else if (key == "floor") cfg.floor_policy = val;
        else if (key == "output_dir") cfg.output_dir = val;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(r.integer(val));
        else if (key == "threads") cfg.threads = static_cast<int>(r.integer(val));
        else if (key == "spectral_rule") {
            if (val == "rotated") cfg.kernel.rule = SpectralRule::rotated;
            else if (val == "trapezoid") cfg.kernel.rule = SpectralRule::trapezoid;
            else r.fail("expected rotated or trapezoid");
        } else if (key == "cell_mass") {
            if (val == "asymptotic") cfg.kernel.mass = CellMassRule::asymptotic;
            else if (val == "disc_integral") cfg.kernel.mass = CellMassRule::disc_integral;
            else if (val == "square") cfg.kernel.mass = CellMassRule::square;
            else r.fail("expected asymptotic, disc_integral or square");
        } else if (key == "kernel_model") {
            if (val == "fractional") cfg.kernel.model = KernelModel::fractional;
            else if (val == "helmholtz") cfg.kernel.model = KernelModel::helmholtz;
            else r.fail("expected fractional or helmholtz");
        } else if (key == "refined_hankel") cfg.kernel.refined_hankel = r.boolean(val);
        else if (key == "sample_decimation") cfg.sample_decimation = static_cast<int>(r.integer(val));
        else if (key == "sample_extent") cfg.sample_extent = r.real(val);
        else if (key == "sample_points") cfg.sample_points = static_cast<int>(r.integer(val));
        else if (key == "threshold") cfg.threshold = r.real(val);
        else if (key == "probe_r_min") cfg.probe_r_min = r.real(val);
        else if (key == "probe_r_max") cfg.probe_r_max = r.real(val);
        else if (key == "probe_points") cfg.probe_points = static_cast<int>(r.integer(val));
        else if (key == "schedule") {
            cfg.schedule.clear();
            for (double v : r.reals(val)) {
                if (v != std::floor(v)) r.fail("schedule entries must be integers");
                cfg.schedule.push_back(static_cast<int>(v));
            }
        } else if (key == "alpha") cfg.alpha = r.real(val);
        else if (key == "alpha_out_of_theory") cfg.alpha_out_of_theory = r.real(val);
        else r.fail("unknown key");
    }
    if (in_shape) cfg.shapes.push_back(finish_shape(block, base_dir));
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

void validate(const RunConfig& cfg) {
    for (double s : cfg.s)
        if (!(s > 0.0 && s < 1.0)) throw ConfigError("s must lie in (0, 1)");
    if (cfg.s.empty()) throw ConfigError("s: empty list");
    if (!(cfg.k > 0.0)) throw ConfigError("k must be positive");
    if (cfg.d != 2) throw ConfigError("d: the solver pipeline supports d = 2 only");
    if (!(cfg.x_max > 0.0)) throw ConfigError("x_max must be positive");
    if (cfg.N_x < 2) throw ConfigError("N_x must be at least 2");
    if (cfg.N_inc < 2) throw ConfigError("N_inc must be at least 2");
    if (cfg.noise < 0.0) throw ConfigError("noise must be nonnegative");
    if (cfg.sample_decimation < 1) throw ConfigError("sample_decimation must be positive");
    if (cfg.sample_extent < 0.0) throw ConfigError("sample_extent must be nonnegative");
    if (cfg.sample_points != 0 && cfg.sample_points < 2) throw ConfigError("sample_points must be at least 2");
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) throw ConfigError("threshold must lie in (0, 1)");
    if (!(cfg.probe_r_min > 0.0 && cfg.probe_r_max > cfg.probe_r_min)) throw ConfigError("probe radii invalid");
    if (cfg.probe_points < 2) throw ConfigError("probe_points must be at least 2");
    for (int n : cfg.schedule)
        if (n < 2) throw ConfigError("schedule entries must be at least 2");
    if (!(cfg.alpha > 0.0) || !(cfg.alpha_out_of_theory > 0.0)) throw ConfigError("alpha must be positive");
    for (const auto& sh : cfg.shapes) {
        if (sh.kind != ShapeSpec::Kind::mask && !(sh.contrast > 0.0)) throw ConfigError("shape contrast must be positive");
        if (sh.kind == ShapeSpec::Kind::mask && sh.mask_n != cfg.N_x)
            throw ConfigError("mask size " + std::to_string(sh.mask_n) + " does not match N_x");
        if ((sh.kind == ShapeSpec::Kind::disc || sh.kind == ShapeSpec::Kind::boomerang) && !(sh.radius > 0.0))
            throw ConfigError("shape radius must be positive");
        if (sh.kind == ShapeSpec::Kind::rect && !(sh.half[0] > 0.0 && sh.half[1] > 0.0))
            throw ConfigError("rect half-widths must be positive");
    }
    (void)cfg.floor_fraction();
}

const char* to_string(SpectralRule r) { return r == SpectralRule::rotated ? "rotated" : "trapezoid"; }
const char* to_string(CellMassRule r) {
    switch (r) {
        case CellMassRule::asymptotic: return "asymptotic";
        case CellMassRule::disc_integral: return "disc_integral";
        case CellMassRule::square: return "square";
    }
    return "asymptotic";
}
const char* to_string(KernelModel m) { return m == KernelModel::fractional ? "fractional" : "helmholtz"; }

nlohmann::json to_json(const ShapeSpec& s) {
    nlohmann::json j;
    switch (s.kind) {
        case ShapeSpec::Kind::disc: j["type"] = "disc"; break;
        case ShapeSpec::Kind::rect: j["type"] = "rect"; break;
        case ShapeSpec::Kind::boomerang: j["type"] = "boomerang"; break;
        case ShapeSpec::Kind::mask: j["type"] = "mask"; break;
    }
    if (s.kind == ShapeSpec::Kind::mask) {
        j["file"] = s.mask_path;
        return j;
    }
    j["center"] = {s.center[0], s.center[1]};
    j["contrast"] = s.contrast;
    if (s.kind == ShapeSpec::Kind::rect) j["half_widths"] = {s.half[0], s.half[1]};
    else j["radius"] = s.radius;
    return j;
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["s"] = c.s;
    j["k"] = c.k;
    j["d"] = c.d;
    j["x_max"] = c.x_max;
    j["N_x"] = c.N_x;
    j["N_inc"] = c.N_inc;
    j["noise"] = c.noise;
    j["floor"] = c.floor_policy;
    j["output_dir"] = c.output_dir.string();
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["spectral_rule"] = to_string(c.kernel.rule);
    j["cell_mass"] = to_string(c.kernel.mass);
    j["kernel_model"] = to_string(c.kernel.model);
    j["refined_hankel"] = c.kernel.refined_hankel;
    j["sample_decimation"] = c.sample_decimation;
    j["sample_extent"] = c.sample_extent;
    j["sample_points"] = c.sample_points;
    j["threshold"] = c.threshold;
    j["probe_r_min"] = c.probe_r_min;
    j["probe_r_max"] = c.probe_r_max;
    j["probe_points"] = c.probe_points;
    j["schedule"] = c.schedule;
    j["alpha"] = c.alpha;
    j["alpha_out_of_theory"] = c.alpha_out_of_theory;
    j["shapes"] = nlohmann::json::array();
    for (const auto& s : c.shapes) j["shapes"].push_back(to_json(s));
    return j;
}

}  // namespace frachelm
