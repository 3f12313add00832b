#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frachelm/config.hpp"
#include "frachelm/errors.hpp"
#include "frachelm/io.hpp"
#include "frachelm/parallel.hpp"
#include "frachelm/pipeline.hpp"

namespace fh = frachelm;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

struct Common {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    int threads = -1;
};

// Overrides go in front of the first shape block so they stay top-level.
fh::RunConfig resolve(const Common& c) {
    std::string text;
    fs::path base;
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw fh::IoError("cannot open config " + c.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
        base = fs::path(c.config_path).parent_path();
    }
    std::string extra;
    for (const auto& o : c.overrides) extra += o + "\n";
    const auto pos = text.find("[shape]");
    if (pos == std::string::npos) text += "\n" + extra;
    else text.insert(pos, extra);
    fh::RunConfig cfg = fh::parse_config(text, base);
    if (!c.out_dir.empty()) cfg.output_dir = c.out_dir;

    int threads = c.threads >= 0 ? c.threads : cfg.threads;
    if (const char* env = std::getenv("FRACHELM_THREADS")) {
        try {
            threads = std::stoi(env);
        } catch (const std::exception&) {
            throw fh::ConfigError("FRACHELM_THREADS must be an integer");
        }
    }
    if (threads < 0) throw fh::ConfigError("threads must be nonnegative");
    cfg.threads = threads;
    fh::set_num_threads(threads);
    return cfg;
}

std::string tag(double s) { return "s" + fh::io::fmt(s); }

void write_manifest(const fh::RunConfig& cfg, const std::string& command, const nlohmann::json& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["version"] = fh::version();
    j["config"] = fh::to_json(cfg);
    j["outputs"] = outputs;
    fh::io::write_json(cfg.output_dir / (command + "_manifest.json"), j);
}

void cmd_kernel_probe(const fh::RunConfig& cfg) {
    nlohmann::json outputs = nlohmann::json::array();
    for (double s : cfg.s) {
        const fs::path path = cfg.output_dir / ("kernel_probe_" + tag(s) + ".csv");
        auto out = fh::io::open_output(path);
        fh::write_probe_csv(out, fh::kernel_probe(cfg, s));
        outputs.push_back(path.filename().string());
    }
    write_manifest(cfg, "kernel-probe", outputs);
}

void cmd_validate_direct(const fh::RunConfig& cfg, bool out_of_theory, bool dump) {
    nlohmann::json outputs = nlohmann::json::array();
    for (double s : cfg.s) {
        const auto rows = fh::validate_direct_schedule(cfg, s, out_of_theory);
        std::vector<std::pair<std::string, double>> tests = {{"gaussian", 0.0}, {"algebraic", cfg.alpha}};
        if (out_of_theory) tests.emplace_back("algebraic", cfg.alpha_out_of_theory);
        for (const auto& [name, alpha] : tests) {
            std::vector<fh::ValidationRow> sel;
            for (const auto& r : rows)
                if (r.test == name && r.alpha == alpha) sel.push_back(r);
            const std::string stem =
                "validate_" + name + (name == "algebraic" ? "_a" + fh::io::fmt(alpha) : "") + "_" + tag(s);
            const fs::path path = cfg.output_dir / (stem + ".csv");
            auto out = fh::io::open_output(path);
            fh::write_validation_csv(out, sel);
            outputs.push_back(path.filename().string());
            for (const auto& r : sel)
                std::cout << stem << " N_x=" << r.N_x << " err_L2=" << r.errors.err_L2
                          << " err_Linf=" << r.errors.err_Linf << "\n";
            if (!dump) continue;
            const int n = cfg.schedule.back();
            const auto d = fh::direct_dump(cfg, s, name == "gaussian" ? fh::RhsKind::gaussian : fh::RhsKind::algebraic,
                                           alpha, n);
            const std::string dstem = "field_" + stem.substr(9) + "_N" + std::to_string(n);
            auto full = fh::io::open_output(cfg.output_dir / (dstem + ".csv"));
            fh::write_dump_csv(full, d, false);
            auto slice = fh::io::open_output(cfg.output_dir / (dstem + "_slice.csv"));
            fh::write_dump_csv(slice, d, true);
            outputs.push_back(dstem + ".csv");
            outputs.push_back(dstem + "_slice.csv");
        }
    }
    write_manifest(cfg, "validate-direct", outputs);
}

void cmd_forward(const fh::RunConfig& cfg) {
    nlohmann::json outputs = nlohmann::json::array();
    bool medium_written = false;
    for (double s : cfg.s) {
        const auto fr = fh::run_forward(cfg, s);
        if (!medium_written) {
            auto m = fh::io::open_output(cfg.output_dir / "medium.csv");
            fh::write_medium_csv(m, fr.grid, fr.medium);
            outputs.push_back("medium.csv");
            medium_written = true;
        }
        const std::string stem = "farfield_" + tag(s);
        auto out = fh::io::open_output(cfg.output_dir / (stem + ".csv"));
        fh::write_farfield_csv(out, fr.farfield);
        fh::io::write_json(cfg.output_dir / (stem + ".json"), fh::farfield_sidecar(fr, cfg, s));
        outputs.push_back(stem + ".csv");
        outputs.push_back(stem + ".json");
        std::cout << stem << " N_supp=" << fr.ls.support.size() << " unitarity=" << fr.unitarity
                  << " reciprocity=" << fr.reciprocity << "\n";
    }
    write_manifest(cfg, "forward", outputs);
}

void emit_reconstruction(const fh::RunConfig& cfg, double s, const fh::ReconstructResult& r, nlohmann::json& outputs) {
    const std::string stem = "indicator_" + tag(s);
    auto out = fh::io::open_output(cfg.output_dir / (stem + ".csv"));
    fh::write_indicator_csv(out, r.map);
    fh::io::write_json(cfg.output_dir / (stem + ".json"), fh::reconstruct_summary(r, cfg, s));
    outputs.push_back(stem + ".csv");
    outputs.push_back(stem + ".json");
    std::cout << stem << " components=" << r.components;
    if (r.has_truth) std::cout << " jaccard=" << r.metrics.jaccard << " area_ratio=" << r.metrics.area_ratio;
    std::cout << "\n";
}

void cmd_reconstruct(fh::RunConfig cfg, const std::vector<std::string>& farfield_files) {
    nlohmann::json outputs = nlohmann::json::array();
    if (farfield_files.empty()) {
        for (double s : cfg.s) {
            const auto fr = fh::run_forward(cfg, s);
            emit_reconstruction(cfg, s, fh::reconstruct(fr.farfield, cfg, &fr.grid, &fr.medium), outputs);
        }
        write_manifest(cfg, "reconstruct", outputs);
        return;
    }
    for (const auto& file : farfield_files) {
        const fs::path csv = file;
        const nlohmann::json side = fh::io::read_json(fs::path(csv).replace_extension(".json"));
        const double k = side.value("k", -1.0);
        const int n_inc = side.value("N_inc", -1);
        if (k != cfg.k || n_inc != cfg.N_inc)
            throw fh::ConfigError(file + ": far-field k/N_inc (" + fh::io::fmt(k) + ", " + std::to_string(n_inc) +
                                  ") disagree with the request (" + fh::io::fmt(cfg.k) + ", " +
                                  std::to_string(cfg.N_inc) + ")");
        const fh::FarFieldMatrix fm = fh::read_farfield(csv, side);
        fh::RunConfig run = cfg;
        run.noise = side.value("noise", 0.0);
        if (side.contains("x_max") && side.contains("N_x")) {
            run.x_max = side["x_max"].get<double>();
            run.N_x = side["N_x"].get<int>();
        }
        fh::ReconstructResult r;
        if (!cfg.shapes.empty()) {
            const fh::Grid grid = fh::build_grid(run.x_max, run.N_x, 2);
            const fh::Medium medium = fh::make_medium(grid, cfg.shapes);
            r = fh::reconstruct(fm, run, &grid, &medium);
        } else {
            r = fh::reconstruct(fm, run);
        }
        emit_reconstruction(run, fm.params.s, r, outputs);
    }
    write_manifest(cfg, "reconstruct", outputs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional Helmholtz scattering: kernel, forward solver and factorization-method imaging"};
    app.set_version_flag("--version", fh::version());
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", common.config_path, "Run configuration file (key = value)");
        sub->add_option("-o,--out", common.out_dir, "Output directory (overrides output_dir)");
        sub->add_option("--set", common.overrides, "Extra key=value setting, applied after the config file");
        sub->add_option("-t,--threads", common.threads, "Worker threads, 0 = all cores (FRACHELM_THREADS wins)");
    };

    auto* probe = app.add_subcommand("kernel-probe", "Tabulate Phi_helm, Phi^Delta and Phi_{s,k} over radius");
    add_common(probe);

    bool out_of_theory = false, dump = false;
    auto* validate = app.add_subcommand("validate-direct", "Manufactured-solution errors over a refinement schedule");
    add_common(validate);
    validate->add_flag("--out-of-theory", out_of_theory, "Also run the algebraic test with alpha_out_of_theory");
    validate->add_flag("--dump", dump, "Write the finest 2-D fields and their y = 0 slice");

    auto* forward = app.add_subcommand("forward", "Far-field matrix of the configured medium");
    add_common(forward);

    std::vector<std::string> farfield_files;
    auto* recon = app.add_subcommand("reconstruct", "Factorization-method indicator map");
    add_common(recon);
    recon->add_option("-f,--farfield", farfield_files, "Far-field CSV from `forward` (sidecar JSON next to it)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        const fh::RunConfig cfg = resolve(common);
        if (*probe) cmd_kernel_probe(cfg);
        else if (*validate) cmd_validate_direct(cfg, out_of_theory, dump);
        else if (*forward) cmd_forward(cfg);
        else if (*recon) cmd_reconstruct(cfg, farfield_files);
    } catch (const fh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const fh::DomainError& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kConfig;
    } catch (const fh::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const fh::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
