#include "frachelm/pipeline.hpp"

#include <cmath>
#include <limits>

#include "frachelm/errors.hpp"
#include "frachelm/io.hpp"
#include "frachelm/parallel.hpp"

namespace frachelm {

std::string version() { return FRACHELM_VERSION; }

std::vector<ProbeRow> kernel_probe(const RunConfig& cfg, double s) {
    const KernelParams p = KernelParams::make(s, cfg.k, cfg.d);
    const double h = 2.0 * cfg.x_max / cfg.N_x;
    const KernelEvaluator kernel(p, cfg.kernel, h, cfg.x_max);
    std::vector<ProbeRow> rows(static_cast<std::size_t>(cfg.probe_points));
    const double lr0 = std::log(cfg.probe_r_min), lr1 = std::log(cfg.probe_r_max);
    parallel_for(rows.size(), [&](std::size_t i) {
        const double r = std::exp(lr0 + (lr1 - lr0) * static_cast<double>(i) / (rows.size() - 1));
        ProbeRow& row = rows[i];
        row.r = r;
        row.helm = helm_fundamental(p.d, p.k, r);
        row.phi_delta = kernel.phi_delta(r);
        row.phi_full = kernel.phi(r);
    });
    return rows;
}

std::shared_ptr<const KernelEvaluator> make_kernel(const RunConfig& cfg, double s, double h) {
    return std::make_shared<const KernelEvaluator>(KernelParams::make(s, cfg.k, cfg.d), cfg.kernel, h, cfg.x_max);
}

std::vector<ValidationRow> validate_direct_schedule(const RunConfig& cfg, double s, bool out_of_theory) {
    std::vector<ValidationRow> rows;
    std::vector<std::pair<RhsKind, double>> tests = {{RhsKind::gaussian, 0.0}, {RhsKind::algebraic, cfg.alpha}};
    if (out_of_theory) tests.emplace_back(RhsKind::algebraic, cfg.alpha_out_of_theory);
    for (int n : cfg.schedule) {
        const Grid grid = build_grid(cfg.x_max, n, 2);
        const auto kernel = make_kernel(cfg, s, grid.h);
        for (const auto& [kind, alpha] : tests) {
            ValidationRow row;
            row.test = kind == RhsKind::gaussian ? "gaussian" : "algebraic";
            row.alpha = alpha;
            row.N_x = n;
            row.h = grid.h;
            row.errors = validate_direct(kind, alpha, *kernel, grid);
            rows.push_back(row);
        }
    }
    return rows;
}

ForwardResult run_forward(const RunConfig& cfg, double s) {
    ForwardResult r;
    r.grid = build_grid(cfg.x_max, cfg.N_x, 2);
    r.medium = make_medium(r.grid, cfg.shapes);
    r.kernel = make_kernel(cfg, s, r.grid.h);
    r.ls = assemble_ls(r.grid, r.medium, r.kernel);
    const AngleSet angles = make_angles(cfg.N_inc);
    r.farfield = farfield_matrix(r.ls, assemble_q(r.ls, angles), angles);
    // Defects describe the noise-free operator.
    r.unitarity = check_unitarity(r.farfield);
    r.reciprocity = cfg.N_inc % 2 == 0 ? check_reciprocity(r.farfield) : NAN;
    add_noise(r.farfield, cfg.noise, cfg.seed);
    return r;
}

Grid sample_grid(const RunConfig& cfg) {
    const double extent = cfg.sample_extent > 0.0 ? cfg.sample_extent : cfg.x_max;
    const int n = cfg.sample_points > 0 ? cfg.sample_points : std::max(2, cfg.N_x / cfg.sample_decimation);
    return build_grid(extent, n, 2);
}

ReconstructResult reconstruct(const FarFieldMatrix& fm, const RunConfig& cfg, const Grid* grid, const Medium* medium) {
    ReconstructResult out;
    const SvdTriple svd = svd_factor(fm);
    const double smax = svd.S.size() ? svd.S(0) : 0.0;
    out.floor = cfg.floor_fraction() * smax;
    out.map = indicator_map(svd, fm.angles, fm.params.k, sample_grid(cfg), out.floor);
    out.components = connected_components(threshold_mask(out.map, cfg.threshold), out.map.grid.n);
    if (grid && medium && !medium->support.empty()) {
        out.has_truth = true;
        out.metrics = threshold_metrics(out.map, *grid, *medium, cfg.threshold);
    }
    return out;
}

DirectDump direct_dump(const RunConfig& cfg, double s, RhsKind kind, double alpha, int n) {
    DirectDump out;
    out.grid = build_grid(cfg.x_max, n, 2);
    const auto kernel = make_kernel(cfg, s, out.grid.h);
    std::vector<cplx> f(out.grid.size());
    out.exact.resize(out.grid.size());
    parallel_for(out.grid.size(), [&](std::size_t i) {
        f[i] = manufactured_rhs(kind, alpha, kernel->params(), out.grid.centers[i]);
        out.exact[i] = manufactured_solution(kind, alpha, out.grid.centers[i]);
    });
    out.approx = convolve_grid(f, *kernel, out.grid);
    return out;
}

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows) {
    io::write_header(out, {"r", "re_helm", "im_helm", "re_phi_delta", "im_phi_delta", "re_phi", "im_phi"});
    // Phi^Delta is real by construction; its imaginary column is written as exact zeros.
    for (const auto& r : rows)
        io::write_row(out, {r.r, r.helm.real(), r.helm.imag(), r.phi_delta, 0.0, r.phi_full.real(), r.phi_full.imag()});
}

void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows) {
    io::write_header(out, {"N_x", "h", "err_L2", "err_Linf"});
    for (const auto& r : rows) io::write_row(out, {double(r.N_x), r.h, r.errors.err_L2, r.errors.err_Linf});
}

void write_dump_csv(std::ostream& out, const DirectDump& dump, bool slice) {
    io::write_header(out, {"x", "y", "re_u", "im_u", "u_exact"});
    const int n = dump.grid.n;
    const int j0 = n / 2;  // first row with y > 0 for even n, the y = 0 row for odd n
    for (int j = 0; j < n; ++j) {
        if (slice && j != j0) continue;
        for (int i = 0; i < n; ++i) {
            const std::size_t c = static_cast<std::size_t>(i) + static_cast<std::size_t>(n) * j;
            const Point& p = dump.grid.centers[c];
            io::write_row(out, {p[0], p[1], dump.approx[c].real(), dump.approx[c].imag(), dump.exact[c]});
        }
    }
}

void write_farfield_csv(std::ostream& out, const FarFieldMatrix& fm) {
    io::write_header(out, {"i", "j", "theta_i", "theta_j", "re_F", "im_F"});
    const auto& a = fm.angles.angles;
    for (Eigen::Index i = 0; i < fm.F.rows(); ++i)
        for (Eigen::Index j = 0; j < fm.F.cols(); ++j)
            io::write_row(out, {double(i), double(j), a[i], a[j], fm.F(i, j).real(), fm.F(i, j).imag()});
}

nlohmann::json farfield_sidecar(const ForwardResult& fr, const RunConfig& cfg, double s) {
    nlohmann::json j;
    j["version"] = version();
    j["s"] = s;
    j["k"] = cfg.k;
    j["d"] = cfg.d;
    j["N_x"] = cfg.N_x;
    j["x_max"] = cfg.x_max;
    j["N_inc"] = cfg.N_inc;
    j["noise"] = cfg.noise;
    j["seed"] = cfg.seed;
    j["N_supp"] = fr.ls.support.size();
    j["unitarity_defect"] = fr.unitarity;
    if (std::isfinite(fr.reciprocity)) j["reciprocity_defect"] = fr.reciprocity;
    else j["reciprocity_defect"] = nullptr;
    j["config"] = to_json(cfg);
    return j;
}

FarFieldMatrix read_farfield(const std::filesystem::path& csv, const nlohmann::json& sidecar) {
    FarFieldMatrix fm;
    int n = 0;
    try {
        n = sidecar.at("N_inc").get<int>();
        fm.params = KernelParams::make(sidecar.at("s").get<double>(), sidecar.at("k").get<double>(),
                                       sidecar.value("d", 2));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("far-field sidecar: " + std::string(e.what()));
    } catch (const DomainError& e) {
        throw IoError("far-field sidecar: " + std::string(e.what()));
    }
    if (n < 2) throw IoError("far-field sidecar: N_inc must be at least 2");
    const io::CsvTable t = io::read_csv(csv);
    const std::vector<std::string> want = {"i", "j", "theta_i", "theta_j", "re_F", "im_F"};
    if (t.header != want) throw IoError(csv.string() + ": unexpected header");
    if (t.rows.size() != static_cast<std::size_t>(n) * n)
        throw IoError(csv.string() + ": expected " + std::to_string(n * n) + " rows");
    fm.angles = make_angles(n);
    fm.F = DenseMatrix::Zero(n, n);
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    for (const auto& row : t.rows) {
        const double fi = row[0], fj = row[1];
        if (fi != std::floor(fi) || fj != std::floor(fj) || fi < 0 || fj < 0 || fi >= n || fj >= n)
            throw IoError(csv.string() + ": index out of range");
        const int i = static_cast<int>(fi), j = static_cast<int>(fj);
        if (std::abs(row[2] - fm.angles.angles[i]) > 1e-9 || std::abs(row[3] - fm.angles.angles[j]) > 1e-9)
            throw IoError(csv.string() + ": angles do not match the equispaced set");
        auto& flag = seen[static_cast<std::size_t>(i) * n + j];
        if (flag) throw IoError(csv.string() + ": duplicate entry");
        flag = 1;
        fm.F(i, j) = cplx(row[4], row[5]);
    }
    return fm;
}

void write_indicator_csv(std::ostream& out, const IndicatorMap& map) {
    io::write_header(out, {"x", "y", "W", "W_normalized"});
    for (std::size_t i = 0; i < map.W.size(); ++i)
        io::write_row(out, {map.grid.centers[i][0], map.grid.centers[i][1], map.W[i], map.W_normalized[i]});
}

nlohmann::json reconstruct_summary(const ReconstructResult& r, const RunConfig& cfg, double s) {
    nlohmann::json j;
    j["version"] = version();
    j["s"] = s;
    j["k"] = cfg.k;
    j["N_inc"] = cfg.N_inc;
    j["floor"] = r.floor;
    j["threshold"] = cfg.threshold;
    j["max_W"] = r.map.max_value;
    j["sample_points"] = r.map.grid.n;
    j["sample_extent"] = r.map.grid.x_max;
    j["components"] = r.components;
    if (r.has_truth) {
        j["jaccard"] = r.metrics.jaccard;
        j["area_ratio"] = r.metrics.area_ratio;
    } else {
        j["jaccard"] = nullptr;
        j["area_ratio"] = nullptr;
    }
    j["config"] = to_json(cfg);
    return j;
}

}  // namespace frachelm
