#pragma once

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "frachelm/config.hpp"
#include "frachelm/direct.hpp"
#include "frachelm/factorization.hpp"
#include "frachelm/farfield.hpp"

namespace frachelm {

std::string version();

struct ProbeRow {
    double r;
    cplx helm;
    double phi_delta;
    cplx phi_full;
};

/// Log-spaced radius table of Phi_helm, Phi^Delta and Phi_{s,k}.
std::vector<ProbeRow> kernel_probe(const RunConfig& cfg, double s);

struct ValidationRow {
    std::string test;  // "gaussian" or "algebraic"
    double alpha;
    int N_x;
    double h;
    ValidationErrors errors;
};

std::vector<ValidationRow> validate_direct_schedule(const RunConfig& cfg, double s, bool out_of_theory);

struct ForwardResult {
    Grid grid;
    Medium medium;
    std::shared_ptr<const KernelEvaluator> kernel;
    LSMatrix ls;
    FarFieldMatrix farfield;
    double unitarity = 0.0;
    double reciprocity = 0.0;
};

std::shared_ptr<const KernelEvaluator> make_kernel(const RunConfig& cfg, double s, double h);

ForwardResult run_forward(const RunConfig& cfg, double s);

/// Sampling grid for the indicator, from sample_extent / sample_points / sample_decimation.
Grid sample_grid(const RunConfig& cfg);

struct ReconstructResult {
    IndicatorMap map;
    double floor = 0.0;
    bool has_truth = false;
    ThresholdMetrics metrics;
    int components = 0;
};

/// Indicator map from a far-field matrix. With a medium the threshold
/// metrics against its support are filled in.
ReconstructResult reconstruct(const FarFieldMatrix& fm, const RunConfig& cfg, const Grid* grid = nullptr,
                              const Medium* medium = nullptr);

/// Full-field dump of one manufactured-solution run.
struct DirectDump {
    Grid grid;
    std::vector<cplx> approx;
    std::vector<double> exact;
};

DirectDump direct_dump(const RunConfig& cfg, double s, RhsKind kind, double alpha, int n);

// File formats.
void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows);
/// Rows of one test only: N_x, h, err_L2, err_Linf.
void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows);
/// x, y, Re u, Im u, u_exact over the grid; `slice` keeps the row nearest y = 0.
void write_dump_csv(std::ostream& out, const DirectDump& dump, bool slice);
/// One row per entry: i, j, theta_i, theta_j, re_F, im_F.
void write_farfield_csv(std::ostream& out, const FarFieldMatrix& fm);
nlohmann::json farfield_sidecar(const ForwardResult& fr, const RunConfig& cfg, double s);
/// Reads a far-field CSV and its sidecar. Throws IoError on schema problems.
FarFieldMatrix read_farfield(const std::filesystem::path& csv, const nlohmann::json& sidecar);
/// x, y, W, W_normalized.
void write_indicator_csv(std::ostream& out, const IndicatorMap& map);
nlohmann::json reconstruct_summary(const ReconstructResult& r, const RunConfig& cfg, double s);

}  // namespace frachelm
