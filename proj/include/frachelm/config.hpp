#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "frachelm/kernel.hpp"
#include "frachelm/medium.hpp"

namespace frachelm {

struct RunConfig {
    std::vector<double> s{0.7};
    double k = 5.0;
    int d = 2;
    double x_max = 2.0;
    int N_x = 100;
    int N_inc = 72;
    std::vector<ShapeSpec> shapes;
    double noise = 0.0;
    std::string floor_policy = "auto";  // "auto" or a relative floor value
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 1;
    int threads = 0;

    KernelOptions kernel;
    int sample_decimation = 4;
    double sample_extent = 0.0;  // half-width of the sampling box; 0 means x_max
    int sample_points = 0;       // cells per axis of the sampling grid; 0 means N_x / sample_decimation
    double threshold = 0.5;

    // kernel-probe
    double probe_r_min = 0.05;
    double probe_r_max = 10.0;
    int probe_points = 200;

    // validate-direct
    std::vector<int> schedule{50, 100, 200};
    double alpha = 2.0;
    double alpha_out_of_theory = 0.5;

    /// Relative spectral floor for reconstruction.
    double floor_fraction() const;
};

/// Parses key = value lines; `[shape]` starts a new shape block.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Checks every parameter domain. Throws ConfigError.
void validate(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const ShapeSpec& shape);

const char* to_string(SpectralRule r);
const char* to_string(CellMassRule r);
const char* to_string(KernelModel m);

}  // namespace frachelm
