#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dw {

// Scan and solver settings, readable from a small TOML subset (sections,
// key = value, strings, bools, numbers, flat arrays, # comments).
struct ExperimentConfig {
    double s = 2.0;
    std::vector<double> L;
    std::vector<int> N;
    double lambda = 0.1;

    std::string kernel_family = "triangle";
    double kernel_amplitude = 1.0;
    double kernel_range = 1.0;

    int grid_n = 2049;
    double grid_x_max = 0.0;  // 0 selects the default domain for the scan

    int n_modes = 0;  // 0 selects enough pairs for the largest M below
    std::vector<int> bog_M = {8, 16, 32};

    std::string sigma_rule = "sqrt_gap_N";  // sqrt_gap_N | sqrt_N | fixed
    double sigma_sq = 0.0;                  // only read by the fixed rule

    double hartree_tol = 1e-8;
    int hartree_max_iter = 50000;

    bool oracle_enabled = false;
    int oracle_modes = 4;

    std::string out_csv = "scan.csv";
    std::string out_svg;

    int workers = 1;
    std::uint64_t seed = 0;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& cfg);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace dw
