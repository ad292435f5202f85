#pragma once

#include <string>
#include <vector>

#include "dw/config.hpp"

namespace dw {

// One (L, N) pipeline run. A failed point keeps its inputs and carries the
// failure text in error; derived cells are then meaningless and stay blank
// in the CSV.
struct ScanRecord {
    int N = 0;
    double L = 0.0;
    double s = 2.0;
    double lambda = 0.0;

    double T = 0.0;
    double gap = 0.0;
    double gap_over_T = 0.0;
    double mu_plus = 0.0;
    double mu_minus = 0.0;
    double excited_gap = 0.0;

    double E_2mode = 0.0;
    double E_bog = 0.0;
    int bog_M = 0;
    double variance = 0.0;
    double variance_over_N = 0.0;
    double sigma_sq_used = 0.0;
    double E_trial = 0.0;

    bool oracle_run = false;
    double oracle_E = 0.0;
    double oracle_variance = 0.0;
    double oracle_nperp = 0.0;
    double oracle_nperp_sq = 0.0;
    double oracle_imbalance = 0.0;

    double runtime_ms = 0.0;  // informational only, never serialized
    std::string error;
};

ScanRecord run_point(const ExperimentConfig& cfg, double L, int N);

// All (L, N) pairs in (L, N) order, distributed over cfg.workers threads.
// Output is independent of the thread count.
std::vector<ScanRecord> run_scan(const ExperimentConfig& cfg);

std::string csv_string(const std::vector<ScanRecord>& records);
void write_csv(const std::vector<ScanRecord>& records, const std::string& path);

// Log-log plot of variance/N against the tunneling parameter, one polyline
// per N.
std::string svg_string(const std::vector<ScanRecord>& records);
void write_svg(const std::vector<ScanRecord>& records, const std::string& path);

}  // namespace dw
