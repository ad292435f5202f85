#include "dw/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dw/bogoliubov.hpp"
#include "dw/hartree.hpp"
#include "dw/kernel.hpp"
#include "dw/modes.hpp"
#include "dw/oracle.hpp"
#include "dw/potential.hpp"
#include "dw/twomode.hpp"

namespace dw {

namespace {

SigmaRule sigma_rule_from(const std::string& name) {
    if (name == "sqrt_gap_N") return SigmaRule::sqrt_gap_N;
    if (name == "sqrt_N") return SigmaRule::sqrt_N;
    if (name == "fixed") return SigmaRule::fixed;
    throw std::runtime_error("config: unknown sigma rule \"" + name + "\"");
}

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

ScanRecord run_point(const ExperimentConfig& cfg, double L, int N) {
    ScanRecord r;
    r.N = N;
    r.L = L;
    r.s = cfg.s;
    r.lambda = cfg.lambda;

    const PotentialSpec pot{cfg.s, L};
    const double x_max =
        cfg.grid_x_max > 0.0 ? cfg.grid_x_max : default_x_max(pot, cfg.kernel_range);
    const Grid g = build_grid(-x_max, x_max, cfg.grid_n);
    const std::vector<double> V = double_well_potential(g, pot);
    const std::vector<double> w =
        interaction_kernel(g, {cfg.kernel_family, cfg.kernel_amplitude, cfg.kernel_range});

    const HartreeResult hf =
        minimize_hartree(g, V, w, cfg.lambda, {cfg.hartree_tol, cfg.hartree_max_iter});

    const int max_m = *std::max_element(cfg.bog_M.begin(), cfg.bog_M.end());
    const int n_modes = cfg.n_modes > 0 ? cfg.n_modes : std::max(4, 2 * max_m + 2);
    const ModeBasis basis = mean_field_spectrum(g, V, w, hf, n_modes);
    const TunnelingReport rep = gap_report(basis, pot);
    r.T = rep.T;
    r.gap = rep.gap;
    r.gap_over_T = rep.gap_over_T;
    r.mu_plus = rep.mu_plus;
    r.mu_minus = rep.mu_minus;
    r.excited_gap = rep.excited_gap;

    const TwoModeModel model = build_two_mode_model(g, V, w, basis, N, cfg.lambda);
    const FockMatrix fm = assemble_two_mode_hamiltonian(model);
    const GroundStateRecord ground = fock_ground_state(fm);
    r.E_2mode = ground.energy;
    r.variance = ground.variance;
    r.variance_over_N = ground.variance / N;

    r.bog_M = max_m;
    const BogoliubovResult bog = bogoliubov_energy(g, w, basis, cfg.lambda, max_m);
    r.E_bog = bog.e_bog;

    const GaussianTrial trial =
        gaussian_trial_state(N, rep.gap, sigma_rule_from(cfg.sigma_rule), cfg.sigma_sq);
    r.sigma_sq_used = trial.sigma_sq;
    r.E_trial = trial_energy(fm, trial);

    if (cfg.oracle_enabled) {
        const TruncatedFockBasis fock = build_fock_basis(cfg.oracle_modes, N);
        const auto h = assemble_full_hamiltonian(g, V, w, basis, fock, cfg.lambda);
        const OracleResult res = oracle_ground_state(h, fock);
        r.oracle_run = true;
        r.oracle_E = res.energy;
        r.oracle_variance = res.variance;
        r.oracle_nperp = res.nperp;
        r.oracle_nperp_sq = res.nperp_sq;
        r.oracle_imbalance = res.imbalance;
    }
    return r;
}

std::vector<ScanRecord> run_scan(const ExperimentConfig& cfg) {
    validate_config(cfg);
    std::vector<std::pair<double, int>> points;
    for (double l : cfg.L)
        for (int n : cfg.N) points.emplace_back(l, n);
    std::sort(points.begin(), points.end());

    std::vector<ScanRecord> records(points.size());
    std::atomic<size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                records[i] = run_point(cfg, points[i].first, points[i].second);
            } catch (const std::exception& e) {
                records[i] = ScanRecord{};
                records[i].N = points[i].second;
                records[i].L = points[i].first;
                records[i].s = cfg.s;
                records[i].lambda = cfg.lambda;
                records[i].error = e.what();
            }
            records[i].runtime_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
        }
    };
    const int n_threads = std::min<size_t>(cfg.workers, points.size());
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return records;
}

namespace {

const char* const kCsvHeader =
    "N,L,s,lambda,T,gap,gap_over_T,mu_plus,mu_minus,excited_gap,E_2mode,E_bog,bog_M,"
    "variance,variance_over_N,sigma_sq_used,E_trial,oracle_run,oracle_E,oracle_variance,"
    "oracle_nperp,oracle_nperp_sq,oracle_imbalance,error";

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string csv_string(const std::vector<ScanRecord>& records) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const ScanRecord& r : records) {
        out << r.N << ',' << fmt(r.L) << ',' << fmt(r.s) << ',' << fmt(r.lambda) << ',';
        if (r.error.empty()) {
            out << fmt(r.T) << ',' << fmt(r.gap) << ',' << fmt(r.gap_over_T) << ','
                << fmt(r.mu_plus) << ',' << fmt(r.mu_minus) << ',' << fmt(r.excited_gap) << ','
                << fmt(r.E_2mode) << ',' << fmt(r.E_bog) << ',' << r.bog_M << ','
                << fmt(r.variance) << ',' << fmt(r.variance_over_N) << ','
                << fmt(r.sigma_sq_used) << ',' << fmt(r.E_trial) << ','
                << (r.oracle_run ? "true" : "false") << ',';
            if (r.oracle_run)
                out << fmt(r.oracle_E) << ',' << fmt(r.oracle_variance) << ','
                    << fmt(r.oracle_nperp) << ',' << fmt(r.oracle_nperp_sq) << ','
                    << fmt(r.oracle_imbalance) << ',';
            else
                out << ",,,,,";
        } else {
            out << ",,,,,,,,,,,,,false,,,,,,";
        }
        out << csv_quote(r.error) << "\n";
    }
    return out.str();
}

void write_csv(const std::vector<ScanRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open \"" + path + "\"");
    out << csv_string(records);
}

namespace {

struct PlotPoint {
    double x = 0.0, y = 0.0;  // log10 T, log10 variance/N
};

}  // namespace

std::string svg_string(const std::vector<ScanRecord>& records) {
    std::map<int, std::vector<PlotPoint>> series;
    for (const ScanRecord& r : records) {
        if (!r.error.empty() || !(r.T > 0.0) || !(r.variance_over_N > 0.0)) continue;
        series[r.N].push_back({std::log10(r.T), std::log10(r.variance_over_N)});
    }
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    bool first = true;
    for (auto& [n, pts] : series) {
        std::sort(pts.begin(), pts.end(),
                  [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
        for (const PlotPoint& p : pts) {
            if (first) {
                x0 = x1 = p.x;
                y0 = y1 = p.y;
                first = false;
            } else {
                x0 = std::min(x0, p.x);
                x1 = std::max(x1, p.x);
                y0 = std::min(y0, p.y);
                y1 = std::max(y1, p.y);
            }
        }
    }
    if (x1 - x0 < 1e-12) x1 = x0 + 1.0;
    if (y1 - y0 < 1e-12) y1 = y0 + 1.0;

    const double width = 640, height = 480, ml = 70, mr = 20, mt = 20, mb = 50;
    const auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (width - ml - mr); };
    const auto py = [&](double y) {
        return height - mb - (y - y0) / (y1 - y0) * (height - mt - mb);
    };
    static const char* const palette[] = {"#1b6ca8", "#c84b31", "#2d6a4f",
                                          "#7b2d8b", "#b8860b", "#444444"};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(height - mb) << "\" x2=\""
        << fmt(width - mr) << "\" y2=\"" << fmt(height - mb)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
        << "\" y2=\"" << fmt(height - mb) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(width / 2) << "\" y=\"" << fmt(height - 12)
        << "\" font-size=\"14\" text-anchor=\"middle\">log10 T</text>\n";
    out << "<text x=\"16\" y=\"" << fmt(height / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt(height / 2) << ")\">log10 variance/N</text>\n";
    out << "<text x=\"" << fmt(ml) << "\" y=\"" << fmt(height - mb + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x0) << "</text>\n";
    out << "<text x=\"" << fmt(width - mr) << "\" y=\"" << fmt(height - mb + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x1) << "</text>\n";
    out << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(height - mb + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y0) << "</text>\n";
    out << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(mt + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y1) << "</text>\n";

    int color = 0;
    double legend_y = mt + 14;
    for (const auto& [n, pts] : series) {
        const char* stroke = palette[color % 6];
        out << "<polyline fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < pts.size(); ++i)
            out << (i ? " " : "") << fmt(px(pts[i].x)) << "," << fmt(py(pts[i].y));
        out << "\"/>\n";
        for (const PlotPoint& p : pts)
            out << "<circle cx=\"" << fmt(px(p.x)) << "\" cy=\"" << fmt(py(p.y))
                << "\" r=\"2.5\" fill=\"" << stroke << "\"/>\n";
        out << "<text x=\"" << fmt(width - mr - 6) << "\" y=\"" << fmt(legend_y)
            << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << stroke << "\">N = " << n
            << "</text>\n";
        legend_y += 16;
        ++color;
    }
    out << "</svg>\n";
    return out.str();
}

void write_svg(const std::vector<ScanRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_svg: cannot open \"" + path + "\"");
    out << svg_string(records);
}

}  // namespace dw
