#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dw/bogoliubov.hpp"
#include "dw/config.hpp"
#include "dw/hartree.hpp"
#include "dw/kernel.hpp"
#include "dw/modes.hpp"
#include "dw/oracle.hpp"
#include "dw/potential.hpp"
#include "dw/scan.hpp"
#include "dw/twomode.hpp"

namespace {

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::optional<double> L;
    std::optional<int> N;
    std::optional<double> lambda;
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
};

void attach_common(CLI::App* cmd, CommonOpts& o, bool point_overrides) {
    cmd->add_option("--config", o.config_path, "TOML settings file");
    cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
    cmd->add_option("--workers", o.workers, "thread count override");
    cmd->add_option("--seed", o.seed, "run label recorded in outputs; results do not depend on it");
    if (point_overrides) {
        cmd->add_option("--L", o.L, "well separation override (first scan value otherwise)");
        cmd->add_option("--N", o.N, "particle number override");
        cmd->add_option("--lambda", o.lambda, "coupling override");
    }
}

dw::ExperimentConfig resolve_config(const CommonOpts& o) {
    dw::ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        cfg = dw::load_config(o.config_path);
    } else {
        if (!o.L || !o.N)
            throw std::runtime_error("no --config given, so both --L and --N are required");
        cfg.L = {*o.L};
        cfg.N = {*o.N};
    }
    if (o.L) cfg.L = {*o.L};
    if (o.N) cfg.N = {*o.N};
    if (o.lambda) cfg.lambda = *o.lambda;
    if (o.workers) cfg.workers = *o.workers;
    if (o.seed) cfg.seed = *o.seed;
    dw::validate_config(cfg);
    return cfg;
}

// Pipeline stages shared by the single-point commands.
struct PointContext {
    dw::ExperimentConfig cfg;
    double L = 0.0;
    int N = 0;
    dw::Grid g;
    std::vector<double> V, w;
    dw::HartreeResult hf;

    static PointContext make(const CommonOpts& o) {
        PointContext c;
        c.cfg = resolve_config(o);
        c.L = c.cfg.L.front();
        c.N = c.cfg.N.front();
        const dw::PotentialSpec pot{c.cfg.s, c.L};
        const double x_max = c.cfg.grid_x_max > 0.0
                                 ? c.cfg.grid_x_max
                                 : dw::default_x_max(pot, c.cfg.kernel_range);
        c.g = dw::build_grid(-x_max, x_max, c.cfg.grid_n);
        c.V = dw::double_well_potential(c.g, pot);
        c.w = dw::interaction_kernel(
            c.g, {c.cfg.kernel_family, c.cfg.kernel_amplitude, c.cfg.kernel_range});
        c.hf = dw::minimize_hartree(c.g, c.V, c.w, c.cfg.lambda,
                                    {c.cfg.hartree_tol, c.cfg.hartree_max_iter});
        return c;
    }

    int auto_modes() const {
        const int max_m = *std::max_element(cfg.bog_M.begin(), cfg.bog_M.end());
        return cfg.n_modes > 0 ? cfg.n_modes : std::max(4, 2 * max_m + 2);
    }
};

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open \"" + o.out_path + "\"");
    out << text;
}

int cmd_hartree(const CommonOpts& o) {
    const PointContext c = PointContext::make(o);
    std::string s;
    s += "L = " + fmt(c.L) + "\n";
    s += "s = " + fmt(c.cfg.s) + "\n";
    s += "lambda = " + fmt(c.cfg.lambda) + "\n";
    s += "x_max = " + fmt(c.g.x_max) + "\n";
    s += "grid_n = " + std::to_string(c.g.n) + "\n";
    s += "mu = " + fmt(c.hf.mu) + "\n";
    s += "energy = " + fmt(c.hf.energy) + "\n";
    s += "iterations = " + std::to_string(c.hf.iterations) + "\n";
    s += "residual = " + fmt(c.hf.residual) + "\n";
    emit(o, s);
    return 0;
}

int cmd_spectrum(const CommonOpts& o) {
    const PointContext c = PointContext::make(o);
    const dw::ModeBasis basis = dw::mean_field_spectrum(c.g, c.V, c.w, c.hf, c.auto_modes());
    const dw::TunnelingReport rep = dw::gap_report(basis, {c.cfg.s, c.L});
    std::string s;
    s += "L = " + fmt(c.L) + "\n";
    s += "n_modes = " + std::to_string(basis.n_modes) + "\n";
    s += "T = " + fmt(rep.T) + "\n";
    s += "mu_plus = " + fmt(rep.mu_plus) + "\n";
    s += "mu_minus = " + fmt(rep.mu_minus) + "\n";
    s += "gap = " + fmt(rep.gap) + "\n";
    s += "gap_over_T = " + fmt(rep.gap_over_T) + "\n";
    s += "excited_gap = " + fmt(rep.excited_gap) + "\n";
    s += "pairing_warning = " + std::string(basis.pairing_warning ? "true" : "false") + "\n";
    for (int k = 0; k < basis.n_modes; ++k)
        s += "mu[" + std::to_string(k) + "] = " + fmt(basis.mu[k]) + "\n";
    emit(o, s);
    return 0;
}

int cmd_twomode(const CommonOpts& o) {
    const PointContext c = PointContext::make(o);
    const dw::ModeBasis basis = dw::mean_field_spectrum(c.g, c.V, c.w, c.hf, c.auto_modes());
    const dw::TwoModeModel m = dw::build_two_mode_model(c.g, c.V, c.w, basis, c.N, c.cfg.lambda);
    const dw::TwoModeConstants cst = dw::two_mode_constants(m);
    const dw::FockMatrix fm = dw::assemble_two_mode_hamiltonian(m);
    const dw::GroundStateRecord ground = dw::fock_ground_state(fm);
    const dw::GaussianTrial trial = dw::gaussian_trial_state(
        c.N, m.gap,
        c.cfg.sigma_rule == "sqrt_gap_N"
            ? dw::SigmaRule::sqrt_gap_N
            : (c.cfg.sigma_rule == "sqrt_N" ? dw::SigmaRule::sqrt_N : dw::SigmaRule::fixed),
        c.cfg.sigma_sq);
    std::string s;
    s += "L = " + fmt(c.L) + "\n";
    s += "N = " + std::to_string(c.N) + "\n";
    s += "h11 = " + fmt(m.h11) + "\n";
    s += "h12 = " + fmt(m.h12) + "\n";
    s += "w1111 = " + fmt(m.w1111) + "\n";
    s += "w1112 = " + fmt(m.w1112) + "\n";
    s += "w1212 = " + fmt(m.w1212) + "\n";
    s += "w1122 = " + fmt(m.w1122) + "\n";
    s += "gap = " + fmt(m.gap) + "\n";
    s += "E0 = " + fmt(cst.E0) + "\n";
    s += "EwN = " + fmt(cst.EwN) + "\n";
    s += "mu = " + fmt(cst.mu) + "\n";
    s += "U = " + fmt(cst.U) + "\n";
    s += "hop_constant = " + fmt(cst.hop_constant) + "\n";
    s += "energy = " + fmt(ground.energy) + "\n";
    s += "variance = " + fmt(ground.variance) + "\n";
    s += "variance_over_N = " + fmt(ground.variance / c.N) + "\n";
    s += "imbalance = " + fmt(ground.imbalance) + "\n";
    s += "degenerate = " + std::string(ground.degenerate ? "true" : "false") + "\n";
    s += "sigma_sq = " + fmt(trial.sigma_sq) + "\n";
    s += "E_trial = " + fmt(dw::trial_energy(fm, trial)) + "\n";
    emit(o, s);
    return 0;
}

int cmd_bogoliubov(const CommonOpts& o) {
    const PointContext c = PointContext::make(o);
    const dw::ModeBasis basis = dw::mean_field_spectrum(c.g, c.V, c.w, c.hf, c.auto_modes());
    const dw::TwoModeModel m = dw::build_two_mode_model(c.g, c.V, c.w, basis, c.N, c.cfg.lambda);
    const dw::TwoModeConstants cst = dw::two_mode_constants(m);
    std::vector<int> ms = c.cfg.bog_M;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::string s;
    s += "L = " + fmt(c.L) + "\n";
    s += "N = " + std::to_string(c.N) + "\n";
    for (int mm : ms) {
        const dw::BogoliubovResult b = dw::bogoliubov_energy(c.g, c.w, basis, c.cfg.lambda, mm);
        s += "e_bog(M=" + std::to_string(mm) + ") = " + fmt(b.e_bog) + "\n";
    }
    const dw::ExcitedBlocks blocks = dw::excited_blocks(c.g, c.w, basis, ms.back());
    s += "variance_coefficient = " +
         fmt(dw::variance_coefficient_bound(cst.U, blocks, c.cfg.lambda)) + "\n";
    emit(o, s);
    return 0;
}

int cmd_oracle(const CommonOpts& o) {
    const PointContext c = PointContext::make(o);
    const dw::ModeBasis basis = dw::mean_field_spectrum(c.g, c.V, c.w, c.hf, c.auto_modes());
    const dw::TruncatedFockBasis fock = dw::build_fock_basis(c.cfg.oracle_modes, c.N);
    const auto h = dw::assemble_full_hamiltonian(c.g, c.V, c.w, basis, fock, c.cfg.lambda);
    const dw::OracleResult res = dw::oracle_ground_state(h, fock);
    std::string s;
    s += "L = " + fmt(c.L) + "\n";
    s += "N = " + std::to_string(c.N) + "\n";
    s += "modes = " + std::to_string(c.cfg.oracle_modes) + "\n";
    s += "dim = " + std::to_string(fock.dim()) + "\n";
    s += "energy = " + fmt(res.energy) + "\n";
    s += "variance = " + fmt(res.variance) + "\n";
    s += "imbalance = " + fmt(res.imbalance) + "\n";
    s += "nperp = " + fmt(res.nperp) + "\n";
    s += "nperp_sq = " + fmt(res.nperp_sq) + "\n";
    s += "nminus = " + fmt(res.nminus) + "\n";
    emit(o, s);
    return 0;
}

int cmd_scan(const CommonOpts& o, const std::string& svg_path) {
    dw::ExperimentConfig cfg = resolve_config(o);
    const std::vector<dw::ScanRecord> records = dw::run_scan(cfg);
    const std::string csv_path = o.out_path.empty() ? cfg.out_csv : o.out_path;
    dw::write_csv(records, csv_path);
    const std::string svg = svg_path.empty() ? cfg.out_svg : svg_path;
    if (!svg.empty()) dw::write_svg(records, svg);
    int failed = 0;
    for (const auto& r : records)
        if (!r.error.empty()) ++failed;
    std::cout << "wrote " << csv_path << " (" << records.size() << " points, " << failed
              << " failed)\n";
    if (!svg.empty()) std::cout << "wrote " << svg << "\n";
    for (const auto& r : records)
        if (!r.error.empty())
            std::cerr << "point L=" << fmt(r.L) << " N=" << r.N << " failed: " << r.error
                      << "\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-well ground-state toolkit"};
    app.require_subcommand(1);

    CommonOpts o_hartree, o_spectrum, o_twomode, o_bog, o_oracle, o_scan;
    std::string svg_path;

    attach_common(app.add_subcommand("hartree", "self-consistent ground profile"), o_hartree,
                  true);
    attach_common(app.add_subcommand("spectrum", "mean-field modes and tunneling gap"),
                  o_spectrum, true);
    attach_common(app.add_subcommand("twomode", "projected pair-mode ground state"), o_twomode,
                  true);
    attach_common(app.add_subcommand("bogoliubov", "quadratic excitation corrections"), o_bog,
                  true);
    attach_common(app.add_subcommand("oracle", "small-system exact diagonalization"), o_oracle,
                  true);
    CLI::App* scan = app.add_subcommand("scan", "full (L, N) sweep to CSV");
    attach_common(scan, o_scan, true);
    scan->add_option("--svg", svg_path, "also draw the variance plot here");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("hartree")) return cmd_hartree(o_hartree);
        if (app.got_subcommand("spectrum")) return cmd_spectrum(o_spectrum);
        if (app.got_subcommand("twomode")) return cmd_twomode(o_twomode);
        if (app.got_subcommand("bogoliubov")) return cmd_bogoliubov(o_bog);
        if (app.got_subcommand("oracle")) return cmd_oracle(o_oracle);
        if (app.got_subcommand("scan")) return cmd_scan(o_scan, svg_path);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
