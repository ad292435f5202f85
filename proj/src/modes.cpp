#include "dw/modes.hpp"

#include <algorithm>
#include <cmath>

#include "dw/kernel.hpp"
#include "dw/operators.hpp"

namespace dw {

namespace {

// Signed overlap on the right half line, used for sign fixing.
double right_overlap(const Grid& g, const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.5 * g.h * a[g.center()] * b[g.center()];
    for (int i = g.center() + 1; i < g.n; ++i) acc += g.weight(i) * a[i] * b[i];
    return acc;
}

void flip(std::vector<double>& v) {
    for (double& x : v) x = -x;
}

}  // namespace

ModeBasis mean_field_spectrum(const Grid& g, const std::vector<double>& V,
                              const std::vector<double>& w, const HartreeResult& hartree,
                              int n_modes) {
    if (n_modes < 4 || n_modes % 2 != 0)
        throw std::invalid_argument("mean_field_spectrum: n_modes must be even and >= 4");

    std::vector<double> veff(g.n);
    {
        std::vector<double> rho(g.n);
        for (int i = 0; i < g.n; ++i) rho[i] = hartree.u[i] * hartree.u[i];
        const auto mf = convolve_density(g, w, rho);
        for (int i = 0; i < g.n; ++i) veff[i] = V[i] + hartree.lambda * mf[i];
    }

    auto pairs = symmetric_spectrum(g, veff, n_modes);

    ModeBasis basis;
    basis.n_modes = n_modes;

    // Sturm oscillation gives strict even/odd alternation for an even 1D
    // potential; if rounding ever breaks the pattern, fall back to pairing
    // k-th even with k-th odd and flag it.
    bool alternates = true;
    for (int m = 0; m < n_modes; ++m)
        if (pairs[m].parity != (m % 2 == 0 ? +1 : -1)) alternates = false;
    if (!alternates) {
        std::vector<EigenPair> evens, odds;
        for (auto& p : pairs) (p.parity == +1 ? evens : odds).push_back(std::move(p));
        if (static_cast<int>(std::min(evens.size(), odds.size())) < n_modes / 2)
            throw std::runtime_error("mean_field_spectrum: parity pattern broken beyond repair");
        pairs.clear();
        for (int a = 0; a < n_modes / 2; ++a) {
            pairs.push_back(std::move(evens[a]));
            pairs.push_back(std::move(odds[a]));
        }
        basis.pairing_warning = true;
    }

    for (int m = 0; m < n_modes; ++m) {
        basis.mu.push_back(pairs[m].value);
        basis.parity.push_back(pairs[m].parity);
        basis.modes.push_back(std::move(pairs[m].vec));
    }

    // Signs: ground mode globally nonnegative, odd modes positive-mean on the
    // right, excited even modes aligned with their odd partner so the sum is
    // right-localized.
    if (integrate(g, basis.modes[0]) < 0.0) flip(basis.modes[0]);
    for (int m = 1; m < n_modes; m += 2) {
        double mean = 0.0;
        for (int i = g.center() + 1; i < g.n; ++i) mean += g.weight(i) * basis.modes[m][i];
        if (mean < 0.0) flip(basis.modes[m]);
    }
    for (int m = 2; m < n_modes; m += 2)
        if (right_overlap(g, basis.modes[m], basis.modes[m + 1]) < 0.0) flip(basis.modes[m]);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    basis.u1.resize(g.n);
    basis.u2.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        basis.u1[i] = (basis.modes[0][i] + basis.modes[1][i]) * inv_sqrt2;
        basis.u2[i] = (basis.modes[0][i] - basis.modes[1][i]) * inv_sqrt2;
    }
    for (int a = 1; a < n_modes / 2; ++a) {
        std::vector<double> r(g.n), l(g.n);
        for (int i = 0; i < g.n; ++i) {
            r[i] = (basis.modes[2 * a][i] + basis.modes[2 * a + 1][i]) * inv_sqrt2;
            l[i] = (basis.modes[2 * a][i] - basis.modes[2 * a + 1][i]) * inv_sqrt2;
        }
        basis.u_right.push_back(std::move(r));
        basis.u_left.push_back(std::move(l));
    }
    return basis;
}

double tunneling_parameter(double s, double L) {
    validate(PotentialSpec{s, L});
    return std::exp(-(2.0 / (1.0 + 0.5 * s)) * std::pow(0.5 * L, 1.0 + 0.5 * s));
}

TunnelingReport gap_report(const ModeBasis& basis, const PotentialSpec& spec) {
    TunnelingReport rep;
    rep.T = tunneling_parameter(spec.s, spec.L);
    rep.mu_plus = basis.mu[0];
    rep.mu_minus = basis.mu[1];
    rep.gap = basis.mu[1] - basis.mu[0];
    if (!(rep.gap > 0.0)) throw std::runtime_error("gap_report: nonpositive spectral gap");
    rep.gap_over_T = rep.gap / rep.T;
    rep.excited_gap = basis.mu[2] - basis.mu[1];
    return rep;
}

}  // namespace dw
