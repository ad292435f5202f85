#include "dw/hartree.hpp"

#include <algorithm>
#include <cmath>

#include "dw/kernel.hpp"
#include "dw/operators.hpp"

namespace dw {

namespace {

std::vector<double> density(const Grid& g, const std::vector<double>& u) {
    std::vector<double> rho(g.n);
    for (int i = 0; i < g.n; ++i) rho[i] = u[i] * u[i];
    return rho;
}

void normalize(const Grid& g, std::vector<double>& u) {
    const double nrm = l2_norm(g, u);
    for (double& v : u) v /= nrm;
}

void symmetrize(const Grid& g, std::vector<double>& u) {
    const int c = g.center();
    for (int t = 1; t <= c; ++t) {
        const double avg = 0.5 * (u[c + t] + u[c - t]);
        u[c + t] = avg;
        u[c - t] = avg;
    }
}

}  // namespace

double hartree_energy(const Grid& g, const std::vector<double>& V, const std::vector<double>& w,
                      double lambda, const std::vector<double>& u) {
    const auto rho = density(g, u);
    const double quartic = inner(g, rho, convolve_density(g, w, rho));
    return schrodinger_inner(g, V, u, u) + 0.5 * lambda * quartic;
}

HartreeResult minimize_hartree(const Grid& g, const std::vector<double>& V,
                               const std::vector<double>& w, double lambda,
                               HartreeOptions opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("minimize_hartree: tol must be > 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("minimize_hartree: lambda must be >= 0");

    // Symmetric two-gaussian start centered at the wells (rightmost minimum
    // of V and its mirror).
    int iw = g.center();
    for (int i = g.center(); i < g.n; ++i)
        if (V[i] < V[iw]) iw = i;
    const double xw = g.x[iw];
    std::vector<double> u(g.n, 0.0);
    for (int i = 1; i < g.n - 1; ++i)
        u[i] = std::exp(-0.5 * (g.x[i] - xw) * (g.x[i] - xw)) +
               std::exp(-0.5 * (g.x[i] + xw) * (g.x[i] + xw));
    symmetrize(g, u);
    normalize(g, u);

    double energy = hartree_energy(g, V, w, lambda, u);
    double tau = 0.5;
    const double tau_min = 1e-7, tau_max = 16.0;

    HartreeResult res;
    res.lambda = lambda;
    std::vector<double> veff(g.n);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        const auto mf = convolve_density(g, w, density(g, u));
        for (int i = 0; i < g.n; ++i) veff[i] = V[i] + lambda * mf[i];

        // Residual of the current iterate under its own mean-field operator.
        const double mu = schrodinger_inner(g, veff, u, u);
        auto hu = apply_schrodinger(g, veff, u);
        double rr = 0.0;
        for (int i = 0; i < g.n; ++i) {
            const double r = hu[i] - mu * u[i];
            rr += g.weight(i) * r * r;
        }
        const double residual = std::sqrt(rr) / std::max(1.0, std::abs(mu));
        if (residual <= opts.tol) {
            res.u = u;
            res.mu = mu;
            res.energy = energy;
            res.iterations = iter - 1;
            res.residual = residual;
            return res;
        }

        // Backward-Euler step (1 + tau h[u]) v = u, then renormalize; shrink
        // tau until the energy is non-increasing.
        while (true) {
            std::vector<double> rhs(g.n);
            for (int i = 0; i < g.n; ++i) rhs[i] = u[i] / tau;
            auto v = shifted_solve(g, veff, 1.0 / tau, rhs);
            symmetrize(g, v);
            normalize(g, v);
            const double e_new = hartree_energy(g, V, w, lambda, v);
            if (e_new <= energy + 1e-13 * (1.0 + std::abs(energy)) || tau <= tau_min) {
                u = std::move(v);
                energy = e_new;
                tau = std::min(tau * 1.25, tau_max);
                break;
            }
            tau = std::max(0.5 * tau, tau_min);
        }
        res.iterations = iter;
        res.residual = residual;
    }
    throw ConvergenceError("minimize_hartree: iteration cap exceeded (residual " +
                               std::to_string(res.residual) + ")",
                           res.residual);
}

}  // namespace dw
