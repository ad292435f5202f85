#pragma once

#include <stdexcept>

#include "dw/grid.hpp"

namespace dw {

struct ConvergenceError : std::runtime_error {
    double residual;
    explicit ConvergenceError(const std::string& msg, double r)
        : std::runtime_error(msg), residual(r) {}
};

struct HartreeOptions {
    double tol = 1e-8;    // relative residual ||h u - mu u|| / max(1, |mu|)
    int max_iter = 50000;
};

struct HartreeResult {
    std::vector<double> u;  // positive, even, unit L2 norm
    double mu = 0.0;        // <u, h[u] u>
    double energy = 0.0;    // E[u]; mu = energy + (lambda/2) <rho, w*rho>
    double lambda = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

// E[u] = <u,(-d2/dx2+V)u> + (lambda/2) <u^2, w*u^2>
double hartree_energy(const Grid& g, const std::vector<double>& V, const std::vector<double>& w,
                      double lambda, const std::vector<double>& u);

// Minimizes E over the unit sphere by semi-implicit imaginary-time stepping
// (preconditioned projected gradient descent) with backtracking on E; the
// even initial profile and per-step symmetrization keep the iterate in the
// even sector, where the linearization has an O(1) spectral gap.
HartreeResult minimize_hartree(const Grid& g, const std::vector<double>& V,
                               const std::vector<double>& w, double lambda,
                               HartreeOptions opts = {});

}  // namespace dw
