#pragma once

#include "dw/grid.hpp"

namespace dw {

// Central-difference -d2/dx2 + diag(V) with Dirichlet walls. Grid functions
// passed here are full-length with exact zeros at both boundary points.
std::vector<double> apply_schrodinger(const Grid& g, const std::vector<double>& V,
                                      const std::vector<double>& u);

// <u, (-d2/dx2 + V) u> accumulated in long double; the stencil subtraction
// loses eps*4/h^2 in plain double, which matters for tunneling-gap accuracy.
double rayleigh_quotient(const Grid& g, const std::vector<double>& V,
                         const std::vector<double>& u);
double schrodinger_inner(const Grid& g, const std::vector<double>& V,
                         const std::vector<double>& u, const std::vector<double>& v);

// Solves (alpha + -d2/dx2 + V) u = rhs on interior points, Dirichlet walls.
// Strictly diagonally dominant for alpha > 0, V >= 0.
std::vector<double> shifted_solve(const Grid& g, const std::vector<double>& V, double alpha,
                                  const std::vector<double>& rhs);

struct EigenPair {
    double value = 0.0;
    int parity = 0;  // +1 even, -1 odd
    std::vector<double> vec;
};

// Lowest k eigenpairs of -d2/dx2 + V on the symmetric grid, solved on the
// even and odd half lattices separately. Eigenvectors are exactly
// parity-pure, L2(grid)-normalized, zero at the walls; values are refined
// long-double Rayleigh quotients of the full-grid operator.
std::vector<EigenPair> symmetric_spectrum(const Grid& g, const std::vector<double>& V, int k);

}  // namespace dw
