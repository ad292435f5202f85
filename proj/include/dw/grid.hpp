#pragma once

#include <stdexcept>
#include <vector>

namespace dw {

// Uniform symmetric grid on [-x_max, x_max]. Points come from the affine
// blend (x_min*(n-1-i) + x_max*i)/(n-1), so x[i] == -x[n-1-i] exactly and
// the center point is exactly zero. n must be odd so that offsets (i-j)*h
// are themselves grid points (needed by the convolution stencil).
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> x;

    int center() const { return (n - 1) / 2; }
    double weight(int i) const { return (i == 0 || i == n - 1) ? 0.5 * h : h; }
};

Grid build_grid(double x_min, double x_max, int n);

// Trapezoid quadrature. For grid functions vanishing at the boundary this
// coincides with h * sum, which keeps quadrature and the Dirichlet
// eigenproblem inner product identical.
double integrate(const Grid& g, const std::vector<double>& f);
double inner(const Grid& g, const std::vector<double>& f, const std::vector<double>& v);
double l2_norm(const Grid& g, const std::vector<double>& f);

// Mass on {x > 0}; the center point contributes half its weight.
double right_mass(const Grid& g, const std::vector<double>& f);

std::vector<double> reflect(const Grid& g, const std::vector<double>& f);

}  // namespace dw
