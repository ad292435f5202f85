#include "dw/grid.hpp"

#include <cmath>

namespace dw {

Grid build_grid(double x_min, double x_max, int n) {
    if (!(x_min == -x_max) || !std::isfinite(x_max) || x_max <= 0.0)
        throw std::invalid_argument("build_grid: asymmetric domain (need x_min == -x_max < 0)");
    if (n < 3) throw std::invalid_argument("build_grid: degenerate grid (n must be >= 3)");
    if (n % 2 == 0)
        throw std::invalid_argument("build_grid: grid lacks a center point (n must be odd)");
    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n = n;
    g.h = (x_max - x_min) / static_cast<double>(n - 1);
    g.x.resize(n);
    for (int i = 0; i < n; ++i)
        g.x[i] = (x_min * static_cast<double>(n - 1 - i) + x_max * static_cast<double>(i)) /
                 static_cast<double>(n - 1);
    return g;
}

double integrate(const Grid& g, const std::vector<double>& f) {
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) acc += g.weight(i) * f[i];
    return acc;
}

double inner(const Grid& g, const std::vector<double>& f, const std::vector<double>& v) {
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) acc += g.weight(i) * f[i] * v[i];
    return acc;
}

double l2_norm(const Grid& g, const std::vector<double>& f) {
    return std::sqrt(inner(g, f, f));
}

double right_mass(const Grid& g, const std::vector<double>& f) {
    double acc = 0.5 * g.h * f[g.center()] * f[g.center()];
    for (int i = g.center() + 1; i < g.n; ++i) acc += g.weight(i) * f[i] * f[i];
    return acc;
}

std::vector<double> reflect(const Grid& g, const std::vector<double>& f) {
    std::vector<double> out(g.n);
    for (int i = 0; i < g.n; ++i) out[i] = f[g.n - 1 - i];
    return out;
}

}  // namespace dw
