#include "dw/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace dw {

namespace {

// Widest offset with a nonzero sample; 0 if the kernel is identically zero.
int support_offset(const Grid& g, const std::vector<double>& kernel) {
    const int c = g.center();
    int m = 0;
    for (int d = 1; d <= c; ++d)
        if (kernel[c + d] != 0.0 || kernel[c - d] != 0.0) m = d;
    return m;
}

}  // namespace

std::vector<double> interaction_kernel(const Grid& g, const KernelSpec& spec) {
    if (spec.family != "triangle")
        throw std::invalid_argument("interaction_kernel: unknown kernel family \"" + spec.family +
                                    "\"");
    if (!(spec.amplitude > 0.0))
        throw std::invalid_argument("interaction_kernel: amplitude must be > 0");
    if (!(spec.range > 0.0)) throw std::invalid_argument("interaction_kernel: range must be > 0");
    if (!(spec.range < g.x_max))
        throw std::invalid_argument("interaction_kernel: support must fit inside the domain");

    std::vector<double> w(g.n);
    for (int i = 0; i < g.n; ++i)
        w[i] = spec.amplitude * std::max(0.0, 1.0 - std::abs(g.x[i]) / spec.range);

    // Lattice transform S(xi_k) = h*(w_0 + 2 sum_d w_d cos(xi_k d h)) over the
    // DFT frequencies; must be nonnegative up to rounding.
    const int c = g.center();
    const int m = support_offset(g, w);
    double smin = 0.0, smax = 0.0;
    for (int k = 0; k <= (g.n - 1) / 2; ++k) {
        const double xi = 2.0 * M_PI * k / (g.n * g.h);
        double s = w[c];
        for (int d = 1; d <= m; ++d) s += 2.0 * w[c + d] * std::cos(xi * d * g.h);
        s *= g.h;
        smin = std::min(smin, s);
        smax = std::max(smax, s);
    }
    if (smin < -1e-12 * smax)
        throw std::invalid_argument("interaction_kernel: sampled kernel has a negative transform");
    return w;
}

std::vector<double> convolve_density(const Grid& g, const std::vector<double>& kernel,
                                     const std::vector<double>& rho) {
    if (static_cast<int>(kernel.size()) != g.n || static_cast<int>(rho.size()) != g.n)
        throw std::invalid_argument("convolve_density: fields not sampled on this grid");
    const int c = g.center();
    const int m = support_offset(g, kernel);
    std::vector<double> out(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const int jlo = std::max(0, i - m);
        const int jhi = std::min(g.n - 1, i + m);
        double acc = 0.0;
        for (int j = jlo; j <= jhi; ++j) acc += g.weight(j) * kernel[c + (i - j)] * rho[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace dw
