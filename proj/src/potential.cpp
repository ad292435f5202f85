#include "dw/potential.hpp"

#include <algorithm>
#include <cmath>

namespace dw {

void validate(const PotentialSpec& spec) {
    if (!(spec.s >= 2.0)) throw std::invalid_argument("potential: s must be >= 2");
    if (!(spec.L >= 0.0)) throw std::invalid_argument("potential: L must be >= 0");
}

std::vector<double> double_well_potential(const Grid& g, const PotentialSpec& spec) {
    validate(spec);
    const double xw = 0.5 * spec.L;
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double dr = std::abs(g.x[i] - xw);
        const double dl = std::abs(g.x[i] + xw);
        v[i] = std::pow(std::min(dr, dl), spec.s);
    }
    return v;
}

double default_x_max(const PotentialSpec& spec, double kernel_range) {
    return 0.5 * spec.L + std::max(8.0, 3.0 * kernel_range);
}

}  // namespace dw
