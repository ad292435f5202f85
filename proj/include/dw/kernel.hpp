#pragma once

#include <string>

#include "dw/grid.hpp"

namespace dw {

// Interaction kernel w: even, pointwise nonnegative, compactly supported in
// [-R, R], with nonnegative Fourier transform. The triangle family satisfies
// all of this for any amplitude/range.
struct KernelSpec {
    std::string family = "triangle";
    double amplitude = 1.0;
    double range = 1.0;
};

// Samples w on the grid and verifies the positivity assumptions; the Fourier
// check uses the lattice cosine transform, which by Poisson summation is a
// sum of nonnegative aliases of the continuum transform.
std::vector<double> interaction_kernel(const Grid& g, const KernelSpec& spec);

// (w * rho)(x_i) = sum_j weight_j w(x_i - x_j) rho(x_j), direct summation
// over the kernel support. Exact translation invariance: offsets are read
// from the kernel samples around the center point.
std::vector<double> convolve_density(const Grid& g, const std::vector<double>& kernel,
                                     const std::vector<double>& rho);

}  // namespace dw
