#pragma once

#include "dw/grid.hpp"

namespace dw {

// min{|x - L/2|^s, |x + L/2|^s}: two power-law wells at +-L/2, glued at 0.
struct PotentialSpec {
    double s = 2.0;
    double L = 0.0;
};

void validate(const PotentialSpec& spec);

std::vector<double> double_well_potential(const Grid& g, const PotentialSpec& spec);

// Default domain half-width: wells plus padding for tunneling tails and the
// kernel support.
double default_x_max(const PotentialSpec& spec, double kernel_range);

}  // namespace dw
