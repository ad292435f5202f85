#pragma once

#include "dw/grid.hpp"
#include "dw/hartree.hpp"
#include "dw/potential.hpp"

namespace dw {

// Low modes of h = -d2/dx2 + V + lambda (w * u_+^2), eigenvalue-ordered, plus
// the localized combinations built from consecutive (even, odd) doublets:
//   u1 = (m0 + m1)/sqrt2 right well,  u2 = (m0 - m1)/sqrt2 left well,
//   u_right[a] = (m_{2a} + m_{2a+1})/sqrt2, u_left[a] the mirror (a >= 1).
struct ModeBasis {
    int n_modes = 0;
    std::vector<double> mu;
    std::vector<int> parity;                  // +1 even, -1 odd
    std::vector<std::vector<double>> modes;   // L2-normalized, signed
    std::vector<double> u1, u2;
    std::vector<std::vector<double>> u_right, u_left;  // size n_modes/2 - 1
    bool pairing_warning = false;
};

// n_modes must be even and >= 4. Sign conventions: ground mode nonnegative,
// odd modes positive-mean on x > 0, excited even modes oriented so each
// u_right[a] is right-localized.
ModeBasis mean_field_spectrum(const Grid& g, const std::vector<double>& V,
                              const std::vector<double>& w, const HartreeResult& hartree,
                              int n_modes);

// exp(-(2/(1+s/2)) (L/2)^(1+s/2)): squared Agmon factor through the barrier.
double tunneling_parameter(double s, double L);

struct TunnelingReport {
    double T = 0.0;
    double mu_plus = 0.0, mu_minus = 0.0;
    double gap = 0.0, gap_over_T = 0.0;
    double excited_gap = 0.0;  // mu_3 - mu_2
};

TunnelingReport gap_report(const ModeBasis& basis, const PotentialSpec& spec);

}  // namespace dw
