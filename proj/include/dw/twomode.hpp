#pragma once

#include "dw/grid.hpp"
#include "dw/kernel.hpp"
#include "dw/modes.hpp"

namespace dw {

// w_mnpq = integral u_m(x) u_n(y) w(x-y) u_p(x) u_q(y) dx dy.
double interaction_coefficient(const Grid& g, const std::vector<double>& kernel,
                               const std::vector<double>& um, const std::vector<double>& un,
                               const std::vector<double>& up, const std::vector<double>& uq);

// Data of the projected N-body problem on span{u1, u2}. Reflection symmetry
// leaves four independent interaction classes.
struct TwoModeModel {
    int N = 0;
    double lambda = 0.0;
    double h11 = 0.0, h12 = 0.0;  // bare kinetic+potential elements
    double w1111 = 0.0, w1112 = 0.0, w1212 = 0.0, w1122 = 0.0;
    double gap = 0.0;  // mu_- - mu_+ of the mean-field operator
};

TwoModeModel build_two_mode_model(const Grid& g, const std::vector<double>& V,
                                  const std::vector<double>& kernel, const ModeBasis& basis,
                                  int N, double lambda);

struct TwoModeConstants {
    double E0 = 0.0;            // condensate energy offset
    double EwN = 0.0;           // interaction offset
    double mu = 0.0;            // chemical-potential coefficient of N_perp
    double U = 0.0;             // (w1111 - w1212)/4, imbalance stiffness
    double hop_constant = 0.0;  // -gap/2 + lambda w1122/(N-1)
};

TwoModeConstants two_mode_constants(const TwoModeModel& m);

// Symmetric pentadiagonal matrix on the occupation chain |k> = k bosons in
// u1, N-k in u2.
struct FockMatrix {
    int N = 0;
    std::vector<double> diag;  // size N+1
    std::vector<double> off1;  // size N,   element (k, k+1)
    std::vector<double> off2;  // size N-1, element (k, k+2)

    double at(int i, int j) const;
};

// Direct second-quantized assembly: sum over all index tuples in {1,2} with
// generic ladder-operator action.
FockMatrix assemble_two_mode_hamiltonian(const TwoModeModel& m);

// Algebraically identical rearrangement: constants + hopping + imbalance^2
// + pair-counting terms, restricted to the two-mode sector.
FockMatrix assemble_identity_form(const TwoModeModel& m);

// Comparison model: hopping plus on-site repulsion only.
FockMatrix assemble_bose_hubbard(const TwoModeModel& m);

struct GroundStateRecord {
    double energy = 0.0;
    std::vector<double> v;     // phase: largest-|.| coefficient positive
    double variance = 0.0;     // sum (2k-N)^2 v_k^2
    double imbalance = 0.0;    // sum (2k-N) v_k^2
    bool degenerate = false;
    int iterations = 0;        // 0 for the direct path
};

// Direct banded solver up to N = 2000; Lanczos with full reorthogonalization
// above (or when forced). Exactly degenerate ground pairs are returned as
// the well-swap-symmetric combination.
GroundStateRecord fock_ground_state(const FockMatrix& f, bool force_iterative = false);

enum class SigmaRule { sqrt_gap_N, sqrt_N, fixed };

struct GaussianTrial {
    double sigma_sq = 0.0;
    std::vector<int> d;      // admissible imbalances, |d| <= sigma_sq, N+d even
    std::vector<double> c;   // c_d ~ exp(-d^2/(4 sigma^2)), sum c^2 = 1
    double d_second_moment = 0.0;
};

GaussianTrial gaussian_trial_state(int N, double gap, SigmaRule rule, double sigma_override = 0.0);

double trial_energy(const FockMatrix& f, const GaussianTrial& trial);

}  // namespace dw
