#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dw/grid.hpp"
#include "dw/modes.hpp"

namespace dw {

// One-side quadratic data over the pair-averaged excited modes: D holds the
// excitation energies relative to the ground mean-field level, K the half
// pair-exchange couplings, v the half condensate pair-creation amplitudes.
struct QuadraticBlocks {
    Eigen::VectorXd D;
    Eigen::MatrixXd K;
    Eigen::VectorXd v;
};

struct ExcitedBlocks {
    QuadraticBlocks right, left;
    int M = 0;
};

// Builds both one-side blocks from the first M excited pair modes. Requires
// basis.u_right.size() >= M.
ExcitedBlocks excited_blocks(const Grid& g, const std::vector<double>& kernel,
                             const ModeBasis& basis, int M);

// Ground energy of the one-side quadratic form with diagonal D and coupling
// lambda*K: -(1/2) Tr[D + lambda K - sqrt(D^2 + 2 lambda D^{1/2} K D^{1/2})].
double bogoliubov_energy_trace(const Eigen::VectorXd& D, const Eigen::MatrixXd& K,
                               double lambda);

struct BogoliubovResult {
    double e_right = 0.0;
    double e_left = 0.0;
    double e_bog = 0.0;  // e_right + e_left
    int M = 0;
};

BogoliubovResult bogoliubov_energy(const Grid& g, const std::vector<double>& kernel,
                                   const ModeBasis& basis, double lambda, int M);

// Ground energy of a general homogeneous quadratic Hamiltonian
// (1/2) sum A_mn (a*_m a_n + a_n a*_m) + (1/2) sum B_mn (a*_m a*_n + a_m a_n)
// via (1/2) Tr[sqrt((A-B)^{1/2} (A+B) (A-B)^{1/2}) - A].  A - B must be
// positive definite and A + B positive semidefinite; B = 0 gives exactly 0.
double quadratic_ground_energy(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

// Second-order lower estimate for the effective quartic coefficient:
// lambda U - (lambda^2/2) [v_r^T (D_r + 2 lambda K_r)^{-1} v_r + left term].
double variance_coefficient_bound(double U, const ExcitedBlocks& blocks, double lambda);

}  // namespace dw
