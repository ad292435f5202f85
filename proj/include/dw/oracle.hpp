#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <array>
#include <map>
#include <vector>

#include "dw/grid.hpp"
#include "dw/modes.hpp"

namespace dw {

// All occupation tuples of n_particles over n_modes, in ascending
// lexicographic order; for n_modes = 2 the index of (k, N-k) is k.
struct TruncatedFockBasis {
    int n_modes = 0;
    int n_particles = 0;
    std::vector<std::vector<int>> states;
    std::map<std::vector<int>, int> index;

    int dim() const { return static_cast<int>(states.size()); }
    int find(const std::vector<int>& occ) const;  // -1 when absent
};

TruncatedFockBasis build_fock_basis(int n_modes, int n_particles, int max_dim = 20000);

// Many-body Hamiltonian over the mode list [u1, u2, modes[2], modes[3], ...]
// truncated to fock.n_modes modes.  Exactly symmetric by construction.
Eigen::SparseMatrix<double> assemble_full_hamiltonian(const Grid& g,
                                                      const std::vector<double>& V,
                                                      const std::vector<double>& kernel,
                                                      const ModeBasis& basis,
                                                      const TruncatedFockBasis& fock,
                                                      double lambda);

struct OracleResult {
    double energy = 0.0;
    std::vector<double> v;   // ground coefficients over fock.states
    double nperp = 0.0;      // <sum_{m>=3} n_m>
    double nperp_sq = 0.0;
    double variance = 0.0;   // <(n_1 - n_2)^2>
    double imbalance = 0.0;  // <n_1 - n_2>
    double nminus = 0.0;     // (N - <Nperp>)/2 - <a1* a2 + a2* a1>/2
    int iterations = 0;
};

OracleResult oracle_ground_state(const Eigen::SparseMatrix<double>& h,
                                 const TruncatedFockBasis& fock);

// Squared ground-state weight per (s, d) sector, s = total excited occupation
// and d = n_1 - n_2, sorted by (s, d).
struct SectorWeight {
    int s = 0;
    int d = 0;
    double weight = 0.0;
};

std::vector<SectorWeight> excitation_decomposition(const TruncatedFockBasis& fock,
                                                   const std::vector<double>& v);

// Entrywise residuals of the sector representation of the pair-mode ladder
// products under the coordinate embedding of the particle-number Fock space,
// checked on a truncated sector space with |d| <= N + 2.
struct ConjugationReport {
    int fock_dim = 0;
    int sector_dim = 0;
    std::array<double, 6> row_errors{};  // a1*a1, a1*a2, a2*a2, a1*am, a2*am, am*an
    double orthonormal_error = 0.0;      // ||U^T U - I||_max
    double projector_error = 0.0;        // ||U U^T - P_admissible||_max
    double max_error() const;
};

ConjugationReport verify_conjugation(int n_particles, int n_modes, int max_dim = 5000);

}  // namespace dw
