#include "dw/bogoliubov.hpp"

#include <cmath>
#include <stdexcept>

#include "dw/twomode.hpp"

namespace dw {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
    return 0.5 * (m + m.transpose());
}

// Eigenvalues of a symmetric matrix, with tiny negative values (rounding
// noise relative to the spectral scale) clipped to zero.
Eigen::VectorXd psd_eigenvalues(const Eigen::MatrixXd& s, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success)
        throw std::runtime_error(std::string(what) + ": eigensolver failed");
    Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max({1.0, std::abs(ev(0)), std::abs(ev(ev.size() - 1))});
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-12 * scale)
            throw std::runtime_error(std::string(what) + ": matrix is not positive semidefinite");
        if (ev(i) < 0.0) ev(i) = 0.0;
    }
    return ev;
}

QuadraticBlocks side_blocks(const Grid& g, const std::vector<double>& kernel,
                            const std::vector<double>& cond,
                            const std::vector<std::vector<double>>& pair_modes, int M) {
    QuadraticBlocks b;
    b.K.resize(M, M);
    b.v.resize(M);
    for (int a = 0; a < M; ++a) {
        b.v(a) = 0.5 * interaction_coefficient(g, kernel, pair_modes[a], cond, cond, cond);
        for (int c = a; c < M; ++c) {
            const double k =
                0.5 * interaction_coefficient(g, kernel, pair_modes[a], cond, cond, pair_modes[c]);
            b.K(a, c) = k;
            b.K(c, a) = k;
        }
    }
    return b;
}

}  // namespace

ExcitedBlocks excited_blocks(const Grid& g, const std::vector<double>& kernel,
                             const ModeBasis& basis, int M) {
    if (M < 0) throw std::invalid_argument("excited_blocks: M must be >= 0");
    if (static_cast<int>(basis.u_right.size()) < M)
        throw std::invalid_argument("excited_blocks: mean-field basis too small, increase n_modes");
    ExcitedBlocks blocks;
    blocks.M = M;
    Eigen::VectorXd D(M);
    for (int a = 0; a < M; ++a) {
        D(a) = 0.5 * (basis.mu[2 * a + 2] + basis.mu[2 * a + 3]) - basis.mu[0];
        if (!(D(a) > 0.0))
            throw std::runtime_error("excited_blocks: nonpositive excitation energy");
    }
    blocks.right = side_blocks(g, kernel, basis.u1, basis.u_right, M);
    blocks.left = side_blocks(g, kernel, basis.u2, basis.u_left, M);
    blocks.right.D = D;
    blocks.left.D = D;
    return blocks;
}

double bogoliubov_energy_trace(const Eigen::VectorXd& D, const Eigen::MatrixXd& K,
                               double lambda) {
    const int m = static_cast<int>(D.size());
    if (K.rows() != m || K.cols() != m)
        throw std::invalid_argument("bogoliubov_energy_trace: D and K sizes disagree");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("bogoliubov_energy_trace: lambda must be >= 0");
    for (int i = 0; i < m; ++i)
        if (!(D(i) > 0.0))
            throw std::invalid_argument("bogoliubov_energy_trace: D must be positive");
    if (m == 0 || lambda == 0.0) return 0.0;

    const Eigen::MatrixXd ks = symmetrized(K);
    const Eigen::VectorXd ds = D.cwiseSqrt();
    Eigen::MatrixXd inner = 2.0 * lambda * ks;
    inner.diagonal() += D;
    const Eigen::MatrixXd s =
        symmetrized(ds.asDiagonal() * inner * ds.asDiagonal());
    const Eigen::VectorXd ev = psd_eigenvalues(s, "bogoliubov_energy_trace");
    double tr_sqrt = 0.0;
    for (int i = 0; i < m; ++i) tr_sqrt += std::sqrt(ev(i));
    return -0.5 * (D.sum() + lambda * ks.trace() - tr_sqrt);
}

BogoliubovResult bogoliubov_energy(const Grid& g, const std::vector<double>& kernel,
                                   const ModeBasis& basis, double lambda, int M) {
    const ExcitedBlocks blocks = excited_blocks(g, kernel, basis, M);
    BogoliubovResult r;
    r.M = M;
    r.e_right = bogoliubov_energy_trace(blocks.right.D, blocks.right.K, lambda);
    r.e_left = bogoliubov_energy_trace(blocks.left.D, blocks.left.K, lambda);
    r.e_bog = r.e_right + r.e_left;
    return r;
}

double quadratic_ground_energy(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    const int m = static_cast<int>(A.rows());
    if (A.cols() != m || B.rows() != m || B.cols() != m)
        throw std::invalid_argument("quadratic_ground_energy: A and B must be square, same size");
    const Eigen::MatrixXd as = symmetrized(A);
    const Eigen::MatrixXd bs = symmetrized(B);
    if (m == 0 || bs.norm() == 0.0) return 0.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> diff_es(as - bs);
    if (diff_es.info() != Eigen::Success)
        throw std::runtime_error("quadratic_ground_energy: eigensolver failed");
    if (!(diff_es.eigenvalues().minCoeff() > 0.0))
        throw std::runtime_error("quadratic_ground_energy: A - B must be positive definite");
    const Eigen::MatrixXd root =
        diff_es.eigenvectors() *
        diff_es.eigenvalues().cwiseSqrt().asDiagonal() *
        diff_es.eigenvectors().transpose();

    const Eigen::MatrixXd s = symmetrized(root * (as + bs) * root);
    const Eigen::VectorXd ev = psd_eigenvalues(s, "quadratic_ground_energy");
    double tr_sqrt = 0.0;
    for (int i = 0; i < m; ++i) tr_sqrt += std::sqrt(ev(i));
    return 0.5 * (tr_sqrt - as.trace());
}

double variance_coefficient_bound(double U, const ExcitedBlocks& blocks, double lambda) {
    if (!(lambda >= 0.0))
        throw std::invalid_argument("variance_coefficient_bound: lambda must be >= 0");
    double correction = 0.0;
    for (const QuadraticBlocks* b : {&blocks.right, &blocks.left}) {
        if (b->D.size() == 0) continue;
        Eigen::MatrixXd dressed = 2.0 * lambda * symmetrized(b->K);
        dressed.diagonal() += b->D;
        Eigen::LLT<Eigen::MatrixXd> llt(dressed);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error(
                "variance_coefficient_bound: dressed excitation matrix is not positive definite");
        correction += b->v.dot(llt.solve(b->v));
    }
    return lambda * U - 0.5 * lambda * lambda * correction;
}

}  // namespace dw
