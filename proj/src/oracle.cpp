#include "dw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "dw/kernel.hpp"
#include "dw/operators.hpp"

namespace dw {

int TruncatedFockBasis::find(const std::vector<int>& occ) const {
    const auto it = index.find(occ);
    return it == index.end() ? -1 : it->second;
}

TruncatedFockBasis build_fock_basis(int n_modes, int n_particles, int max_dim) {
    if (n_modes < 1) throw std::invalid_argument("build_fock_basis: need at least one mode");
    if (n_particles < 0)
        throw std::invalid_argument("build_fock_basis: n_particles must be >= 0");
    double count = 1.0;
    for (int i = 1; i < n_modes; ++i) count = count * (n_particles + i) / i;
    if (count > max_dim)
        throw std::runtime_error("build_fock_basis: basis dimension exceeds limit");

    TruncatedFockBasis b;
    b.n_modes = n_modes;
    b.n_particles = n_particles;
    std::vector<int> occ(n_modes, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n_modes - 1) {
            occ[pos] = left;
            b.index.emplace(occ, static_cast<int>(b.states.size()));
            b.states.push_back(occ);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            occ[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, n_particles);
    return b;
}

namespace {

// Applies creators/annihilators (annihilators act first) to occ, returning the
// bosonic amplitude or 0 when an annihilator hits an empty mode.
double ladder_amplitude(std::vector<int>& occ, const std::vector<int>& create,
                        const std::vector<int>& annihilate) {
    double amp = 1.0;
    for (int m : annihilate) {
        if (occ[m] == 0) return 0.0;
        amp *= std::sqrt(static_cast<double>(occ[m]));
        occ[m] -= 1;
    }
    for (int m : create) {
        amp *= std::sqrt(static_cast<double>(occ[m] + 1));
        occ[m] += 1;
    }
    return amp;
}

}  // namespace

Eigen::SparseMatrix<double> assemble_full_hamiltonian(const Grid& g,
                                                      const std::vector<double>& V,
                                                      const std::vector<double>& kernel,
                                                      const ModeBasis& basis,
                                                      const TruncatedFockBasis& fock,
                                                      double lambda) {
    const int M = fock.n_modes;
    const int N = fock.n_particles;
    if (M < 2)
        throw std::invalid_argument("assemble_full_hamiltonian: needs the two pair modes");
    if (basis.n_modes < M)
        throw std::invalid_argument("assemble_full_hamiltonian: mode basis too small");
    if (N < 2) throw std::invalid_argument("assemble_full_hamiltonian: n_particles must be >= 2");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("assemble_full_hamiltonian: lambda must be >= 0");

    std::vector<const std::vector<double>*> modes;
    modes.push_back(&basis.u1);
    modes.push_back(&basis.u2);
    for (int m = 2; m < M; ++m) modes.push_back(&basis.modes[m]);

    Eigen::MatrixXd h(M, M);
    for (int m = 0; m < M; ++m)
        for (int n = m; n < M; ++n) {
            h(m, n) = schrodinger_inner(g, V, *modes[m], *modes[n]);
            h(n, m) = h(m, n);
        }

    // pair convolutions f_{nq} = w * (u_n u_q), shared across the tensor
    std::vector<std::vector<double>> conv(static_cast<size_t>(M) * M);
    for (int n = 0; n < M; ++n)
        for (int q = n; q < M; ++q) {
            std::vector<double> rho(g.n);
            for (int i = 0; i < g.n; ++i) rho[i] = (*modes[n])[i] * (*modes[q])[i];
            conv[n * M + q] = convolve_density(g, kernel, rho);
        }
    const auto& pair_conv = [&](int n, int q) -> const std::vector<double>& {
        return conv[std::min(n, q) * M + std::max(n, q)];
    };
    std::vector<double> w(static_cast<size_t>(M) * M * M * M);
    for (int m = 0; m < M; ++m)
        for (int p = m; p < M; ++p) {
            std::vector<double> mp(g.n);
            for (int i = 0; i < g.n; ++i) mp[i] = (*modes[m])[i] * (*modes[p])[i];
            for (int n = 0; n < M; ++n)
                for (int q = 0; q < M; ++q) {
                    const auto& f = pair_conv(n, q);
                    long double acc = 0.0L;
                    for (int i = 0; i < g.n; ++i)
                        acc += static_cast<long double>(g.weight(i)) * mp[i] * f[i];
                    const double val = static_cast<double>(acc);
                    w[((m * M + n) * M + p) * M + q] = val;
                    w[((p * M + n) * M + m) * M + q] = val;
                }
        }

    const double scale = lambda / (2.0 * (N - 1.0));
    const int dim = fock.dim();
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<int> occ;
    for (int j = 0; j < dim; ++j) {
        const std::vector<int>& st = fock.states[j];
        for (int m = 0; m < M; ++m)
            for (int n = 0; n < M; ++n) {
                if (h(m, n) == 0.0) continue;
                occ = st;
                const double amp = ladder_amplitude(occ, {m}, {n});
                if (amp == 0.0) continue;
                const int i = fock.find(occ);
                if (i > j) continue;  // mirrored below
                trips.emplace_back(i, j, h(m, n) * amp);
            }
        if (scale != 0.0)
            for (int m = 0; m < M; ++m)
                for (int n = 0; n < M; ++n)
                    for (int p = 0; p < M; ++p)
                        for (int q = 0; q < M; ++q) {
                            const double c = scale * w[((m * M + n) * M + p) * M + q];
                            if (c == 0.0) continue;
                            occ = st;
                            const double amp = ladder_amplitude(occ, {m, n}, {p, q});
                            if (amp == 0.0) continue;
                            const int i = fock.find(occ);
                            if (i > j) continue;
                            trips.emplace_back(i, j, c * amp);
                        }
    }
    Eigen::SparseMatrix<double> upper(dim, dim);
    upper.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseMatrix<double> full(dim, dim);
    full = upper.selfadjointView<Eigen::Upper>();
    return full;
}

namespace {

struct EigenPairResult {
    double value = 0.0;
    Eigen::VectorXd vec;
    int iterations = 0;
};

EigenPairResult sparse_lowest_eigenpair(const Eigen::SparseMatrix<double>& h,
                                        const Eigen::VectorXd& start) {
    const int n = static_cast<int>(h.rows());
    const int m_max = std::min(n, 600);
    const double tol = 1e-11;

    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha, beta;
    Eigen::VectorXd v = start.normalized(), hv, prev = Eigen::VectorXd::Zero(n);
    for (int it = 0; it < m_max; ++it) {
        basis.push_back(v);
        hv = h * v;
        const double a = v.dot(hv);
        alpha.push_back(a);
        hv -= a * v;
        if (it > 0) hv -= beta[it - 1] * prev;
        for (const auto& b : basis) hv -= b.dot(hv) * b;
        const double bnorm = hv.norm();

        const int m = it + 1;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double theta = es.eigenvalues()(0);
        const double resid = bnorm * std::abs(es.eigenvectors()(m - 1, 0));
        if (resid <= tol * std::max(1.0, std::abs(theta)) || bnorm < 1e-14 ||
            it == m_max - 1) {
            EigenPairResult r;
            r.value = theta;
            r.vec = Eigen::VectorXd::Zero(n);
            for (int jj = 0; jj < m; ++jj) r.vec += es.eigenvectors()(jj, 0) * basis[jj];
            r.vec.normalize();
            r.iterations = m;
            return r;
        }
        beta.push_back(bnorm);
        prev = basis.back();
        v = hv / bnorm;
    }
    throw std::runtime_error("oracle_ground_state: lanczos failed to converge");
}

}  // namespace

OracleResult oracle_ground_state(const Eigen::SparseMatrix<double>& h,
                                 const TruncatedFockBasis& fock) {
    const int dim = fock.dim();
    if (h.rows() != dim || h.cols() != dim)
        throw std::invalid_argument("oracle_ground_state: matrix and basis sizes disagree");
    OracleResult r;
    Eigen::VectorXd v;
    if (dim <= 3000) {
        const Eigen::MatrixXd dense(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("oracle_ground_state: dense eigensolver failed");
        r.energy = es.eigenvalues()(0);
        v = es.eigenvectors().col(0);
    } else {
        Eigen::VectorXd start = Eigen::VectorXd::Zero(dim);
        const double sqn = std::sqrt(static_cast<double>(std::max(1, fock.n_particles)));
        for (int j = 0; j < dim; ++j) {
            const auto& st = fock.states[j];
            int nperp = 0;
            for (int m = 2; m < fock.n_modes; ++m) nperp += st[m];
            if (nperp == 0) {
                const double d = (st[0] - st[1]) / sqn;
                start(j) = std::exp(-0.5 * d * d);
            }
        }
        if (start.norm() == 0.0) start.setOnes();
        const EigenPairResult ep = sparse_lowest_eigenpair(h, start);
        r.energy = ep.value;
        v = ep.vec;
        r.iterations = ep.iterations;
    }

    int imax = 0;
    for (int j = 1; j < dim; ++j)
        if (std::abs(v(j)) > std::abs(v(imax))) imax = j;
    if (v(imax) < 0.0) v = -v;
    r.v.assign(v.data(), v.data() + dim);

    double hop = 0.0;
    std::vector<int> occ;
    for (int j = 0; j < dim; ++j) {
        const auto& st = fock.states[j];
        const double p = v(j) * v(j);
        int nperp = 0;
        for (int m = 2; m < fock.n_modes; ++m) nperp += st[m];
        const double d = st[0] - st[1];
        r.nperp += nperp * p;
        r.nperp_sq += static_cast<double>(nperp) * nperp * p;
        r.variance += d * d * p;
        r.imbalance += d * p;
        if (fock.n_modes >= 2 && st[1] > 0) {
            occ = st;
            const double amp = ladder_amplitude(occ, {0}, {1});
            const int i = fock.find(occ);
            if (i >= 0) hop += 2.0 * amp * v(i) * v(j);  // + transpose term
        }
    }
    r.nminus = 0.5 * (fock.n_particles - r.nperp) - 0.5 * hop;
    return r;
}

std::vector<SectorWeight> excitation_decomposition(const TruncatedFockBasis& fock,
                                                   const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != fock.dim())
        throw std::invalid_argument("excitation_decomposition: vector and basis sizes disagree");
    std::map<std::pair<int, int>, double> acc;
    for (int j = 0; j < fock.dim(); ++j) {
        const auto& st = fock.states[j];
        int s = 0;
        for (int m = 2; m < fock.n_modes; ++m) s += st[m];
        acc[{s, st[0] - st[1]}] += v[j] * v[j];
    }
    std::vector<SectorWeight> out;
    out.reserve(acc.size());
    for (const auto& [key, weight] : acc) out.push_back({key.first, key.second, weight});
    return out;
}

double ConjugationReport::max_error() const {
    double e = std::max(orthonormal_error, projector_error);
    for (double x : row_errors) e = std::max(e, x);
    return e;
}

namespace {

// Sector space: excited tuples nu (sum <= N) times relative imbalance
// d in [-(N+2), N+2], both parities retained so the shift operator has room.
struct SectorSpace {
    int N = 0;
    int d_span = 0;  // number of d values
    std::vector<std::vector<int>> tuples;
    std::map<std::vector<int>, int> tuple_index;

    int dim() const { return static_cast<int>(tuples.size()) * d_span; }
    int index(int tuple_id, int d) const {
        const int off = d + N + 2;
        return tuple_id * d_span + off;
    }
    int locate(const std::vector<int>& nu, int d) const {
        if (d < -(N + 2) || d > N + 2) return -1;
        const auto it = tuple_index.find(nu);
        if (it == tuple_index.end()) return -1;
        return index(it->second, d);
    }
    int sum_of(int tuple_id) const {
        int s = 0;
        for (int x : tuples[tuple_id]) s += x;
        return s;
    }
};

SectorSpace build_sector_space(int N, int n_excited) {
    SectorSpace sp;
    sp.N = N;
    sp.d_span = 2 * N + 5;
    std::vector<int> nu(std::max(1, n_excited), 0);
    if (n_excited == 0) {
        sp.tuple_index.emplace(std::vector<int>{}, 0);
        sp.tuples.push_back({});
        return sp;
    }
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n_excited) {
            sp.tuple_index.emplace(nu, static_cast<int>(sp.tuples.size()));
            sp.tuples.push_back(nu);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            nu[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, N);
    return sp;
}

using Mat = Eigen::MatrixXd;

Mat fock_operator(const TruncatedFockBasis& fock, const std::vector<int>& create,
                  const std::vector<int>& annihilate) {
    const int dim = fock.dim();
    Mat o = Mat::Zero(dim, dim);
    std::vector<int> occ;
    for (int j = 0; j < dim; ++j) {
        occ = fock.states[j];
        const double amp = ladder_amplitude(occ, create, annihilate);
        if (amp == 0.0) continue;
        const int i = fock.find(occ);
        if (i >= 0) o(i, j) += amp;
    }
    return o;
}

}  // namespace

ConjugationReport verify_conjugation(int n_particles, int n_modes, int max_dim) {
    if (n_modes < 3)
        throw std::invalid_argument("verify_conjugation: needs at least three modes");
    if (n_particles < 1)
        throw std::invalid_argument("verify_conjugation: n_particles must be >= 1");
    const int N = n_particles;
    const TruncatedFockBasis fock = build_fock_basis(n_modes, N, max_dim);
    const SectorSpace sec = build_sector_space(N, n_modes - 2);
    if (sec.dim() > max_dim)
        throw std::runtime_error("verify_conjugation: sector dimension exceeds limit");
    const int df = fock.dim();
    const int ds = sec.dim();

    // coordinate embedding |n1, n2, nu> -> (nu, d = n1 - n2)
    Mat U = Mat::Zero(ds, df);
    for (int j = 0; j < df; ++j) {
        const auto& st = fock.states[j];
        const std::vector<int> nu(st.begin() + 2, st.end());
        const int row = sec.locate(nu, st[0] - st[1]);
        U(row, j) = 1.0;
    }

    // admissible indicator from the occupancy constraints alone
    Eigen::VectorXd adm = Eigen::VectorXd::Zero(ds);
    const int n_tuples = static_cast<int>(sec.tuples.size());
    for (int t = 0; t < n_tuples; ++t) {
        const int s = sec.sum_of(t);
        for (int d = -(N + 2); d <= N + 2; ++d)
            if (s <= N && std::abs(d) <= N - s && (N - s + d) % 2 == 0)
                adm(sec.index(t, d)) = 1.0;
    }

    ConjugationReport rep;
    rep.fock_dim = df;
    rep.sector_dim = ds;
    rep.orthonormal_error = (U.transpose() * U - Mat::Identity(df, df)).cwiseAbs().maxCoeff();
    rep.projector_error =
        (U * U.transpose() - Mat(adm.asDiagonal())).cwiseAbs().maxCoeff();

    // sector building blocks
    Mat theta_up = Mat::Zero(ds, ds), theta_dn = Mat::Zero(ds, ds);
    for (int t = 0; t < n_tuples; ++t)
        for (int d = -(N + 2); d <= N + 2; ++d) {
            if (d + 1 <= N + 2) theta_up(sec.index(t, d + 1), sec.index(t, d)) = 1.0;
            if (d - 1 >= -(N + 2)) theta_dn(sec.index(t, d - 1), sec.index(t, d)) = 1.0;
        }
    const auto diag_fn = [&](const std::function<double(int, int)>& f) {
        Eigen::VectorXd dg(ds);
        for (int t = 0; t < n_tuples; ++t) {
            const int s = sec.sum_of(t);
            for (int d = -(N + 2); d <= N + 2; ++d) dg(sec.index(t, d)) = f(s, d);
        }
        return Mat(dg.asDiagonal());
    };
    const auto half_sqrt = [N](int s, int d) {
        return std::sqrt(std::max(0.0, 0.5 * (N - s + d + 1)));
    };
    const auto half_sqrt_m = [N](int s, int d) {
        return std::sqrt(std::max(0.0, 0.5 * (N - s - d + 1)));
    };
    const auto sector_annihilate = [&](int nu_idx) {
        Mat a = Mat::Zero(ds, ds);
        for (int t = 0; t < n_tuples; ++t) {
            if (sec.tuples[t][nu_idx] == 0) continue;
            std::vector<int> nu = sec.tuples[t];
            const double amp = std::sqrt(static_cast<double>(nu[nu_idx]));
            nu[nu_idx] -= 1;
            const int tt = sec.tuple_index.at(nu);
            for (int d = -(N + 2); d <= N + 2; ++d)
                a(sec.index(tt, d), sec.index(t, d)) = amp;
        }
        return a;
    };

    const int me = 2;                              // first excited mode
    const int ne = n_modes >= 4 ? 3 : 2;           // partner for the last row
    const Mat am = sector_annihilate(me - 2);
    const Mat an = sector_annihilate(ne - 2);

    std::array<Mat, 6> fock_side = {
        fock_operator(fock, {0}, {0}),  fock_operator(fock, {0}, {1}),
        fock_operator(fock, {1}, {1}),  fock_operator(fock, {0}, {me}),
        fock_operator(fock, {1}, {me}), fock_operator(fock, {me}, {ne}),
    };
    std::array<Mat, 6> sector_side = {
        diag_fn([N](int s, int d) { return 0.5 * (N - s + d); }),
        theta_up * diag_fn([&](int s, int d) { return half_sqrt(s, d) * half_sqrt_m(s, d); }) *
            theta_up,
        diag_fn([N](int s, int d) { return 0.5 * (N - s - d); }),
        theta_up * diag_fn(half_sqrt) * am,
        theta_dn * diag_fn(half_sqrt_m) * am,
        am.transpose() * an,
    };
    const Mat p = Mat(adm.asDiagonal());
    for (int r = 0; r < 6; ++r) {
        const Mat lhs = U * fock_side[r] * U.transpose();
        const Mat rhs = p * sector_side[r] * p;
        rep.row_errors[r] = (lhs - rhs).cwiseAbs().maxCoeff();
    }
    return rep;
}

}  // namespace dw
