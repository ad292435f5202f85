#include "dw/twomode.hpp"

#include <lapacke.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "dw/operators.hpp"

namespace dw {

double interaction_coefficient(const Grid& g, const std::vector<double>& kernel,
                               const std::vector<double>& um, const std::vector<double>& un,
                               const std::vector<double>& up, const std::vector<double>& uq) {
    std::vector<double> nq(g.n);
    for (int i = 0; i < g.n; ++i) nq[i] = un[i] * uq[i];
    const auto f = convolve_density(g, kernel, nq);
    long double acc = 0.0L;
    for (int i = 0; i < g.n; ++i)
        acc += static_cast<long double>(g.weight(i)) * um[i] * up[i] * f[i];
    return static_cast<double>(acc);
}

TwoModeModel build_two_mode_model(const Grid& g, const std::vector<double>& V,
                                  const std::vector<double>& kernel, const ModeBasis& basis,
                                  int N, double lambda) {
    if (N < 2) throw std::invalid_argument("build_two_mode_model: N must be >= 2");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("build_two_mode_model: lambda must be >= 0");
    TwoModeModel m;
    m.N = N;
    m.lambda = lambda;
    m.h11 = schrodinger_inner(g, V, basis.u1, basis.u1);
    m.h12 = schrodinger_inner(g, V, basis.u1, basis.u2);
    m.w1111 = interaction_coefficient(g, kernel, basis.u1, basis.u1, basis.u1, basis.u1);
    m.w1112 = interaction_coefficient(g, kernel, basis.u1, basis.u1, basis.u1, basis.u2);
    m.w1212 = interaction_coefficient(g, kernel, basis.u1, basis.u2, basis.u1, basis.u2);
    m.w1122 = interaction_coefficient(g, kernel, basis.u1, basis.u1, basis.u2, basis.u2);
    m.gap = basis.mu[1] - basis.mu[0];
    return m;
}

TwoModeConstants two_mode_constants(const TwoModeModel& m) {
    const double lam = m.lambda;
    const double N = m.N;
    const double Nm1 = N - 1.0;
    TwoModeConstants c;
    c.E0 = N * m.h11 + lam * N * N / (4.0 * Nm1) * (2.0 * m.w1122 - m.w1212);
    c.EwN = N * (lam * N / (4.0 * Nm1) * (m.w1111 - 4.0 * m.w1122 + 2.0 * m.w1212) -
                 lam / (2.0 * Nm1) * (m.w1111 + m.w1122));
    c.mu = m.h11 + 0.5 * lam * m.w1111 + lam * N / (2.0 * Nm1) * (m.w1212 - 2.0 * m.w1122) -
           lam / (2.0 * Nm1) * m.w1122;
    c.U = 0.25 * (m.w1111 - m.w1212);
    c.hop_constant = -0.5 * m.gap + lam * m.w1122 / Nm1;
    return c;
}

double FockMatrix::at(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == j) return diag[i];
    if (j == i + 1) return off1[i];
    if (j == i + 2) return off2[i];
    return 0.0;
}

namespace {

FockMatrix zero_matrix(int N) {
    FockMatrix f;
    f.N = N;
    f.diag.assign(N + 1, 0.0);
    f.off1.assign(N, 0.0);
    f.off2.assign(std::max(0, N - 1), 0.0);
    return f;
}

// Applies a composite ladder string (annihilators first) to |k, N-k> and
// adds coeff * amplitude to the band entry it lands on. Upper-triangle
// contributions are canonical; lower ones are their exact mirrors.
void add_ladder_term(FockMatrix& f, int k, double coeff, const std::array<int, 2>& create,
                     const std::array<int, 2>& annihilate) {
    int occ[3] = {0, k, f.N - k};  // occ[1], occ[2]; mode 0 marks an unused slot
    double amp = 1.0;
    for (int mode : annihilate) {
        if (mode == 0) continue;
        if (occ[mode] == 0) return;
        amp *= std::sqrt(static_cast<double>(occ[mode]));
        occ[mode] -= 1;
    }
    for (int mode : create) {
        if (mode == 0) continue;
        amp *= std::sqrt(static_cast<double>(occ[mode] + 1));
        occ[mode] += 1;
    }
    const int kp = occ[1];
    if (kp < k) return;  // mirror of an upper entry handled from the transpose tuple
    if (kp == k)
        f.diag[k] += coeff * amp;
    else if (kp == k + 1)
        f.off1[k] += coeff * amp;
    else if (kp == k + 2)
        f.off2[k] += coeff * amp;
}

// Interaction class value for an index tuple, using the reflection-symmetric
// reduction (swapping all 1 <-> 2 leaves the class unchanged).
double w_class(const TwoModeModel& m, int a, int b, int c, int d) {
    const int twos = (a == 2) + (b == 2) + (c == 2) + (d == 2);
    if (twos == 0 || twos == 4) return m.w1111;
    if (twos == 1 || twos == 3) return m.w1112;
    // two 2s: the x-slot pair (positions 1,3) carries equal indices exactly
    // for the density-density class; otherwise both wells appear in one slot.
    return a == c ? m.w1212 : m.w1122;
}

}  // namespace

FockMatrix assemble_two_mode_hamiltonian(const TwoModeModel& m) {
    FockMatrix f = zero_matrix(m.N);
    const double hmat[3][3] = {{0, 0, 0}, {0, m.h11, m.h12}, {0, m.h12, m.h11}};
    const double scale = m.lambda / (2.0 * (m.N - 1.0));
    for (int k = 0; k <= m.N; ++k) {
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                add_ladder_term(f, k, hmat[a][b], {a, 0}, {b, 0});
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                for (int c = 1; c <= 2; ++c)
                    for (int d = 1; d <= 2; ++d)
                        add_ladder_term(f, k, scale * w_class(m, a, b, c, d), {a, b}, {c, d});
    }
    return f;
}

FockMatrix assemble_identity_form(const TwoModeModel& m) {
    const TwoModeConstants cst = two_mode_constants(m);
    const double N = m.N;
    FockMatrix f = zero_matrix(m.N);
    std::vector<double> hop(m.N);  // <k+1| a1* a2 |k>
    for (int k = 0; k < m.N; ++k)
        hop[k] = std::sqrt(static_cast<double>(k + 1) * (m.N - k));

    const double cU = m.lambda * cst.U / (N - 1.0);
    const double cP = 2.0 * m.lambda * m.w1122 / (N - 1.0);  // N_minus^2 weight
    for (int k = 0; k <= m.N; ++k) {
        const double d = 2.0 * k - N;
        // hop^2 diagonal part: t_{k-1}^2 + t_k^2
        const double hop2_diag = (k > 0 ? hop[k - 1] * hop[k - 1] : 0.0) +
                                 (k < m.N ? hop[k] * hop[k] : 0.0);
        f.diag[k] = cst.E0 + cst.EwN + cU * d * d + cP * 0.25 * (N * N + hop2_diag);
    }
    for (int k = 0; k < m.N; ++k)
        f.off1[k] = cst.hop_constant * hop[k] + cP * (-0.5 * N) * hop[k];
    for (int k = 0; k + 1 < m.N; ++k) f.off2[k] = cP * 0.25 * hop[k] * hop[k + 1];
    return f;
}

FockMatrix assemble_bose_hubbard(const TwoModeModel& m) {
    FockMatrix f = zero_matrix(m.N);
    const double on_site = m.lambda * m.w1111 / (2.0 * (m.N - 1.0));
    for (int k = 0; k <= m.N; ++k) {
        const double n1 = k, n2 = m.N - k;
        f.diag[k] = on_site * (n1 * (n1 - 1.0) + n2 * (n2 - 1.0));
    }
    for (int k = 0; k < m.N; ++k)
        f.off1[k] = -0.5 * m.gap * std::sqrt(static_cast<double>(k + 1) * (m.N - k));
    return f;
}

namespace {

void finalize_record(GroundStateRecord& r, int N) {
    // Well-swap symmetric combination inside an exactly degenerate ground
    // pair; then fix the global phase.
    if (r.degenerate) {
        std::vector<double> sym(N + 1);
        double nrm = 0.0;
        for (int k = 0; k <= N; ++k) {
            sym[k] = r.v[k] + r.v[N - k];
            nrm += sym[k] * sym[k];
        }
        if (nrm > 1e-12) {
            nrm = std::sqrt(nrm);
            for (int k = 0; k <= N; ++k) r.v[k] = sym[k] / nrm;
        }
    }
    int imax = 0;
    for (int k = 0; k <= N; ++k)
        if (std::abs(r.v[k]) > std::abs(r.v[imax])) imax = k;
    if (r.v[imax] < 0.0)
        for (double& x : r.v) x = -x;
    r.variance = 0.0;
    r.imbalance = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double d = 2.0 * k - N;
        r.variance += d * d * r.v[k] * r.v[k];
        r.imbalance += d * r.v[k] * r.v[k];
    }
}

void matvec(const FockMatrix& f, const std::vector<double>& x, std::vector<double>& y) {
    const int n = f.N + 1;
    for (int i = 0; i < n; ++i) {
        double acc = f.diag[i] * x[i];
        if (i >= 1) acc += f.off1[i - 1] * x[i - 1];
        if (i + 1 < n) acc += f.off1[i] * x[i + 1];
        if (i >= 2) acc += f.off2[i - 2] * x[i - 2];
        if (i + 2 < n) acc += f.off2[i] * x[i + 2];
        y[i] = acc;
    }
}

GroundStateRecord direct_ground_state(const FockMatrix& f) {
    const int n = f.N + 1;
    const int kd = 2;
    std::vector<double> ab(static_cast<size_t>(3) * n, 0.0);  // lower band, col-major
    for (int j = 0; j < n; ++j) {
        ab[j * 3 + 0] = f.diag[j];
        if (j + 1 < n) ab[j * 3 + 1] = f.off1[j];
        if (j + 2 < n) ab[j * 3 + 2] = f.off2[j];
    }
    const int want = std::min(2, n);
    std::vector<double> q(static_cast<size_t>(n) * n), w(n),
        z(static_cast<size_t>(n) * want);
    std::vector<lapack_int> ifail(n);
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsbevx(
        LAPACK_COL_MAJOR, 'V', 'I', 'L', n, kd, ab.data(), 3, q.data(), n, 0.0, 0.0, 1, want,
        0.0, &found, w.data(), z.data(), n, ifail.data());
    if (info != 0 || found < want)
        throw std::runtime_error("fock_ground_state: banded eigensolver failed");
    GroundStateRecord r;
    r.energy = w[0];
    r.v.assign(z.begin(), z.begin() + n);
    r.degenerate = want == 2 && (w[1] - w[0]) <= 1e-12 * (1.0 + std::abs(w[0]));
    if (r.degenerate) {
        // one of the two returned vectors always carries a swap-symmetric part
        // of norm >= 1/2; start from that one
        auto sym_norm = [n](const double* zv) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) {
                const double t = zv[k] + zv[n - 1 - k];
                s += t * t;
            }
            return s;
        };
        if (sym_norm(z.data()) < sym_norm(z.data() + n))
            r.v.assign(z.begin() + n, z.begin() + 2 * n);
    }
    finalize_record(r, f.N);
    return r;
}

GroundStateRecord lanczos_ground_state(const FockMatrix& f) {
    const int n = f.N + 1;
    const int m_max = std::min(n, 500);
    const double tol = 1e-10;

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    std::vector<double> v(n, 0.0), hv(n), prev(n, 0.0);
    for (int k = 0; k <= f.N; ++k) {
        const double d = (2.0 * k - f.N) / std::sqrt(static_cast<double>(f.N));
        v[k] = std::exp(-0.5 * d * d);
    }
    {
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;
    }

    GroundStateRecord r;
    for (int it = 0; it < m_max; ++it) {
        basis.push_back(v);
        matvec(f, v, hv);
        double a = 0.0;
        for (int i = 0; i < n; ++i) a += v[i] * hv[i];
        alpha.push_back(a);
        for (int i = 0; i < n; ++i)
            hv[i] -= a * v[i] + (it > 0 ? beta[it - 1] * prev[i] : 0.0);
        // full reorthogonalization keeps the Krylov basis clean
        for (const auto& b : basis) {
            double c = 0.0;
            for (int i = 0; i < n; ++i) c += b[i] * hv[i];
            for (int i = 0; i < n; ++i) hv[i] -= c * b[i];
        }
        double bnorm = 0.0;
        for (double x : hv) bnorm += x * x;
        bnorm = std::sqrt(bnorm);

        const int m = it + 1;
        std::vector<double> td(alpha), te(beta), zz(static_cast<size_t>(m) * m);
        lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, td.data(), te.data(),
                                        zz.data(), m);
        if (info != 0) throw std::runtime_error("fock_ground_state: lanczos dstev failed");
        const double theta = td[0];
        const double resid = bnorm * std::abs(zz[m - 1]);
        if (resid <= tol * std::max(1.0, std::abs(theta)) || bnorm < 1e-14 || it == m_max - 1) {
            r.energy = theta;
            r.v.assign(n, 0.0);
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < n; ++i) r.v[i] += zz[j] * basis[j][i];
            double nrm = 0.0;
            for (double x : r.v) nrm += x * x;
            nrm = std::sqrt(nrm);
            for (double& x : r.v) x /= nrm;
            r.iterations = m;
            finalize_record(r, f.N);
            return r;
        }
        beta.push_back(bnorm);
        prev = basis.back();
        for (int i = 0; i < n; ++i) v[i] = hv[i] / bnorm;
    }
    throw std::runtime_error("fock_ground_state: lanczos failed to converge");
}

}  // namespace

GroundStateRecord fock_ground_state(const FockMatrix& f, bool force_iterative) {
    if (f.N < 1) throw std::invalid_argument("fock_ground_state: N must be >= 1");
    if (!force_iterative && f.N <= 2000) return direct_ground_state(f);
    return lanczos_ground_state(f);
}

GaussianTrial gaussian_trial_state(int N, double gap, SigmaRule rule, double sigma_override) {
    double sigma_sq = 0.0;
    switch (rule) {
        case SigmaRule::sqrt_gap_N:
            if (!(gap > 0.0))
                throw std::invalid_argument("gaussian_trial_state: gap must be > 0");
            sigma_sq = std::max(1.0, std::sqrt(gap) * N);
            break;
        case SigmaRule::sqrt_N:
            sigma_sq = std::max(1.0, std::sqrt(static_cast<double>(N)));
            break;
        case SigmaRule::fixed:
            sigma_sq = sigma_override;
            break;
    }
    if (sigma_sq < 1.0) throw std::invalid_argument("gaussian_trial_state: empty support");

    GaussianTrial t;
    t.sigma_sq = sigma_sq;
    int dmax = std::min(static_cast<int>(std::floor(sigma_sq)), N);
    if ((N - dmax) % 2 != 0) dmax -= 1;
    if (dmax < 0) throw std::invalid_argument("gaussian_trial_state: empty support");
    double nrm = 0.0;
    for (int d = -dmax; d <= dmax; d += 2) {
        t.d.push_back(d);
        const double c = std::exp(-d * d / (4.0 * sigma_sq));
        t.c.push_back(c);
        nrm += c * c;
    }
    nrm = std::sqrt(nrm);
    t.d_second_moment = 0.0;
    for (size_t i = 0; i < t.c.size(); ++i) {
        t.c[i] /= nrm;
        t.d_second_moment += t.d[i] * t.d[i] * t.c[i] * t.c[i];
    }
    return t;
}

double trial_energy(const FockMatrix& f, const GaussianTrial& trial) {
    std::vector<double> v(f.N + 1, 0.0);
    for (size_t i = 0; i < trial.d.size(); ++i) v[(f.N + trial.d[i]) / 2] = trial.c[i];
    std::vector<double> hv(f.N + 1);
    matvec(f, v, hv);
    double e = 0.0;
    for (int k = 0; k <= f.N; ++k) e += v[k] * hv[k];
    return e;
}

}  // namespace dw
