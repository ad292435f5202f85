#include "dw/operators.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace dw {

std::vector<double> apply_schrodinger(const Grid& g, const std::vector<double>& V,
                                      const std::vector<double>& u) {
    const double inv_h2 = 1.0 / (g.h * g.h);
    std::vector<double> y(g.n, 0.0);
    for (int i = 1; i < g.n - 1; ++i)
        y[i] = (2.0 * u[i] - u[i - 1] - u[i + 1]) * inv_h2 + V[i] * u[i];
    return y;
}

double schrodinger_inner(const Grid& g, const std::vector<double>& V,
                         const std::vector<double>& u, const std::vector<double>& v) {
    // Summation-by-parts form of the Dirichlet matrix quadratic form; the
    // neighbor differences avoid the eps*4/h^2 cancellation of the stencil.
    long double kin = 0.0L, pot = 0.0L;
    for (int i = 0; i < g.n - 1; ++i)
        kin += (static_cast<long double>(u[i + 1]) - u[i]) *
               (static_cast<long double>(v[i + 1]) - v[i]);
    for (int i = 1; i < g.n - 1; ++i)
        pot += static_cast<long double>(V[i]) * u[i] * v[i];
    const long double h = g.h;
    return static_cast<double>(kin / h + pot * h);
}

double rayleigh_quotient(const Grid& g, const std::vector<double>& V,
                         const std::vector<double>& u) {
    long double nrm = 0.0L;
    for (int i = 1; i < g.n - 1; ++i) nrm += static_cast<long double>(u[i]) * u[i];
    nrm *= g.h;
    return schrodinger_inner(g, V, u, u) / static_cast<double>(nrm);
}

std::vector<double> shifted_solve(const Grid& g, const std::vector<double>& V, double alpha,
                                  const std::vector<double>& rhs) {
    const int m = g.n - 2;
    const double inv_h2 = 1.0 / (g.h * g.h);
    std::vector<double> c(m), d(m), out(g.n, 0.0);
    // Thomas sweep; diagonally dominant, no pivoting needed.
    double diag0 = alpha + 2.0 * inv_h2 + V[1];
    c[0] = -inv_h2 / diag0;
    d[0] = rhs[1] / diag0;
    for (int t = 1; t < m; ++t) {
        const double diag = alpha + 2.0 * inv_h2 + V[1 + t] + inv_h2 * c[t - 1];
        c[t] = -inv_h2 / diag;
        d[t] = (rhs[1 + t] + inv_h2 * d[t - 1]) / diag;
    }
    out[m] = d[m - 1];
    for (int t = m - 2; t >= 0; --t) out[1 + t] = d[t] - c[t] * out[t + 2];
    return out;
}

namespace {

struct HalfProblem {
    std::vector<double> diag, off;  // symmetric tridiagonal
};

// One step of shifted inverse iteration on a tridiagonal; pivoted solve via
// dgtsv. Near-singularity is the point; a zero pivot just skips the polish.
bool polish(const HalfProblem& hp, double mu, std::vector<double>& v) {
    const int m = static_cast<int>(hp.diag.size());
    std::vector<double> dl(hp.off), d(m), du(hp.off), rhs(v);
    for (int i = 0; i < m; ++i) d[i] = hp.diag[i] - mu;
    const lapack_int info =
        LAPACKE_dgtsv(LAPACK_COL_MAJOR, m, 1, dl.data(), d.data(), du.data(), rhs.data(), m);
    if (info != 0) return false;
    double nrm = 0.0;
    for (double z : rhs) nrm += z * z;
    if (!(nrm > 0.0) || !std::isfinite(nrm)) return false;
    nrm = std::sqrt(nrm);
    for (int i = 0; i < m; ++i) v[i] = rhs[i] / nrm;
    return true;
}

std::vector<std::pair<double, std::vector<double>>> lowest_pairs(const HalfProblem& hp, int k) {
    const int m = static_cast<int>(hp.diag.size());
    std::vector<double> d(hp.diag), e(hp.off), w(m);
    std::vector<double> z(static_cast<size_t>(m) * k);
    std::vector<lapack_int> isuppz(2 * static_cast<size_t>(std::max(1, k)));
    lapack_int found = 0;
    const lapack_int info =
        LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', m, d.data(), e.data(), 0.0, 0.0, 1, k, 0.0,
                       &found, w.data(), z.data(), m, isuppz.data());
    if (info != 0 || found < k)
        throw std::runtime_error("symmetric_spectrum: tridiagonal eigensolver failed");
    std::vector<std::pair<double, std::vector<double>>> out(k);
    for (int j = 0; j < k; ++j) {
        out[j].first = w[j];
        out[j].second.assign(z.begin() + static_cast<size_t>(j) * m,
                             z.begin() + static_cast<size_t>(j + 1) * m);
        polish(hp, w[j], out[j].second);
    }
    return out;
}

}  // namespace

std::vector<EigenPair> symmetric_spectrum(const Grid& g, const std::vector<double>& V, int k) {
    if (k < 1) throw std::invalid_argument("symmetric_spectrum: k must be >= 1");
    const int c = g.center();
    const double inv_h2 = 1.0 / (g.h * g.h);
    const double inv_sqrt_h = 1.0 / std::sqrt(g.h);

    // Even half: unknowns at i = c..n-2 with the doubled-neighbor stencil at
    // the center symmetrized by scaling the off-center variables by sqrt(2).
    HalfProblem even;
    const int me = g.n - 1 - c;
    even.diag.resize(me);
    even.off.assign(me - 1, -inv_h2);
    for (int t = 0; t < me; ++t) even.diag[t] = 2.0 * inv_h2 + V[c + t];
    even.off[0] = -std::sqrt(2.0) * inv_h2;

    // Odd half: u(0) = 0, plain Dirichlet tridiagonal on i = c+1..n-2.
    HalfProblem odd;
    const int mo = g.n - 2 - c;
    odd.diag.resize(mo);
    odd.off.assign(mo - 1, -inv_h2);
    for (int t = 0; t < mo; ++t) odd.diag[t] = 2.0 * inv_h2 + V[c + 1 + t];

    const int k_each = std::min({k / 2 + 2, me, mo});
    auto ev = lowest_pairs(even, k_each);
    auto od = lowest_pairs(odd, k_each);

    const double inv_sqrt_2h = 1.0 / std::sqrt(2.0 * g.h);
    std::vector<EigenPair> all;
    all.reserve(2 * k_each);
    for (auto& [val, v] : ev) {
        EigenPair p;
        p.parity = +1;
        p.vec.assign(g.n, 0.0);
        p.vec[c] = v[0] * inv_sqrt_h;
        for (int t = 1; t < me; ++t) {
            p.vec[c + t] = v[t] * inv_sqrt_2h;
            p.vec[c - t] = p.vec[c + t];
        }
        p.value = rayleigh_quotient(g, V, p.vec);
        all.push_back(std::move(p));
    }
    for (auto& [val, v] : od) {
        EigenPair p;
        p.parity = -1;
        p.vec.assign(g.n, 0.0);
        for (int t = 1; t <= mo; ++t) {
            p.vec[c + t] = v[t - 1] * inv_sqrt_2h;
            p.vec[c - t] = -p.vec[c + t];
        }
        p.value = rayleigh_quotient(g, V, p.vec);
        all.push_back(std::move(p));
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
    if (static_cast<int>(all.size()) < k)
        throw std::runtime_error("symmetric_spectrum: grid too small for requested mode count");
    all.resize(k);
    return all;
}

}  // namespace dw
