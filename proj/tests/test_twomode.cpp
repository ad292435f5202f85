#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dw/grid.hpp"
#include "dw/hartree.hpp"
#include "dw/kernel.hpp"
#include "dw/modes.hpp"
#include "dw/operators.hpp"
#include "dw/potential.hpp"
#include "dw/twomode.hpp"
#include "test_util.hpp"

using namespace dw;

namespace {

struct Pipeline {
    Grid g;
    std::vector<double> V;
    std::vector<double> w;
    ModeBasis basis;
};

Pipeline make_pipeline(double L, double lambda, int n = 1025) {
    PotentialSpec spec{2.0, L};
    double x_max = default_x_max(spec, 1.0);
    Pipeline p{build_grid(-x_max, x_max, n), {}, {}, {}};
    p.V = double_well_potential(p.g, spec);
    p.w = interaction_kernel(p.g, KernelSpec{"triangle", 1.0, 1.0});
    HartreeResult hartree = minimize_hartree(p.g, p.V, p.w, lambda);
    p.basis = mean_field_spectrum(p.g, p.V, p.w, hartree, 6);
    return p;
}

// Hopping-free couplings with the splitting pinned so that the rearranged
// form is an identity, not just an approximation.
TwoModeModel random_coupled_model(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> size(2, 40);
    TwoModeModel m;
    m.N = size(rng);
    m.lambda = 0.5 + 0.5 * unit(rng);
    m.h11 = unit(rng);
    m.h12 = unit(rng);
    m.w1111 = unit(rng);
    m.w1112 = unit(rng);
    m.w1212 = unit(rng);
    m.w1122 = unit(rng);
    m.gap = -2.0 * (m.h12 + m.lambda * (m.w1112 + m.w1122));
    return m;
}

double max_entry_scale(const FockMatrix& f) {
    double s = 0.0;
    for (int i = 0; i <= f.N; ++i)
        for (int j = i; j <= std::min(f.N, i + 2); ++j) s = std::max(s, std::abs(f.at(i, j)));
    return s;
}

double max_entry_diff(const FockMatrix& a, const FockMatrix& b) {
    double d = 0.0;
    for (int i = 0; i <= a.N; ++i)
        for (int j = i; j <= std::min(a.N, i + 2); ++j)
            d = std::max(d, std::abs(a.at(i, j) - b.at(i, j)));
    return d;
}

}  // namespace

TEST_CASE("interaction coefficients carry the pair-exchange symmetries") {
    Grid g = build_grid(-4.0, 4.0, 201);
    std::vector<double> w = interaction_kernel(g, KernelSpec{"triangle", 1.4, 1.0});
    auto rng = dwtest::make_rng(10);
    std::normal_distribution<double> dist;
    std::vector<std::vector<double>> u(4, std::vector<double>(g.n, 0.0));
    for (auto& f : u)
        for (int i = 1; i + 1 < g.n; ++i) f[i] = dist(rng) * std::exp(-0.2 * g.x[i] * g.x[i]);

    double base = interaction_coefficient(g, w, u[0], u[1], u[2], u[3]);
    // swapping the two factors at the same space point leaves the integral fixed
    CHECK(interaction_coefficient(g, w, u[2], u[1], u[0], u[3]) == base);
    CHECK(interaction_coefficient(g, w, u[0], u[3], u[2], u[1]) == base);
    // swapping the x against the y slot transposes the convolution
    CHECK(interaction_coefficient(g, w, u[1], u[0], u[3], u[2]) ==
          doctest::Approx(base).epsilon(1e-12));
    // squares against a pointwise nonnegative kernel
    CHECK(interaction_coefficient(g, w, u[0], u[1], u[0], u[1]) >= 0.0);
}

TEST_CASE("physical couplings obey the mirror and ordering relations") {
    Pipeline p = make_pipeline(3.0, 0.1);
    TwoModeModel m = build_two_mode_model(p.g, p.V, p.w, p.basis, 20, 0.1);
    CHECK(m.N == 20);
    CHECK(m.h11 == doctest::Approx(schrodinger_inner(p.g, p.V, p.basis.u1, p.basis.u1))
                       .epsilon(1e-14));
    // mirror well gives the same on-site data
    CHECK(interaction_coefficient(p.g, p.w, p.basis.u2, p.basis.u2, p.basis.u2, p.basis.u2) ==
          doctest::Approx(m.w1111).epsilon(1e-12));
    CHECK(schrodinger_inner(p.g, p.V, p.basis.u2, p.basis.u2) ==
          doctest::Approx(m.h11).epsilon(1e-12));
    CHECK(m.w1111 > 0.0);
    CHECK(m.w1212 > 0.0);
    CHECK(m.w1122 > 0.0);
    CHECK(m.w1111 > m.w1212);  // on-site beats cross-well overlap
    TwoModeConstants cst = two_mode_constants(m);
    CHECK(cst.U == doctest::Approx(0.25 * (m.w1111 - m.w1212)).epsilon(1e-14));
    CHECK(cst.U > 0.0);
    // the splitting matches the hopping matrix element it shadows
    CHECK(m.gap == doctest::Approx(-2.0 * (m.h12 + m.lambda * (m.w1112 + m.w1122)))
                       .epsilon(1e-6));
}

TEST_CASE("pencil-and-paper two-particle matrix") {
    TwoModeModel m;
    m.N = 2;
    m.lambda = 0.37;
    m.h11 = 0.83;
    m.h12 = -0.21;
    m.w1111 = 0.54;
    m.w1112 = -0.06;
    m.w1212 = 0.11;
    m.w1122 = 0.07;
    m.gap = 0.19;  // direct assembly never reads it

    FockMatrix f = assemble_two_mode_hamiltonian(m);
    double lam = m.lambda;
    double sq2 = std::sqrt(2.0);
    CHECK(f.at(0, 0) == doctest::Approx(2.0 * m.h11 + lam * m.w1111).epsilon(1e-14));
    CHECK(f.at(2, 2) == doctest::Approx(2.0 * m.h11 + lam * m.w1111).epsilon(1e-14));
    CHECK(f.at(1, 1) ==
          doctest::Approx(2.0 * m.h11 + lam * (m.w1212 + m.w1122)).epsilon(1e-14));
    CHECK(f.at(0, 1) == doctest::Approx(sq2 * (m.h12 + lam * m.w1112)).epsilon(1e-14));
    CHECK(f.at(1, 2) == doctest::Approx(sq2 * (m.h12 + lam * m.w1112)).epsilon(1e-14));
    CHECK(f.at(0, 2) == doctest::Approx(lam * m.w1122).epsilon(1e-14));
    CHECK(f.at(2, 0) == f.at(0, 2));
    CHECK(f.at(0, 3) == 0.0);
}

TEST_CASE("rearranged form reproduces the direct assembly") {
    auto rng = dwtest::make_rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        TwoModeModel m = random_coupled_model(rng);
        FockMatrix a = assemble_two_mode_hamiltonian(m);
        FockMatrix b = assemble_identity_form(m);
        double scale = std::max(max_entry_scale(a), 1e-300);
        CHECK(max_entry_diff(a, b) / scale <= 1e-12);
    }
}

TEST_CASE("rearranged form matches on a physical model") {
    Pipeline p = make_pipeline(3.0, 0.1);
    for (int N : {2, 7, 100}) {
        TwoModeModel m = build_two_mode_model(p.g, p.V, p.w, p.basis, N, 0.1);
        FockMatrix a = assemble_two_mode_hamiltonian(m);
        FockMatrix b = assemble_identity_form(m);
        // the splitting is an eigenvalue while the couplings are quadrature
        // integrals, so the residual is the eigensolver's, not roundoff
        CHECK(max_entry_diff(a, b) / max_entry_scale(a) <= 1e-10);
    }
}

TEST_CASE("hubbard comparison model strips everything but hop and on-site") {
    TwoModeModel m;
    m.N = 6;
    m.lambda = 0.0;
    m.h11 = 0.4;
    m.h12 = -0.15;
    m.gap = 0.3;
    m.h12 = -0.5 * m.gap;  // free case: hopping equals minus half the splitting

    FockMatrix direct = assemble_two_mode_hamiltonian(m);
    FockMatrix bh = assemble_bose_hubbard(m);
    for (int k = 0; k + 1 < m.N; ++k) CHECK(bh.off2[k] == 0.0);
    GroundStateRecord gd = fock_ground_state(direct);
    GroundStateRecord gb = fock_ground_state(bh);
    // same operator up to the one-body constant shift
    CHECK(gd.energy - gb.energy == doctest::Approx(m.N * m.h11).epsilon(1e-12));
    for (int k = 0; k <= m.N; ++k) CHECK(gd.v[k] == doctest::Approx(gb.v[k]).epsilon(1e-10));
}

TEST_CASE("free hopping ground state is binomial with variance N") {
    for (int N : {2, 5, 34}) {
        TwoModeModel m;
        m.N = N;
        m.lambda = 0.0;
        m.h11 = 0.9;
        m.h12 = -0.2;
        m.gap = 0.4;
        GroundStateRecord r = fock_ground_state(assemble_two_mode_hamiltonian(m));
        CHECK(std::abs(r.variance - N) <= 1e-10 * N);
        CHECK(std::abs(r.imbalance) <= 1e-10);
        CHECK_FALSE(r.degenerate);
        double lg_norm = -0.5 * N * std::log(2.0);
        for (int k = 0; k <= N; ++k) {
            double lg = 0.5 * (std::lgamma(N + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(N - k + 1.0)) + lg_norm;
            CHECK(r.v[k] == doctest::Approx(std::exp(lg)).epsilon(1e-9));
        }
    }
    // positive hopping only flips the sign pattern, not the distribution
    TwoModeModel m;
    m.N = 8;
    m.lambda = 0.0;
    m.h11 = 0.0;
    m.h12 = +0.3;
    m.gap = 0.1;
    GroundStateRecord r = fock_ground_state(assemble_two_mode_hamiltonian(m));
    CHECK(std::abs(r.variance - 8.0) <= 1e-10 * 8.0);
}

TEST_CASE("direct and iterative solvers agree on a physical matrix") {
    Pipeline p = make_pipeline(4.0, 0.1);
    TwoModeModel m = build_two_mode_model(p.g, p.V, p.w, p.basis, 300, 0.1);
    FockMatrix f = assemble_two_mode_hamiltonian(m);
    GroundStateRecord direct = fock_ground_state(f);
    GroundStateRecord lanczos = fock_ground_state(f, true);
    CHECK(direct.iterations == 0);
    CHECK(lanczos.iterations > 0);
    CHECK(lanczos.energy == doctest::Approx(direct.energy).epsilon(1e-11));
    CHECK(lanczos.variance == doctest::Approx(direct.variance).epsilon(1e-6));
    double overlap = 0.0;
    for (int k = 0; k <= f.N; ++k) overlap += direct.v[k] * lanczos.v[k];
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("exactly degenerate wells come back swap-symmetric") {
    FockMatrix f;
    f.N = 5;
    f.diag.resize(6);
    f.off1.assign(5, 0.0);
    f.off2.assign(4, 0.0);
    for (int k = 0; k <= 5; ++k) {
        double d = 2.0 * k - 5.0;
        f.diag[k] = 0.7 * d * d;
    }
    GroundStateRecord r = fock_ground_state(f);
    CHECK(r.degenerate);
    CHECK(r.energy == doctest::Approx(0.7).epsilon(1e-13));
    for (int k = 0; k <= 5; ++k) CHECK(r.v[k] == doctest::Approx(r.v[5 - k]).epsilon(1e-12));
    CHECK(r.variance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.imbalance) <= 1e-12);
}

TEST_CASE("gaussian trial weights match the closed form") {
    GaussianTrial t = gaussian_trial_state(4, 0.0, SigmaRule::fixed, 4.0);
    REQUIRE(t.d.size() == 5);
    CHECK(t.d.front() == -4);
    CHECK(t.d.back() == 4);
    double nrm_sq = 1.0 + 2.0 * std::exp(-0.5) + 2.0 * std::exp(-2.0);
    CHECK(t.c[2] == doctest::Approx(1.0 / std::sqrt(nrm_sq)).epsilon(1e-13));
    CHECK(t.d_second_moment ==
          doctest::Approx((8.0 * std::exp(-0.5) + 32.0 * std::exp(-2.0)) / nrm_sq)
              .epsilon(1e-13));
    double total = 0.0;
    for (double c : t.c) total += c * c;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

    // parity of the support follows the particle number
    GaussianTrial odd = gaussian_trial_state(5, 0.0, SigmaRule::fixed, 1.0);
    REQUIRE(odd.d.size() == 2);
    CHECK(odd.d[0] == -1);
    CHECK(odd.d[1] == 1);
    CHECK(odd.d_second_moment == doctest::Approx(1.0).epsilon(1e-14));

    GaussianTrial rule = gaussian_trial_state(16, 0.25, SigmaRule::sqrt_gap_N, 0.0);
    CHECK(rule.sigma_sq == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(gaussian_trial_state(16, 0.0, SigmaRule::sqrt_N, 0.0).sigma_sq ==
          doctest::Approx(4.0).epsilon(1e-14));

    CHECK_THROWS_WITH(gaussian_trial_state(4, 0.0, SigmaRule::fixed, 0.5),
                      doctest::Contains("empty support"));
    CHECK_THROWS_WITH(gaussian_trial_state(4, -1.0, SigmaRule::sqrt_gap_N, 0.0),
                      doctest::Contains("gap must be > 0"));
}

TEST_CASE("trial energy is the explicit quadratic form and bounds the ground") {
    Pipeline p = make_pipeline(4.0, 0.1);
    TwoModeModel m = build_two_mode_model(p.g, p.V, p.w, p.basis, 60, 0.1);
    FockMatrix f = assemble_two_mode_hamiltonian(m);
    GroundStateRecord ground = fock_ground_state(f);
    GaussianTrial t = gaussian_trial_state(60, m.gap, SigmaRule::sqrt_gap_N, 0.0);

    double e = trial_energy(f, t);
    long double acc = 0.0L;
    for (size_t i = 0; i < t.d.size(); ++i)
        for (size_t j = 0; j < t.d.size(); ++j) {
            int ki = (60 + t.d[i]) / 2, kj = (60 + t.d[j]) / 2;
            acc += static_cast<long double>(t.c[i]) * f.at(ki, kj) * t.c[j];
        }
    CHECK(e == doctest::Approx(static_cast<double>(acc)).epsilon(1e-12));
    CHECK(e >= ground.energy - 1e-12 * std::abs(ground.energy));
}

TEST_CASE("model construction rejects bad inputs") {
    Pipeline p = make_pipeline(3.0, 0.1, 513);
    CHECK_THROWS_WITH(build_two_mode_model(p.g, p.V, p.w, p.basis, 1, 0.1),
                      doctest::Contains("N must be >= 2"));
    CHECK_THROWS_WITH(build_two_mode_model(p.g, p.V, p.w, p.basis, 5, -0.1),
                      doctest::Contains("lambda must be >= 0"));
}
