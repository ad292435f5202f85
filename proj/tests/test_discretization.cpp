#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dw/grid.hpp"
#include "dw/kernel.hpp"
#include "dw/operators.hpp"
#include "dw/potential.hpp"
#include "test_util.hpp"

using namespace dw;

namespace {

std::vector<double> random_interior(const Grid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    std::vector<double> u(g.n, 0.0);
    for (int i = 1; i + 1 < g.n; ++i) u[i] = dist(rng);
    return u;
}

}  // namespace

TEST_CASE("grid points are exactly symmetric") {
    Grid g = build_grid(-7.5, 7.5, 257);
    CHECK(g.n == 257);
    CHECK(g.x.size() == 257);
    CHECK(g.x[g.center()] == 0.0);
    for (int i = 0; i < g.n; ++i) CHECK(g.x[i] == -g.x[g.n - 1 - i]);
    CHECK(g.x.front() == -7.5);
    CHECK(g.x.back() == 7.5);
    CHECK(g.h == doctest::Approx(15.0 / 256).epsilon(1e-15));
    CHECK(g.weight(0) == 0.5 * g.h);
    CHECK(g.weight(g.n - 1) == 0.5 * g.h);
    CHECK(g.weight(1) == g.h);
}

TEST_CASE("grid construction rejects bad domains") {
    CHECK_THROWS_WITH(build_grid(-1.0, 2.0, 11), doctest::Contains("asymmetric domain"));
    CHECK_THROWS_WITH(build_grid(0.0, 0.0, 11), doctest::Contains("asymmetric domain"));
    CHECK_THROWS_WITH(build_grid(-1.0, 1.0, 2), doctest::Contains("degenerate grid"));
    CHECK_THROWS_WITH(build_grid(-1.0, 1.0, 10), doctest::Contains("n must be odd"));
}

TEST_CASE("trapezoid quadrature is exact for affine integrands") {
    Grid g = build_grid(-3.0, 3.0, 61);
    std::vector<double> one(g.n, 1.0), lin(g.n);
    for (int i = 0; i < g.n; ++i) lin[i] = 2.0 + 0.5 * g.x[i];
    CHECK(integrate(g, one) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(integrate(g, lin) == doctest::Approx(12.0).epsilon(1e-14));

    auto rng = dwtest::make_rng(1);
    std::vector<double> f = random_interior(g, rng), v = random_interior(g, rng);
    CHECK(inner(g, f, v) == doctest::Approx(inner(g, v, f)).epsilon(1e-14));
    CHECK(l2_norm(g, f) == doctest::Approx(std::sqrt(inner(g, f, f))).epsilon(1e-14));
}

TEST_CASE("right_mass splits the center point evenly") {
    Grid g = build_grid(-2.0, 2.0, 41);
    std::vector<double> even(g.n);
    for (int i = 0; i < g.n; ++i) even[i] = std::exp(-g.x[i] * g.x[i]);
    // even mode: exactly half its squared mass sits on each side
    CHECK(right_mass(g, even) == doctest::Approx(0.5 * inner(g, even, even)).epsilon(1e-14));

    std::vector<double> r = reflect(g, even);
    for (int i = 0; i < g.n; ++i) CHECK(r[i] == even[g.n - 1 - i]);
}

TEST_CASE("double-well potential glues the two power wells at zero") {
    PotentialSpec spec{2.0, 6.0};
    Grid g = build_grid(-11.0, 11.0, 441);
    std::vector<double> V = double_well_potential(g, spec);
    int c = g.center();
    CHECK(V[c] == doctest::Approx(9.0).epsilon(1e-13));  // (L/2)^2 at the hump
    for (int i = 0; i < g.n; ++i) {
        double expect = std::min(std::pow(std::abs(g.x[i] - 3.0), 2.0),
                                 std::pow(std::abs(g.x[i] + 3.0), 2.0));
        CHECK(V[i] == doctest::Approx(expect).epsilon(1e-12));
        CHECK(V[i] == V[g.n - 1 - i]);  // even by grid symmetry
        CHECK(V[i] >= 0.0);
    }
    // wells are exact zeros when +-L/2 lies on the grid
    double vmin = *std::min_element(V.begin(), V.end());
    CHECK(vmin == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_WITH(validate(PotentialSpec{1.5, 4.0}), doctest::Contains("s must be >= 2"));
    CHECK_THROWS_WITH(validate(PotentialSpec{2.0, -1.0}), doctest::Contains("L must be >= 0"));
    CHECK(default_x_max(spec, 1.0) > 0.5 * spec.L + 1.0);
}

TEST_CASE("triangle kernel samples the hat profile and passes positivity") {
    Grid g = build_grid(-6.0, 6.0, 301);
    KernelSpec spec{"triangle", 2.5, 1.2};  // kinks land on grid nodes (h = 0.04)
    std::vector<double> w = interaction_kernel(g, spec);
    int c = g.center();
    CHECK(w[c] == doctest::Approx(2.5).epsilon(1e-14));
    for (int i = 0; i < g.n; ++i) {
        double expect = 2.5 * std::max(0.0, 1.0 - std::abs(g.x[i]) / 1.2);
        CHECK(w[i] == doctest::Approx(expect).epsilon(1e-13));
        CHECK(w[i] == w[g.n - 1 - i]);
    }
    // trapezoid is exact on a piecewise-linear hat: integral = amplitude * range
    CHECK(integrate(g, w) == doctest::Approx(2.5 * 1.2).epsilon(1e-12));

    CHECK_THROWS_WITH(interaction_kernel(g, KernelSpec{"box", 1.0, 1.0}),
                      doctest::Contains("unknown kernel family"));
    CHECK_THROWS_WITH(interaction_kernel(g, KernelSpec{"triangle", -1.0, 1.0}),
                      doctest::Contains("amplitude must be > 0"));
    CHECK_THROWS_WITH(interaction_kernel(g, KernelSpec{"triangle", 1.0, 0.0}),
                      doctest::Contains("range must be > 0"));
    CHECK_THROWS_WITH(interaction_kernel(g, KernelSpec{"triangle", 1.0, 7.0}),
                      doctest::Contains("support must fit inside the domain"));
}

TEST_CASE("convolution matches the direct quadrature sum") {
    Grid g = build_grid(-5.0, 5.0, 201);
    KernelSpec spec{"triangle", 1.3, 0.9};
    std::vector<double> w = interaction_kernel(g, spec);
    auto rng = dwtest::make_rng(2);
    std::vector<double> rho = random_interior(g, rng);

    std::vector<double> conv = convolve_density(g, w, rho);
    int c = g.center();
    for (int i = 0; i < g.n; ++i) {
        long double acc = 0.0L;
        for (int j = 0; j < g.n; ++j) {
            int off = c + (i - j);
            if (off < 0 || off >= g.n) continue;
            acc += static_cast<long double>(g.weight(j)) * w[off] * rho[j];
        }
        CHECK(conv[i] == doctest::Approx(static_cast<double>(acc)).epsilon(1e-12));
    }
}

TEST_CASE("convolution is exactly translation invariant in the interior") {
    Grid g = build_grid(-8.0, 8.0, 257);
    std::vector<double> w = interaction_kernel(g, KernelSpec{"triangle", 1.0, 1.0});
    std::vector<double> rho(g.n, 0.0);
    int c = g.center();
    for (int t = -10; t <= 10; ++t) rho[c + t] = std::exp(-0.1 * t * t);

    std::vector<double> shifted(g.n, 0.0);
    int m = 17;
    for (int i = 0; i + m < g.n; ++i) shifted[i + m] = rho[i];

    std::vector<double> a = convolve_density(g, w, rho);
    std::vector<double> b = convolve_density(g, w, shifted);
    // both stencils stay away from the walls, so the sums agree term by term
    for (int i = 40; i + 40 + m < g.n; ++i) CHECK(b[i + m] == a[i]);
}

TEST_CASE("convolving the unit density reproduces the kernel mass") {
    Grid g = build_grid(-4.0, 4.0, 161);
    std::vector<double> w = interaction_kernel(g, KernelSpec{"triangle", 2.0, 1.0});
    std::vector<double> one(g.n, 1.0);
    std::vector<double> conv = convolve_density(g, w, one);
    double mass = integrate(g, w);
    for (int i = 0; i < g.n; ++i) {
        if (std::abs(g.x[i]) > 4.0 - 1.1) continue;  // wall-truncated stencils differ
        CHECK(conv[i] == doctest::Approx(mass).epsilon(1e-12));
    }
    CHECK_THROWS_WITH(convolve_density(g, w, std::vector<double>(7, 1.0)),
                      doctest::Contains("fields not sampled on this grid"));
}

TEST_CASE("schrodinger apply matches the central-difference stencil") {
    Grid g = build_grid(-3.0, 3.0, 121);
    auto rng = dwtest::make_rng(3);
    std::vector<double> V(g.n);
    for (double& v : V) v = std::abs(std::normal_distribution<double>()(rng));
    std::vector<double> u = random_interior(g, rng);

    std::vector<double> out = apply_schrodinger(g, V, u);
    double inv_h2 = 1.0 / (g.h * g.h);
    CHECK(out[0] == 0.0);
    CHECK(out[g.n - 1] == 0.0);
    for (int i = 1; i + 1 < g.n; ++i) {
        double expect = inv_h2 * (2.0 * u[i] - u[i - 1] - u[i + 1]) + V[i] * u[i];
        CHECK(out[i] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("summation by parts agrees with the stencil quadratic form") {
    Grid g = build_grid(-3.0, 3.0, 201);
    auto rng = dwtest::make_rng(4);
    std::vector<double> V(g.n);
    for (double& v : V) v = 0.5 + std::abs(std::normal_distribution<double>()(rng));
    std::vector<double> u = random_interior(g, rng), v = random_interior(g, rng);

    double sbp = schrodinger_inner(g, V, u, v);
    double stencil = inner(g, u, apply_schrodinger(g, V, v));
    CHECK(sbp == doctest::Approx(stencil).epsilon(1e-11));
    CHECK(schrodinger_inner(g, V, v, u) == doctest::Approx(sbp).epsilon(1e-14));
    double rq = rayleigh_quotient(g, V, u);
    CHECK(rq == doctest::Approx(schrodinger_inner(g, V, u, u) / inner(g, u, u)).epsilon(1e-13));
}

TEST_CASE("shifted solve inverts the resolvent") {
    Grid g = build_grid(-5.0, 5.0, 301);
    auto rng = dwtest::make_rng(5);
    std::vector<double> V(g.n);
    for (int i = 0; i < g.n; ++i) V[i] = g.x[i] * g.x[i];

    for (double alpha : {1e-3, 1.0, 250.0}) {
        std::vector<double> rhs = random_interior(g, rng);
        std::vector<double> u = shifted_solve(g, V, alpha, rhs);
        CHECK(u[0] == 0.0);
        CHECK(u[g.n - 1] == 0.0);
        std::vector<double> hu = apply_schrodinger(g, V, u);
        double num = 0.0, den = 0.0;
        for (int i = 1; i + 1 < g.n; ++i) {
            double r = hu[i] + alpha * u[i] - rhs[i];
            num += r * r;
            den += rhs[i] * rhs[i];
        }
        CHECK(std::sqrt(num / den) <= 1e-10);
    }
}

TEST_CASE("spectrum of the particle in a box matches the lattice dispersion") {
    Grid g = build_grid(-5.0, 5.0, 101);
    std::vector<double> V(g.n, 0.0);
    auto pairs = symmetric_spectrum(g, V, 6);
    REQUIRE(pairs.size() == 6);
    double inv_h2 = 1.0 / (g.h * g.h);
    for (int k = 0; k < 6; ++k) {
        double exact = 2.0 * inv_h2 * (1.0 - std::cos((k + 1) * M_PI / (g.n - 1)));
        CHECK(pairs[k].value == doctest::Approx(exact).epsilon(1e-11));
        CHECK(pairs[k].parity == (k % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("spectrum of the harmonic well matches odd integers") {
    Grid g = build_grid(-10.0, 10.0, 2001);
    std::vector<double> V(g.n);
    for (int i = 0; i < g.n; ++i) V[i] = g.x[i] * g.x[i];
    auto pairs = symmetric_spectrum(g, V, 6);
    for (int k = 0; k < 6; ++k) {
        CHECK(pairs[k].value == doctest::Approx(2.0 * k + 1.0).epsilon(1e-3));
        CHECK(pairs[k].parity == (k % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("eigenpairs are orthonormal and satisfy the eigenvalue equation") {
    Grid g = build_grid(-9.0, 9.0, 601);
    std::vector<double> V = double_well_potential(g, PotentialSpec{2.0, 4.0});
    auto pairs = symmetric_spectrum(g, V, 8);
    REQUIRE(pairs.size() == 8);
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            double expect = (a == b) ? 1.0 : 0.0;
            CHECK(inner(g, pairs[a].vec, pairs[b].vec) ==
                  doctest::Approx(expect).epsilon(1e-12));
        }
        std::vector<double> hu = apply_schrodinger(g, V, pairs[a].vec);
        double res = 0.0;
        for (int i = 0; i < g.n; ++i) {
            double r = hu[i] - pairs[a].value * pairs[a].vec[i];
            res += g.weight(i) * r * r;
        }
        CHECK(std::sqrt(res) <= 1e-6);
        CHECK(pairs[a].vec[0] == 0.0);
        CHECK(pairs[a].vec[g.n - 1] == 0.0);
    }
    // tunneling doublet: ground pair nearly degenerate, next pair well above
    CHECK(pairs[1].value - pairs[0].value < 0.1 * (pairs[2].value - pairs[1].value));
    CHECK(pairs[1].value > pairs[0].value);
}

TEST_CASE("spectrum rejects impossible mode counts") {
    Grid g = build_grid(-1.0, 1.0, 11);
    std::vector<double> V(g.n, 0.0);
    CHECK_THROWS_WITH(symmetric_spectrum(g, V, 0), doctest::Contains("k must be >= 1"));
    CHECK_THROWS_WITH(symmetric_spectrum(g, V, 50),
                      doctest::Contains("grid too small for requested mode count"));
}
