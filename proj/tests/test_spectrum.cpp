#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dw/grid.hpp"
#include "dw/hartree.hpp"
#include "dw/kernel.hpp"
#include "dw/modes.hpp"
#include "dw/operators.hpp"
#include "dw/potential.hpp"

using namespace dw;

namespace {

struct Pipeline {
    Grid g;
    std::vector<double> V;
    std::vector<double> w;
    HartreeResult hartree;
    double lambda = 0.0;
};

Pipeline make_pipeline(double L, double lambda, int n = 1025) {
    PotentialSpec spec{2.0, L};
    double x_max = default_x_max(spec, 1.0);
    Pipeline p{build_grid(-x_max, x_max, n), {}, {}, {}, lambda};
    p.V = double_well_potential(p.g, spec);
    p.w = interaction_kernel(p.g, KernelSpec{"triangle", 1.0, 1.0});
    p.hartree = minimize_hartree(p.g, p.V, p.w, lambda);
    return p;
}

std::vector<double> effective_potential(const Pipeline& p) {
    std::vector<double> rho(p.g.n);
    for (int i = 0; i < p.g.n; ++i) rho[i] = p.hartree.u[i] * p.hartree.u[i];
    std::vector<double> conv = convolve_density(p.g, p.w, rho);
    std::vector<double> veff = p.V;
    for (int i = 0; i < p.g.n; ++i) veff[i] += p.lambda * conv[i];
    return veff;
}

}  // namespace

TEST_CASE("mode basis diagonalizes the mean-field operator") {
    Pipeline p = make_pipeline(6.0, 0.1);
    ModeBasis basis = mean_field_spectrum(p.g, p.V, p.w, p.hartree, 8);
    REQUIRE(basis.n_modes == 8);
    REQUIRE(basis.mu.size() == 8);
    CHECK_FALSE(basis.pairing_warning);

    std::vector<double> veff = effective_potential(p);
    for (int k = 0; k < 8; ++k) {
        if (k > 0) CHECK(basis.mu[k] >= basis.mu[k - 1]);
        std::vector<double> hu = apply_schrodinger(p.g, veff, basis.modes[k]);
        double res = 0.0;
        for (int i = 0; i < p.g.n; ++i) {
            double r = hu[i] - basis.mu[k] * basis.modes[k][i];
            res += p.g.weight(i) * r * r;
        }
        CHECK(std::sqrt(res) <= 1e-6);
        for (int j = 0; j <= k; ++j) {
            double expect = (j == k) ? 1.0 : 0.0;
            CHECK(inner(p.g, basis.modes[j], basis.modes[k]) ==
                  doctest::Approx(expect).epsilon(1e-11));
        }
    }
    // tunneling doublets alternate parity
    CHECK(basis.parity[0] == 1);
    CHECK(basis.parity[1] == -1);
    CHECK(basis.parity[2] == 1);
    CHECK(basis.parity[3] == -1);
}

TEST_CASE("localized combinations live in one well each") {
    Pipeline p = make_pipeline(6.0, 0.1);
    ModeBasis basis = mean_field_spectrum(p.g, p.V, p.w, p.hartree, 8);

    double sq = std::sqrt(0.5);
    for (int i = 0; i < p.g.n; ++i) {
        double expect = sq * (basis.modes[0][i] + basis.modes[1][i]);
        CHECK(basis.u1[i] == doctest::Approx(expect).epsilon(1e-14));
    }
    // left mode is the exact mirror of the right mode
    for (int i = 0; i < p.g.n; ++i) CHECK(basis.u2[i] == basis.u1[p.g.n - 1 - i]);

    CHECK(right_mass(p.g, basis.u1) > 0.95);
    CHECK(right_mass(p.g, basis.u2) < 0.05);
    CHECK(l2_norm(p.g, basis.u1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inner(p.g, basis.u1, basis.u2) == doctest::Approx(0.0).epsilon(1e-12));

    REQUIRE(basis.u_right.size() == 3);
    REQUIRE(basis.u_left.size() == 3);
    for (std::size_t a = 0; a < basis.u_right.size(); ++a) {
        CHECK(right_mass(p.g, basis.u_right[a]) > 0.75);
        for (int i = 0; i < p.g.n; ++i)
            CHECK(basis.u_left[a][i] == basis.u_right[a][p.g.n - 1 - i]);
        CHECK(l2_norm(p.g, basis.u_right[a]) == doctest::Approx(1.0).epsilon(1e-12));
        // localized pairs stay orthogonal to the condensate modes
        CHECK(inner(p.g, basis.u_right[a], basis.u1) == doctest::Approx(0.0).epsilon(1e-11));
        CHECK(inner(p.g, basis.u_right[a], basis.u2) == doctest::Approx(0.0).epsilon(1e-11));
    }
}

TEST_CASE("tunneling parameter evaluates the barrier action") {
    CHECK(tunneling_parameter(2.0, 6.0) == doctest::Approx(std::exp(-9.0)).epsilon(1e-13));
    CHECK(tunneling_parameter(2.0, 10.0) == doctest::Approx(std::exp(-25.0)).epsilon(1e-13));
    CHECK(tunneling_parameter(4.0, 4.0) ==
          doctest::Approx(std::exp(-(2.0 / 3.0) * 8.0)).epsilon(1e-13));
    // monotone decreasing in L, increasing in neither
    CHECK(tunneling_parameter(2.0, 8.0) < tunneling_parameter(2.0, 6.0));
}

TEST_CASE("gap report wires the doublet splitting to the tunneling scale") {
    Pipeline p = make_pipeline(6.0, 0.1);
    ModeBasis basis = mean_field_spectrum(p.g, p.V, p.w, p.hartree, 6);
    TunnelingReport rep = gap_report(basis, PotentialSpec{2.0, 6.0});
    CHECK(rep.mu_plus == basis.mu[0]);
    CHECK(rep.mu_minus == basis.mu[1]);
    CHECK(rep.gap == basis.mu[1] - basis.mu[0]);
    CHECK(rep.gap > 0.0);
    CHECK(rep.T == doctest::Approx(tunneling_parameter(2.0, 6.0)).epsilon(1e-13));
    CHECK(rep.gap_over_T == doctest::Approx(rep.gap / rep.T).epsilon(1e-14));
    CHECK(rep.excited_gap == doctest::Approx(basis.mu[2] - basis.mu[1]).epsilon(1e-14));
    // splitting within a doublet is tiny against the inter-doublet distance
    CHECK(rep.gap < 0.05 * rep.excited_gap);
}

TEST_CASE("doublet splitting tracks the tunneling parameter across widths") {
    double prev_ratio = 0.0;
    for (double L : {5.0, 6.0, 7.0}) {
        Pipeline p = make_pipeline(L, 0.0, 2049);
        ModeBasis basis = mean_field_spectrum(p.g, p.V, p.w, p.hartree, 4);
        TunnelingReport rep = gap_report(basis, PotentialSpec{2.0, L});
        double ratio = std::log(rep.gap) / std::log(rep.T);
        CHECK(ratio > 0.5);
        CHECK(ratio < 1.5);
        CHECK(ratio > prev_ratio);  // exponent approaches 1 from below
        prev_ratio = ratio;
    }
}

TEST_CASE("spectrum construction rejects bad inputs") {
    Pipeline p = make_pipeline(4.0, 0.1, 513);
    CHECK_THROWS_WITH(mean_field_spectrum(p.g, p.V, p.w, p.hartree, 5),
                      doctest::Contains("n_modes must be even and >= 4"));
    CHECK_THROWS_WITH(mean_field_spectrum(p.g, p.V, p.w, p.hartree, 2),
                      doctest::Contains("n_modes must be even and >= 4"));

    ModeBasis fake;
    fake.n_modes = 4;
    fake.mu = {1.0, 0.9, 2.0, 2.1};
    CHECK_THROWS_WITH(gap_report(fake, PotentialSpec{2.0, 4.0}),
                      doctest::Contains("nonpositive spectral gap"));
}
