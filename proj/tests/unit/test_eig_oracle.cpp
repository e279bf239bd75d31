#include <doctest.h>

#include <cmath>
#include <random>

#include "cknlab/eig_oracle.hpp"
#include "cknlab/errors.hpp"
#include "cknlab/spectrum.hpp"
#include "support/sampling.hpp"

using namespace cknlab;
using cknlab::testing::rel_err;
using cknlab::testing::sample_valid;

TEST_CASE("mode-0 eigenvalues at (4, 0, 1/2) on the reference grid") {
    const CknParams P = make_params(4, 0.0, 0.5);
    const std::vector<double> l = generalized_eigenvalues(P, 0, 3, GridSpec{120.0, 6000});
    REQUIRE(l.size() == 3);
    CHECK(rel_err(l[0], 1.0 / P.p) < 1e-6);
    CHECK(rel_err(l[1], 1.0) < 1e-6);
    CHECK(rel_err(l[2], (3 * P.p - 1) / (P.p + 1)) < 1e-6);
}

TEST_CASE("lambda_10 approaches 1 next to the Felli-Schneider curve") {
    const double a = -0.5;
    const CknParams P = make_params(4, a, felli_schneider(4, a) + 1e-6);
    const std::vector<double> l = generalized_eigenvalues(P, 1, 1, default_oracle_grid(P, 1));
    CHECK(std::abs(l[0] - 1.0) < 1e-4);
}

TEST_CASE("grid refinement changes eigenvalues by < 1e-8") {
    const CknParams P = make_params(4, 0.0, 0.3);
    for (int i = 0; i <= 1; ++i) {
        GridSpec g = default_oracle_grid(P, i);
        const std::vector<double> coarse = generalized_eigenvalues(P, i, 3, g);
        g.M = 2 * g.M - 1;
        const std::vector<double> fine = generalized_eigenvalues(P, i, 3, g);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(fine[k] - coarse[k]) < 1e-8 * fine[k]);
    }
}

TEST_CASE("numeric eigenvalues match the closed form on random points") {
    std::mt19937_64 rng(101);
    for (int k = 0; k < 4; ++k) {
        const CknParams P = sample_valid(rng, 3 + k % 3);
        for (int i = 0; i <= 2; ++i) {
            const std::vector<double> l = generalized_eigenvalues(P, i, 3, default_oracle_grid(P, i));
            for (int j = 0; j <= 2; ++j) CHECK(rel_err(l[j], eigenvalue_closed(P, i, j).lambda) < 1e-6);
        }
    }
}

TEST_CASE("Sturm counts step by one across each closed-form eigenvalue") {
    std::mt19937_64 rng(103);
    for (int k = 0; k < 5; ++k) {
        const CknParams P = sample_valid(rng, 2 + k);
        for (int i = 0; i <= 2; ++i) {
            const GridSpec g = default_oracle_grid(P, i);
            for (int j = 0; j <= 2; ++j) {
                const double lam = eigenvalue_closed(P, i, j).lambda;
                const long below = sturm_count(P, i, g, lam - 1e-4);
                const long above = sturm_count(P, i, g, lam + 1e-4);
                CHECK(above - below == 1);
                CHECK(below == j);
            }
        }
    }
}

TEST_CASE("Rayleigh minimization over M-perp recovers the gap and its minimizer") {
    SUBCASE("CaseII, mode 0") {
        const CknParams P = make_params(4, 0.0, 0.5);
        const RayleighGapReport r = rayleigh_gap_check(P, default_rayleigh_grid(P));
        CHECK(std::abs(r.minimum - 1.0 / 3.0) < 1e-3);
        CHECK(r.mode == 0);
        CHECK(r.cosine > 0.999);
        CHECK(r.minimum >= spectral_gap(P).lambda_star - 1e-3);
    }
    SUBCASE("Remaining, mode 1") {
        const CknParams P = make_params(4, 0.0, 0.3);
        const RayleighGapReport r = rayleigh_gap_check(P, default_rayleigh_grid(P));
        CHECK(std::abs(r.minimum - 53.0 / 143.0) < 1e-3);
        CHECK(r.mode == 1);
        CHECK(r.cosine > 0.999);
        REQUIRE(r.mode_minima.size() == 3);
        CHECK(r.mode_minima[2] > r.mode_minima[1]);
    }
}

TEST_CASE("grid validation") {
    const CknParams P = make_params(4, 0.0, 0.5);
    CHECK_THROWS_AS(validate_oracle_grid(P, GridSpec{-1.0, 100}), DomainError);
    CHECK_THROWS_AS(validate_oracle_grid(P, GridSpec{10.0, 2}), DomainError);
    CHECK_NOTHROW(validate_oracle_grid(P, default_oracle_grid(P, 0)));
}
