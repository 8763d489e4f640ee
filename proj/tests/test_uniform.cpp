#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bico/uniform.hpp"

#include <cmath>
#include <random>

using namespace bico;
using doctest::Approx;

TEST_CASE("symmetric uniform state") {
    auto s = uniform_symmetric(1.0, 0.0, 0.2);
    CHECK(s.mu == Approx(0.4).epsilon(1e-14));
    CHECK(s.h_density == Approx(0.15).epsilon(1e-14));
    CHECK(s.phi1 * s.phi2 < 0);  // sgn(phi1 phi2) = -sgn(A)
    CHECK(s.phi1 * s.phi1 + s.phi2 * s.phi2 == Approx(1.0).epsilon(1e-12));

    s = uniform_symmetric(1.0, 1.0, 0.0);
    CHECK(s.mu == Approx(1.0));
    CHECK(s.h_density == Approx(0.5));
    CHECK(s.phi1 * s.phi2 > 0);  // A = 0: positive-product convention

    s = uniform_symmetric(2.0, 2.0 / 3, 1.0);
    CHECK(s.mu == Approx(7.0 / 6).epsilon(1e-14));
    CHECK(s.h_density == Approx(2.0 / 3).epsilon(1e-14));

    s = uniform_symmetric(1.0, 0.5, -0.4);
    CHECK(s.phi1 * s.phi2 > 0);
    CHECK(s.h_density == Approx(uniform_h_density(s.phi1, s.phi2, 0.5, -0.4)).epsilon(1e-14));
}

TEST_CASE("asymmetric uniform state") {
    auto r = uniform_asymmetric(1.0, 2.0, 0.1);
    REQUIRE(std::holds_alternative<UniformState>(r));
    auto s = std::get<UniformState>(r);
    CHECK(s.phi1 * s.phi1 == Approx(0.99749).epsilon(1e-5));
    CHECK(s.phi2 * s.phi2 == Approx(0.00251).epsilon(1e-3));
    CHECK(s.h_density == Approx(0.4975).epsilon(1e-14));
    CHECK(s.mu == 1.0);
    CHECK(s.phi1 * s.phi2 < 0);  // sgn = -sgn((g-1) A)
    CHECK(s.h_density == Approx(uniform_h_density(s.phi1, s.phi2, 2.0, 0.1)).epsilon(1e-13));

    r = uniform_asymmetric(1.0, 2.0, 1.5);
    REQUIRE(std::holds_alternative<AsymmetricAbsence>(r));
    CHECK(std::get<AsymmetricAbsence>(r) == AsymmetricAbsence::ExistenceFails);

    s = std::get<UniformState>(uniform_asymmetric(1.0, 2.0, 0.0));
    CHECK(s.phi1 * s.phi1 == Approx(1.0));
    CHECK(s.phi2 == 0.0);
    CHECK(s.h_density == Approx(0.5));

    CHECK(std::get<AsymmetricAbsence>(uniform_asymmetric(1.0, 1.0, 0.3)) ==
          AsymmetricAbsence::ExistenceFails);
    CHECK(std::get<AsymmetricAbsence>(uniform_asymmetric(1.0, 1.0, 0.0)) ==
          AsymmetricAbsence::DegenerateDecoupled);

    // g < 1 flips the sign locking.
    s = std::get<UniformState>(uniform_asymmetric(1.0, -1.0, 0.5));
    CHECK(s.phi1 * s.phi2 > 0);
}

TEST_CASE("uniform ground state selection") {
    auto s = uniform_ground_state(1.0, 2.0, 0.1);
    CHECK(s.label == UniformLabel::Asymmetric);
    CHECK(s.h_density == Approx(0.4975));
    CHECK(uniform_symmetric(1.0, 2.0, 0.1).h_density == Approx(0.70));

    CHECK(uniform_ground_state(1.0, 0.0, 0.1).label == UniformLabel::Symmetric);

    for (double A : {0.0, 0.1, 0.7, 2.0}) {
        s = uniform_ground_state(1.0, 1.0, A);
        CHECK(s.label == UniformLabel::Symmetric);
        CHECK(s.tie);
    }
    CHECK_FALSE(uniform_ground_state(1.0, 1.5, 0.1).tie);
}

TEST_CASE("brute-force oracle examples") {
    auto r = uniform_brute_force(1.0, 2.0, 0.1, 1000000);
    CHECK(std::abs(r.state.h_density - 0.4975) < 1e-6);
    CHECK(r.state.label == UniformLabel::Asymmetric);

    r = uniform_brute_force(1.0, 0.0, 0.2, 1000000);
    CHECK(std::abs(r.state.h_density - 0.15) < 1e-6);
    CHECK(r.state.label == UniformLabel::Symmetric);

    r = uniform_brute_force(1.0, 1.0, 0.0, 5000);
    CHECK(r.state.h_density == Approx(0.5).epsilon(1e-14));
    CHECK(r.flat);

    CHECK_THROWS_AS(uniform_brute_force(1.0, 0.0, 0.0, 999), std::invalid_argument);
}

TEST_CASE("closed forms agree with the oracle on random tuples") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dn(0.1, 5), dg(-2, 3), dA(0, 2);
    for (int k = 0; k < 200; ++k) {
        const double N = dn(rng), g = dg(rng), A = dA(rng);
        const UniformState s = uniform_ground_state(N, g, A);
        const BruteForceResult b = uniform_brute_force(N, g, A, 20000);
        INFO("N=" << N << " g=" << g << " A=" << A);
        CHECK(std::abs(s.h_density - b.state.h_density) < 1e-5);
        CHECK(s.phi1 * s.phi1 + s.phi2 * s.phi2 == Approx(N).epsilon(1e-12));
    }
}

TEST_CASE("label depends only on sgn(g-1) where the asymmetric state exists") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dn(0.1, 5), dg(-2, 3), frac(0, 0.999);
    for (int k = 0; k < 500; ++k) {
        const double N = dn(rng), g = dg(rng);
        if (g == 1) continue;
        const double A = frac(rng) * std::abs(g - 1) * N;
        const auto expected = g > 1 ? UniformLabel::Asymmetric : UniformLabel::Symmetric;
        CHECK(uniform_ground_state(N, g, A).label == expected);
    }
}

TEST_CASE("opposite sign locking costs energy") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dn(0.1, 5), dg(-2, 3), dA(-2, 2);
    for (int k = 0; k < 200; ++k) {
        const double N = dn(rng), g = dg(rng), A = dA(rng);
        if (A == 0) continue;
        const UniformState s = uniform_symmetric(N, g, A);
        CHECK(uniform_h_density(s.phi1, -s.phi2, g, A) > s.h_density);
    }
}
