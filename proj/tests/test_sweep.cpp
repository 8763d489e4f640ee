#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bico/sweep.hpp"

#include <cmath>

using namespace bico;

namespace {

SweepSpec small_spec() {
    SweepSpec s = SweepSpec::defaults();
    s.g = -1;
    s.amplitudes = {0.02, 0.2};
    s.wavenumbers = {2.0, 5.0};
    s.grid.n_points = 512;
    s.solver.dtau = 0.05;
    s.solver.tau_max = 2000;
    return s;
}

}  // namespace

TEST_CASE("default axes") {
    const SweepSpec s = SweepSpec::defaults();
    REQUIRE(s.amplitudes.size() == 25);
    REQUIRE(s.wavenumbers.size() == 25);
    CHECK(s.amplitudes.front() == 0.01);
    CHECK(s.amplitudes.back() == 1.0);
    CHECK(s.amplitudes[12] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(s.wavenumbers[8] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("spec JSON round trip and validation") {
    SweepSpec s = small_spec();
    s.parity = Parity::Even;
    s.threshold.reference = ThresholdReference::AbsoluteValue;
    s.rng_seed = 17;
    const SweepSpec t = sweep_spec_from_json(to_json(s));
    CHECK(to_json(t) == to_json(s));
    CHECK(t.parity == Parity::Even);

    CHECK_THROWS(sweep_spec_from_json({{"amplitudes", {0.1, -0.2}}}));
    CHECK_THROWS(sweep_spec_from_json({{"grid", {{"n_points", 8}}}}));
    CHECK_THROWS(sweep_spec_from_json({{"threshold", {{"reference", "median"}}}}));
    // Missing keys fall back to the defaults.
    CHECK(sweep_spec_from_json(nlohmann::json::object()).amplitudes.size() == 25);
}

TEST_CASE("per-point seeds") {
    CHECK(point_seed(0.1, 0.2, 3) == point_seed(0.1, 0.2, 3));
    CHECK(point_seed(0.1, 0.2, 3) != point_seed(0.2, 0.1, 3));
    CHECK(point_seed(0.1, 0.2, 3) != point_seed(0.1, 0.2, 4));
}

TEST_CASE("a small map is identical for any worker count") {
    SweepSpec s = small_spec();
    s.solver.seed_kind = SeedKind::Random;
    std::size_t calls = 0;
    const MapTable one = run_sweep(s, 1, [&](std::size_t d, std::size_t n) {
        ++calls;
        CHECK(d <= n);
    });
    const MapTable two = run_sweep(s, 2);
    CHECK(calls == 4);
    REQUIRE(one.rows.size() == 4);
    REQUIRE(two.rows.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(one.rows[k].amplitude == two.rows[k].amplitude);
        CHECK(one.rows[k].alpha == two.rows[k].alpha);
        CHECK(one.rows[k].energy == two.rows[k].energy);
        CHECK(one.rows[k].kink_count == two.rows[k].kink_count);
        CHECK(one.rows[k].converged);
        // Attractive cross-interaction: a single kink everywhere.
        CHECK(one.rows[k].kink_count == 1);
    }
    CHECK(one.rows[0].amplitude == 0.02);
    CHECK(one.rows[0].alpha == 2.0 * kAlpha0);
}

TEST_CASE("failed points are recorded, not fatal") {
    SweepSpec s = small_spec();
    s.amplitudes = {0.2};
    s.wavenumbers = {5.0};
    s.solver.tau_max = 0.5;
    const MapTable t = run_sweep(s, 1);
    REQUIRE(t.rows.size() == 1);
    CHECK_FALSE(t.rows[0].converged);
    CHECK(std::isfinite(t.rows[0].energy));
}
