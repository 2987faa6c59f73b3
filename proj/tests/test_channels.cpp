#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "llbar/channels.hpp"
#include "llbar/errors.hpp"

using namespace llbar;

namespace {

DensityMatrix sample_state() { return density_from_xstate({0.2, 0.7, -0.3, 0.4}); }

}  // namespace

TEST_CASE("visibility reference values") {
    CHECK(decoherence_V(0.2, 0.0) == doctest::Approx(1.0));
    CHECK(decoherence_V(0.2, 1.0) == doctest::Approx(0.4844007086).epsilon(1e-9));
    CHECK(memory_factor_W(decoherence_V(0.2, 1.0), 0.8) == doctest::Approx(0.8469288093).epsilon(1e-9));
    // First zero of the oscillating branch.
    CHECK(std::abs(decoherence_V(5.0, 0.8114235)) < 1e-6);
    CHECK(decoherence_V(5.0, 0.80) > 0.0);
    CHECK(decoherence_V(5.0, 0.82) < 0.0);
}

TEST_CASE("critical limit is continuous") {
    const double t = 1.3;
    const double limit = std::exp(-2.0 * t) * (1.0 + 2.0 * t);
    CHECK(decoherence_V(0.25, t) == doctest::Approx(limit).epsilon(1e-12));
    CHECK(decoherence_V(0.25 * (1 + 1e-5), t) == doctest::Approx(limit).epsilon(1e-4));
    CHECK(decoherence_V(0.25 * (1 - 1e-5), t) == doctest::Approx(limit).epsilon(1e-4));
}

TEST_CASE("large arguments stay finite") {
    for (double tau : {0.001, 0.2, 5.0, 1e4})
        for (double t : {0.0, 10.0, 1e3, 1e6}) {
            const double v = decoherence_V(tau, t);
            CHECK(std::isfinite(v));
            CHECK(std::abs(v) <= 1.0 + 1e-15);
        }
}

TEST_CASE("regimes") {
    CHECK(ChannelConfig{0.2, 0.0}.regime() == Regime::Markovian);
    CHECK(ChannelConfig{0.25, 0.0}.regime() == Regime::Critical);
    CHECK(ChannelConfig{5.0, 0.0}.regime() == Regime::NonMarkovian);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(decoherence_V(0.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(decoherence_V(1.0, -1.0), ArgumentError);
    CHECK_THROWS_AS((ChannelConfig{1.0, 1.5}.validate()), ArgumentError);
    CHECK_THROWS_AS((ChannelConfig{-1.0, 0.5}.validate()), ArgumentError);
    CHECK_THROWS_AS(memory_factor_W(1.5, 0.2), ArgumentError);
    CHECK_THROWS_AS(evolve_closed_form(sample_state(), 1.2), ArgumentError);
    CHECK_THROWS_AS(kraus_map_correlated(sample_state(), 1.7, 0.5), ArgumentError);
}

TEST_CASE("memory factor limits") {
    CHECK(memory_factor_W(0.3, 1.0) == 1.0);
    CHECK(memory_factor_W(0.3, 0.0) == doctest::Approx(0.09));
    const auto f = decoherence_factors({0.2, 0.8}, 1.0);
    CHECK(f.p == doctest::Approx(0.5 * (1.0 - f.v)));
    CHECK(f.w == doctest::Approx(memory_factor_W(f.v, 0.8)));
}

TEST_CASE("correlated weights") {
    const auto w = correlated_weights({0.7, 0.0, 0.0, 0.3}, 0.4);
    double total = 0.0;
    for (const auto& row : w)
        for (double x : row) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[0][3] == doctest::Approx(0.6 * 0.21));
    CHECK(w[3][3] == doctest::Approx(0.6 * 0.09 + 0.4 * 0.3));
    const auto full = correlated_weights({0.7, 0.0, 0.0, 0.3}, 1.0);
    CHECK(full[0][3] == 0.0);
    CHECK(full[3][3] == doctest::Approx(0.3));
}

TEST_CASE("Kraus map equals the closed-form coherence factor") {
    const auto rho = sample_state();
    for (double tau : {0.05, 0.25, 5.0})
        for (double mu : {0.0, 0.37, 1.0})
            for (double t : {0.0, 0.9, 4.0}) {
                const auto f = decoherence_factors({tau, mu}, t);
                const auto a = kraus_map_correlated(rho, f.p, mu);
                const auto b = evolve_closed_form(rho, f.w);
                CHECK(max_abs_diff(a.matrix(), b.matrix()) < 1e-14);
            }
}

TEST_CASE("closed-form evolution touches only the coherences") {
    const auto rho = sample_state();
    const auto out = evolve_closed_form(rho, 0.5);
    for (std::size_t i = 0; i < 4; ++i) CHECK(out(i, i) == rho(i, i));
    CHECK(out(0, 3) == 0.5 * rho(0, 3));
    CHECK(out(1, 2) == 0.5 * rho(1, 2));
    CHECK(max_abs_diff(evolve_closed_form(rho, 1.0).matrix(), rho.matrix()) == 0.0);
}
