#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "llbar/errors.hpp"
#include "llbar/oracles.hpp"

using namespace llbar;
using namespace llbar::oracles;

namespace {

DensityMatrix werner(double p) { return density_from_xstate({0.0, -p, -p, -p}); }

DensityMatrix product_up() {
    ComplexMatrix m(4, 4);
    m(0, 0) = 1.0;
    return DensityMatrix::from_matrix(m);
}

}  // namespace

TEST_CASE("measurement directions must be unit vectors") {
    CHECK_THROWS_AS(MeasurementDirection({1.0, 1.0, 0.0}), ArgumentError);
    const auto z = MeasurementDirection::from_angles(0.0, 0.0);
    CHECK(z.vector()[2] == doctest::Approx(1.0));
    CHECK(max_abs_diff(z.observable(), pauli(3)) < 1e-15);
}

TEST_CASE("singlet correlations") {
    const auto rho = werner(1.0);
    const auto z = MeasurementDirection::from_angles(0.0, 0.0);
    const auto x = MeasurementDirection::from_angles(std::numbers::pi / 2.0, 0.0);
    CHECK(correlation(rho, z, z) == doctest::Approx(-1.0));
    CHECK(correlation(rho, z, x) == doctest::Approx(0.0));
}

TEST_CASE("CHSH search") {
    CHECK(chsh_bruteforce(werner(1.0)) == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-9));
    CHECK(chsh_bruteforce(werner(0.5)) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-9));
    CHECK(chsh_bruteforce(product_up()) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(chsh_bruteforce(werner(0.8), 8, 1) == chsh_bruteforce(werner(0.8), 8, 1));
    CHECK_THROWS_AS(chsh_bruteforce(werner(1.0), 4), ArgumentError);
}

TEST_CASE("discord search") {
    CHECK(discord_bruteforce(werner(0.75)) == doctest::Approx(0.550172).epsilon(2e-6));
    CHECK(discord_bruteforce(werner(1.0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(discord_bruteforce(product_up()) == doctest::Approx(0.0).epsilon(1e-9));
    const auto asym = density_from_xstate({0.2, 0.6, -0.1, 0.3});
    CHECK(discord_bruteforce(asym, 64, Subsystem::A) ==
          doctest::Approx(discord_bruteforce(asym, 64, Subsystem::B)).epsilon(1e-9));
    CHECK_THROWS_AS(discord_bruteforce(werner(1.0), 16), ArgumentError);
}

TEST_CASE("conditional entropy after measurement") {
    const auto z = MeasurementDirection::from_angles(0.0, 0.0);
    CHECK(conditional_entropy(product_up(), z, Subsystem::A) == doctest::Approx(0.0));
    CHECK(conditional_entropy(werner(1.0), z, Subsystem::A) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(conditional_entropy(werner(0.0), z, Subsystem::B) == doctest::Approx(1.0));
}

TEST_CASE("steering search") {
    CHECK(steering_bruteforce(werner(1.0)) == doctest::Approx(std::numbers::sqrt3).epsilon(1e-9));
    CHECK(steering_bruteforce(product_up()) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(steering_bruteforce(werner(1.0), 10), ArgumentError);
}
