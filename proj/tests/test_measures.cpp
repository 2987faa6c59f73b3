#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "llbar/errors.hpp"
#include "llbar/measures.hpp"

using namespace llbar;

namespace {

constexpr double kPi = std::numbers::pi;

DecayParameters table_params() { return derive_form_params(-0.32, wrap_phase(-4.26)); }

DensityMatrix phi_plus() { return density_from_xstate({0.0, 1.0, -1.0, 1.0}); }

// p |Psi-><Psi-| + (1 - p) I/4
DensityMatrix werner(double p) { return density_from_xstate({0.0, -p, -p, -p}); }

}  // namespace

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.34) == doctest::Approx(0.9248187050).epsilon(1e-10));
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0 + 1e-13) == 0.0);
    CHECK_THROWS_AS(binary_entropy(1.1), ArgumentError);
    CHECK_THROWS_AS(binary_entropy(-0.1), ArgumentError);
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(Complex(0.25) * ComplexMatrix::identity(4)) == doctest::Approx(2.0));
    CHECK(von_neumann_entropy(phi_plus().matrix()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("normalizations clamp at the classical bound") {
    CHECK(normalize_bell(2.0) == 0.0);
    CHECK(normalize_bell(1.5) == 0.0);
    CHECK(normalize_bell(2.0 * std::numbers::sqrt2) == doctest::Approx(1.0));
    CHECK(normalize_steering(0.9) == 0.0);
    CHECK(normalize_steering(std::numbers::sqrt3) == doctest::Approx(1.0));
}

TEST_CASE("maximally entangled state saturates everything") {
    const auto m = evaluate_measures(phi_plus());
    CHECK(m.bell_raw == doctest::Approx(2.0 * std::numbers::sqrt2));
    CHECK(m.bell_norm == doctest::Approx(1.0));
    CHECK(m.steering_raw == doctest::Approx(std::numbers::sqrt3));
    CHECK(m.steering_norm == doctest::Approx(1.0));
    CHECK(m.concurrence == doctest::Approx(1.0));
    CHECK(m.discord == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.purity == doctest::Approx(1.0));
}

TEST_CASE("maximally mixed state carries nothing") {
    const auto m = evaluate_measures(density_from_xstate({0.0, 0.0, 0.0, 0.0}));
    CHECK(m.bell_norm == 0.0);
    CHECK(m.steering_norm == 0.0);
    CHECK(m.concurrence == 0.0);
    CHECK(m.discord == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m.purity == doctest::Approx(0.25));
}

TEST_CASE("massless phi = pi/2 reference values") {
    const auto m = evaluate_measures(build_state(table_params(), kPi / 2.0, MassMode::Massless));
    CHECK(m.bell_raw == doctest::Approx(2.0 * std::sqrt(1.1024)).epsilon(1e-12));
    CHECK(m.bell_raw == doctest::Approx(2.09990).epsilon(1e-5));
    CHECK(m.steering_raw == doctest::Approx(std::sqrt(1.2048)).epsilon(1e-12));
    CHECK(m.concurrence == doctest::Approx(0.32).epsilon(1e-12));
    CHECK(m.purity == doctest::Approx(0.5512).epsilon(1e-12));
    CHECK(m.discord == doctest::Approx(0.0751813).epsilon(1e-6));
}

// Reference discord values from an independent projective-measurement scan.
TEST_CASE("discord against frozen brute-force values") {
    const auto p = table_params();
    struct Case {
        double phi;
        MassMode mode;
        double expected;
    };
    const Case cases[] = {
        {kPi / 3.0, MassMode::Massless, 0.1065725},      {kPi / 4.0, MassMode::Massless, 0.0788745},
        {kPi / 6.0, MassMode::Massless, 0.0417860},      {kPi / 3.0, MassMode::MassCorrected, 0.929902},
        {kPi / 4.0, MassMode::MassCorrected, 0.872482}, {kPi / 6.0, MassMode::MassCorrected, 0.864182},
    };
    for (const auto& c : cases) {
        const auto x = xstate_from_density(build_state(p, c.phi, c.mode));
        CHECK(discord(x) == doctest::Approx(c.expected).epsilon(2e-6));
    }
    CHECK(discord(xstate_from_density(werner(0.75))) == doctest::Approx(0.550172).epsilon(2e-6));
}

TEST_CASE("discord conventions differ only when A != 0") {
    const auto p = table_params();
    const auto sym = xstate_from_density(build_state(p, kPi / 2.0, MassMode::Massless));
    const auto asym = xstate_from_density(build_state(p, kPi / 3.0, MassMode::Massless));
    const DiscordConvention linear{CoherenceRadicand::Linear, ConditionalTerm::Standard};
    const DiscordConvention omitted{CoherenceRadicand::Squared, ConditionalTerm::Omitted};
    CHECK(std::abs(asym.a) > 0.01);
    CHECK(std::abs(discord(asym, linear) - discord(asym)) > 1e-3);
    CHECK(std::abs(discord(asym, omitted) - discord(asym)) > 1e-3);
    CHECK(discord(sym, omitted) == doctest::Approx(discord(sym)).epsilon(1e-12));
}

TEST_CASE("discord optimum stays in range") {
    for (double v : {0.0, 0.2, 0.6, 1.0}) {
        const auto o = discord_optimum(xstate_from_density(werner(v)));
        CHECK(o.value >= 0.0);
        CHECK(o.value <= 1.0 + 1e-9);
        CHECK(o.eps >= 0.0);
        CHECK(o.eps <= 1.0);
    }
    CHECK_THROWS_AS(discord_F(1.5, {}), ArgumentError);
}

TEST_CASE("X-state eigenvalues") {
    const XStateCoefficients x{0.1, 0.5, -0.2, 0.3};
    auto closed = xstate_eigenvalues(x);
    std::sort(closed.begin(), closed.end());
    const auto numeric = hermitian_eigenvalues(density_from_xstate(x).matrix());
    for (std::size_t k = 0; k < 4; ++k) CHECK(closed[k] == doctest::Approx(numeric[k]).epsilon(1e-13));
}

TEST_CASE("closed-form discord applicability") {
    const auto p = table_params();
    const auto half = xstate_from_density(build_state(p, kPi / 2.0, MassMode::Massless));
    CHECK(discord_closed_radical(half) == doctest::Approx(std::sqrt(1.0 + 0.1024 + 0.32)).epsilon(1e-12));
    CHECK_FALSE(discord_closed(half).has_value());
    const auto pure = xstate_from_density(build_state(p, kPi / 2.0, MassMode::MassCorrected));
    REQUIRE(discord_closed(pure).has_value());
    CHECK(*discord_closed(pure) == doctest::Approx(1.0));
}

TEST_CASE("Bell value from the X-state elements agrees with Horodecki") {
    for (double v : {0.1, 0.5, 0.9}) CHECK(bell_chsh_xstate(werner(v)) == doctest::Approx(bell_chsh(werner(v)).raw));
    const auto rho = build_state(table_params(), 1.1, MassMode::Massless);
    CHECK(bell_chsh_xstate(rho) == doctest::Approx(bell_chsh(rho).raw).epsilon(1e-12));
}

TEST_CASE("Wootters concurrence") {
    for (double v : {0.0, 0.2, 1.0 / 3.0, 0.5, 1.0}) {
        const double expected = std::max(0.0, 1.5 * v - 0.5);
        CHECK(concurrence_wootters(werner(v)) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(concurrence_xstate(werner(v)) == doctest::Approx(expected).epsilon(1e-12));
    }
    // A non-X product state.
    const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
    const auto product = DensityMatrix::from_matrix(kron(plus, plus));
    CHECK(concurrence_wootters(product) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(concurrence_xstate(product), ValidationError);
}

TEST_CASE("correlation tensor of the singlet") {
    const auto t = correlation_tensor(werner(1.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(t[i][j] == doctest::Approx(i == j ? -1.0 : 0.0));
}
