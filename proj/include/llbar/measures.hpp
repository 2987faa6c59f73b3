#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "llbar/spinstate.hpp"

namespace llbar {

struct MeasureSet {
    double bell_raw = 0.0;       // max CHSH value, [0, 2 sqrt 2]
    double bell_norm = 0.0;
    double steering_raw = 0.0;   // F3, [0, sqrt 3]
    double steering_norm = 0.0;
    double concurrence = 0.0;
    double discord = 0.0;
    double purity = 0.25;
};

struct ScaledMeasure {
    double raw = 0.0;
    double norm = 0.0;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

// T_ij = Tr(rho sigma_i (x) sigma_j), i, j in {x, y, z}.
Matrix3 correlation_tensor(const DensityMatrix& rho);

double normalize_bell(double raw);
double normalize_steering(double raw);

// Horodecki: raw = 2 sqrt(sum of the two largest eigenvalues of T^T T).
ScaledMeasure bell_chsh(const DensityMatrix& rho);
// 2 sqrt(max{M1, M2}) from the X-state matrix elements.
double bell_chsh_xstate(const DensityMatrix& rho);

// raw = sqrt(Tr C C^T).
ScaledMeasure steering_F3(const DensityMatrix& rho);

double concurrence_xstate(const DensityMatrix& rho);
double concurrence_wootters(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

// Shannon binary entropy in bits. Inputs within 1e-12 of [0, 1] are clamped.
double binary_entropy(double x);
// -Tr rho log2 rho for any Hermitian PSD matrix.
double von_neumann_entropy(const ComplexMatrix& rho);

// How max{|B1|, |B2|} enters the Delta radicand.
enum class CoherenceRadicand { Linear, Squared };
// Entropy bookkeeping around max F:
//   Omitted:  1 - h((1+A)/2) + sum g log g - max_e F(e)
//   Standard: h((1+A)/2) + sum g log g - max_e [F(e) + h((1+A e)/2)]
enum class ConditionalTerm { Omitted, Standard };

struct DiscordConvention {
    CoherenceRadicand radicand = CoherenceRadicand::Squared;
    ConditionalTerm term = ConditionalTerm::Standard;
    friend bool operator==(const DiscordConvention&, const DiscordConvention&) = default;
};

inline constexpr DiscordConvention kExactDiscord{};

std::string_view to_string(CoherenceRadicand r);
std::string_view to_string(ConditionalTerm t);

// Sum of the four xlog2x terms of the post-measurement spectrum, eps = |cos theta|.
double discord_F(double eps, const XStateCoefficients& x,
                 CoherenceRadicand radicand = CoherenceRadicand::Squared);

// Eigenvalues gamma_1..4 of the X-state built from x.
std::array<double, 4> xstate_eigenvalues(const XStateCoefficients& x);

struct DiscordOptimum {
    double value = 0.0;
    double eps = 0.0;  // maximizer of the objective
};

// Quantum discord of the symmetric X-state; eps maximum over {0, 1}, a
// 101-point grid and a golden-section polish. Clamped to [0, 1 + 1e-9].
DiscordOptimum discord_optimum(const XStateCoefficients& x, DiscordConvention convention = kExactDiscord);
double discord(const XStateCoefficients& x, DiscordConvention convention = kExactDiscord);

// sqrt(B1^2 + B3^2 - B1 B3), the argument of the last entropy term below.
double discord_closed_radical(const XStateCoefficients& x);
// h((1+A)/2) - h((1+B3)/2) + h((1+radical)/2); nullopt when (1+radical)/2 leaves [0, 1].
std::optional<double> discord_closed(const XStateCoefficients& x);

// Every field of MeasureSet for a symmetric real X-state.
MeasureSet evaluate_measures(const DensityMatrix& rho, DiscordConvention convention = kExactDiscord);

}  // namespace llbar
