#pragma once

#include <array>
#include <string_view>

#include "llbar/linalg.hpp"

namespace llbar {

// J/psi -> Lambda Lambdabar decay parameters. beta and gamma are derived from
// alpha and the relative form-factor phase so that alpha^2+beta^2+gamma^2 = 1.
struct DecayParameters {
    double alpha_psi = 0.0;
    double delta_phi = 0.0;  // radians, [-pi, pi]
    double beta_psi = 0.0;
    double gamma_psi = 1.0;
};

enum class MassMode { Massless, MassCorrected };

std::string_view to_string(MassMode mode);
MassMode parse_mass_mode(std::string_view text);

// Real 4x4 polarization / spin-correlation matrix C_{mu nu}, indices 0..3 =
// (1, x, y, z).
struct CorrelationMatrix {
    std::array<std::array<double, 4>, 4> c{};
};

// X-state reduction: symmetric z-polarization a and the principal spin
// correlations b1 >= b2 (transverse) and b3 (longitudinal after the y<->z swap).
struct XStateCoefficients {
    double a = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
};

// Validated two-qubit state: Hermitian, unit trace, PSD within tolerance.
class DensityMatrix {
public:
    // Throws ValidationError naming the violated invariant.
    static DensityMatrix from_matrix(ComplexMatrix rho);

    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return rho_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }
    [[nodiscard]] bool is_x_state(double tol = tol::kXShape) const;

private:
    explicit DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {}
    ComplexMatrix rho_;
};

// Checks the DensityMatrix invariants and throws ValidationError on failure.
void validate_state(const ComplexMatrix& rho);

bool is_x_shaped(const ComplexMatrix& m, double tol = tol::kXShape);

// Throws ValidationError when rho is not X-shaped.
void require_x_state(const DensityMatrix& rho, std::string_view who);

DecayParameters derive_form_params(double alpha, double delta_phi);

// Wraps a phase into [-pi, pi].
double wrap_phase(double radians);

CorrelationMatrix cmatrix(const DecayParameters& params, double phi, MassMode mode);

// Axis swap y<->z and diagonalization of the transverse block by eigen decomposition.
XStateCoefficients xstate_from_cmatrix(const CorrelationMatrix& c);

// Closed forms of the X-state coefficients, with cos 2phi in the B1/B2 radicand.
XStateCoefficients xstate_closed_form(const DecayParameters& params, double phi, MassMode mode);

// The X-form correlation matrix diag-plus-polarization of the reduced state.
CorrelationMatrix xform_cmatrix(const XStateCoefficients& x);

// rho = 1/4 sum_{mu nu} C_{mu nu} sigma_mu (x) sigma_nu, no validation.
ComplexMatrix expand_correlation(const CorrelationMatrix& c);

DensityMatrix density_from_xstate(const XStateCoefficients& x);

// Inverse of density_from_xstate for real X-states with rho22 = rho33.
// Returned coefficients are ordered b1 >= b2.
XStateCoefficients xstate_from_density(const DensityMatrix& rho);

DensityMatrix build_state(const DecayParameters& params, double phi, MassMode mode);

}  // namespace llbar
