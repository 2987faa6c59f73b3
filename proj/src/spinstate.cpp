#include "llbar/spinstate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "llbar/errors.hpp"

namespace llbar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPhiSlack = 1e-12;
constexpr double kAtSparsity = 1e-14;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

bool on_x_pattern(std::size_t i, std::size_t j) { return i == j || i + j == 3; }

}  // namespace

std::string_view to_string(MassMode mode) {
    return mode == MassMode::Massless ? "massless" : "mass_corrected";
}

MassMode parse_mass_mode(std::string_view text) {
    if (text == "massless") return MassMode::Massless;
    if (text == "mass_corrected") return MassMode::MassCorrected;
    throw ArgumentError("unknown mass mode '" + std::string(text) + "'");
}

bool is_x_shaped(const ComplexMatrix& m, double tol) {
    if (m.rows() != 4 || m.cols() != 4) return false;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (!on_x_pattern(i, j) && std::abs(m(i, j)) > tol) return false;
    return true;
}

void validate_state(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw ValidationError("density matrix must be 4x4");
    for (const auto& z : rho.entries())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ValidationError("density matrix has non-finite entries");
    const double herm = hermiticity_defect(rho);
    if (herm > tol::kHermitianState) throw ValidationError("density matrix is not Hermitian (defect " + fmt(herm) + ")");
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > tol::kTrace) throw ValidationError("density matrix trace " + fmt(tr.real()) + " != 1");
    const double lowest = hermitian_eigenvalues(rho).front();
    if (lowest < tol::kMinEigenvalue)
        throw ValidationError("density matrix is not positive semidefinite (min eigenvalue " + fmt(lowest) + ")");
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix rho) {
    validate_state(rho);
    return DensityMatrix(std::move(rho));
}

bool DensityMatrix::is_x_state(double tol) const { return is_x_shaped(rho_, tol); }

void require_x_state(const DensityMatrix& rho, std::string_view who) {
    if (!rho.is_x_state()) throw ValidationError(std::string(who) + ": input is not an X-state");
}

double wrap_phase(double radians) {
    if (!std::isfinite(radians)) throw ArgumentError("phase must be finite");
    double r = std::remainder(radians, 2.0 * kPi);  // [-pi, pi]
    return r;
}

DecayParameters derive_form_params(double alpha, double delta_phi) {
    if (!std::isfinite(alpha) || std::abs(alpha) > 1.0)
        throw ArgumentError("alpha must lie in [-1, 1] (got " + fmt(alpha) + ")");
    if (!std::isfinite(delta_phi) || std::abs(delta_phi) > kPi)
        throw ArgumentError("delta_phi must lie in [-pi, pi] radians (got " + fmt(delta_phi) + ")");
    const double transverse = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
    return {alpha, delta_phi, transverse * std::sin(delta_phi), transverse * std::cos(delta_phi)};
}

CorrelationMatrix cmatrix(const DecayParameters& p, double phi, MassMode mode) {
    if (!std::isfinite(phi) || phi < -kPhiSlack || phi > kPi + kPhiSlack)
        throw ArgumentError("phi must lie in [0, pi] (got " + fmt(phi) + ")");
    const double alpha = p.alpha_psi;
    CorrelationMatrix m;
    auto& c = m.c;
    if (mode == MassMode::Massless) {
        const double s = std::sin(phi);
        const double co = std::cos(phi);
        const double denom = 1.0 - alpha * co * co;
        if (std::abs(denom) <= tol::kSingularDenominator)
            throw SingularityError("massless correlation matrix: 1 - alpha cos^2(phi) vanishes");
        c[0][0] = 1.0;
        c[0][2] = c[2][0] = p.gamma_psi * s * co / denom;
        c[1][1] = s * s / denom;
        c[1][3] = c[3][1] = p.beta_psi * s * co / denom;
        c[2][2] = alpha * s * s / denom;
        c[3][3] = (co * co - alpha) / denom;
    } else {
        const double s2 = std::sin(2.0 * phi);
        const double c2 = std::cos(2.0 * phi);
        const double denom = 1.0 + alpha * c2;
        if (std::abs(denom) <= tol::kSingularDenominator)
            throw SingularityError("mass-corrected correlation matrix: 1 + alpha cos(2 phi) vanishes");
        c[0][0] = 1.0;
        c[0][2] = c[2][0] = p.gamma_psi * s2 / denom;
        c[1][1] = (alpha + c2) / denom;
        c[1][3] = c[3][1] = p.beta_psi * s2 / denom;
        c[2][2] = 1.0;
        c[3][3] = -(alpha + c2) / denom;
    }
    return m;
}

XStateCoefficients xstate_from_cmatrix(const CorrelationMatrix& m) {
    const auto& c = m.c;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const bool allowed = (i == j) || (i == 0 && j == 2) || (i == 2 && j == 0) ||
                                 (i == 1 && j == 3) || (i == 3 && j == 1);
            if (!allowed && std::abs(c[i][j]) > kAtSparsity)
                throw ValidationError("xstate_from_cmatrix: entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") breaks the AT sparsity pattern");
        }
    }
    if (std::abs(c[0][0] - 1.0) > kAtSparsity) throw ValidationError("xstate_from_cmatrix: C00 must be 1");
    if (std::abs(c[0][2] - c[2][0]) > kAtSparsity || std::abs(c[1][3] - c[3][1]) > kAtSparsity)
        throw ValidationError("xstate_from_cmatrix: correlation matrix must be symmetric");

    const ComplexMatrix block{{c[1][1], c[1][3]}, {c[3][1], c[3][3]}};
    const auto eig = hermitian_eigenvalues(block);
    return {c[0][2], eig[1], eig[0], c[2][2]};
}

XStateCoefficients xstate_closed_form(const DecayParameters& p, double phi, MassMode mode) {
    const double alpha = p.alpha_psi;
    const double beta = p.beta_psi;
    const double s2 = std::sin(2.0 * phi);
    const double c2 = std::cos(2.0 * phi);
    if (mode == MassMode::Massless) {
        const double s = std::sin(phi);
        const double co = std::cos(phi);
        const double denom = 1.0 - alpha * co * co;
        const double root = std::sqrt((alpha - c2) * (alpha - c2) + beta * beta * s2 * s2);
        return {p.gamma_psi * co * s / denom, (1.0 - alpha + root) / (2.0 * denom),
                (1.0 - alpha - root) / (2.0 * denom), alpha * s * s / denom};
    }
    const double denom = 1.0 + alpha * c2;
    const double root = std::sqrt((alpha + c2) * (alpha + c2) + beta * beta * s2 * s2);
    return {p.gamma_psi * s2 / denom, root / denom, -root / denom, 1.0};
}

CorrelationMatrix xform_cmatrix(const XStateCoefficients& x) {
    CorrelationMatrix m;
    m.c[0][0] = 1.0;
    m.c[0][3] = m.c[3][0] = x.a;
    m.c[1][1] = x.b1;
    m.c[2][2] = x.b2;
    m.c[3][3] = x.b3;
    return m;
}

ComplexMatrix expand_correlation(const CorrelationMatrix& m) {
    ComplexMatrix rho(4, 4);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (m.c[mu][nu] != 0.0) rho += Complex(0.25 * m.c[mu][nu]) * pauli_product(mu, nu);
    return rho;
}

DensityMatrix density_from_xstate(const XStateCoefficients& x) {
    for (double v : {x.a, x.b1, x.b2, x.b3})
        if (!std::isfinite(v)) throw ValidationError("density_from_xstate: non-finite coefficient");
    ComplexMatrix rho(4, 4);
    rho(0, 0) = 0.25 * (1.0 + 2.0 * x.a + x.b3);
    rho(3, 3) = 0.25 * (1.0 - 2.0 * x.a + x.b3);
    rho(1, 1) = rho(2, 2) = 0.25 * (1.0 - x.b3);
    rho(0, 3) = rho(3, 0) = 0.25 * (x.b1 - x.b2);
    rho(1, 2) = rho(2, 1) = 0.25 * (x.b1 + x.b2);
    return DensityMatrix::from_matrix(std::move(rho));
}

XStateCoefficients xstate_from_density(const DensityMatrix& state) {
    require_x_state(state, "xstate_from_density");
    const auto& r = state.matrix();
    if (std::abs(r(1, 1) - r(2, 2)) > 1e-12)
        throw ValidationError("xstate_from_density: requires rho22 = rho33");
    if (std::abs(r(0, 3).imag()) > 1e-12 || std::abs(r(1, 2).imag()) > 1e-12)
        throw ValidationError("xstate_from_density: requires real coherences");
    const double r14 = r(0, 3).real();
    const double r23 = r(1, 2).real();
    XStateCoefficients x{r(0, 0).real() - r(3, 3).real(), 2.0 * (r14 + r23), 2.0 * (r23 - r14),
                         r(0, 0).real() + r(3, 3).real() - r(1, 1).real() - r(2, 2).real()};
    if (x.b1 < x.b2) std::swap(x.b1, x.b2);
    return x;
}

DensityMatrix build_state(const DecayParameters& params, double phi, MassMode mode) {
    return density_from_xstate(xstate_from_cmatrix(cmatrix(params, phi, mode)));
}

}  // namespace llbar
