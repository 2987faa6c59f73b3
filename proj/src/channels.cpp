#include "llbar/channels.hpp"

#include <cmath>
#include <string>

#include "llbar/errors.hpp"

namespace llbar {

namespace {

void require_unit_interval(double x, const char* name) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0)
        throw ArgumentError(std::string(name) + " must lie in [0, 1] (got " + std::to_string(x) + ")");
}

}  // namespace

Regime ChannelConfig::regime() const {
    const double lam = lambda();
    if (std::abs(lam - 4.0) <= tol::kTauDegenerate) return Regime::Critical;
    return lam > 4.0 ? Regime::Markovian : Regime::NonMarkovian;
}

void ChannelConfig::validate() const {
    if (!std::isfinite(tau) || tau <= 0.0) throw ArgumentError("tau must be positive (got " + std::to_string(tau) + ")");
    require_unit_interval(mu, "mu");
}

double decoherence_V(double tau, double t) {
    if (!std::isfinite(tau) || tau <= 0.0) throw ArgumentError("tau must be positive (got " + std::to_string(tau) + ")");
    if (!std::isfinite(t) || t < 0.0) throw ArgumentError("t must be non-negative (got " + std::to_string(t) + ")");
    const double lam = 1.0 / tau;
    if (std::abs(lam - 4.0) <= tol::kTauDegenerate) return std::exp(-2.0 * t) * (1.0 + 2.0 * t);
    const double omega = std::sqrt(std::abs(lam * lam - 16.0));
    const double x = 0.5 * omega * t;
    const double envelope = std::exp(-0.5 * lam * t);
    if (lam < 4.0) return envelope * (std::cos(x) + lam / omega * std::sin(x));
    // cosh/sinh overflow for large lambda*t; factor e^{x} into the envelope.
    const double e = std::exp(-0.5 * lam * t + x);
    const double decay = std::exp(-2.0 * x);
    return e * (0.5 * (1.0 + decay) + lam / omega * 0.5 * (1.0 - decay));
}

double memory_factor_W(double v, double mu) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-12)
        throw ArgumentError("visibility must satisfy |v| <= 1 (got " + std::to_string(v) + ")");
    require_unit_interval(mu, "mu");
    const double v2 = std::min(1.0, v * v);
    return v2 + (1.0 - v2) * mu;
}

DecoherenceFactors decoherence_factors(const ChannelConfig& config, double t) {
    config.validate();
    const double v = decoherence_V(config.tau, t);
    return {v, memory_factor_W(v, config.mu), 0.5 * (1.0 - v)};
}

DensityMatrix evolve_closed_form(const DensityMatrix& rho, double w) {
    require_x_state(rho, "evolve_closed_form");
    require_unit_interval(w, "w");
    ComplexMatrix out = rho.matrix();
    for (auto [i, j] : {std::pair{0, 3}, {3, 0}, {1, 2}, {2, 1}}) out(i, j) *= w;
    return DensityMatrix::from_matrix(std::move(out));
}

PauliWeights correlated_weights(const std::array<double, 4>& single, double mu) {
    require_unit_interval(mu, "mu");
    PauliWeights p{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            p[i][j] = (1.0 - mu) * single[i] * single[j] + (i == j ? mu * single[i] : 0.0);
    return p;
}

ComplexMatrix apply_pauli_channel(const ComplexMatrix& rho, const PauliWeights& weights) {
    ComplexMatrix out(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (weights[i][j] == 0.0) continue;
            const ComplexMatrix k = pauli_product(i, j);
            out += Complex(weights[i][j]) * (k * rho * k);
        }
    }
    return out;
}

DensityMatrix kraus_map_correlated(const DensityMatrix& rho, double p, double mu) {
    require_unit_interval(p, "p");
    require_unit_interval(mu, "mu");
    const auto weights = correlated_weights({1.0 - p, 0.0, 0.0, p}, mu);
    return DensityMatrix::from_matrix(apply_pauli_channel(rho.matrix(), weights));
}

}  // namespace llbar
