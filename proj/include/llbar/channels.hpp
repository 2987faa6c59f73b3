#pragma once

#include <array>

#include "llbar/spinstate.hpp"

namespace llbar {

enum class Regime { Markovian, Critical, NonMarkovian };

// Correlated dephasing channel. lambda = 1/tau; mu is the degree of classical
// correlation between the two channel uses.
struct ChannelConfig {
    double tau = 0.2;
    double mu = 0.0;

    [[nodiscard]] double lambda() const { return 1.0 / tau; }
    [[nodiscard]] Regime regime() const;
    void validate() const;
};

struct DecoherenceFactors {
    double v = 1.0;  // visibility V(t)
    double w = 1.0;  // coherence multiplier V^2 + (1 - V^2) mu
    double p = 0.0;  // flip probability (1 - V)/2
};

// Stochastic dephasing visibility. |lambda - 4| <= 1e-6 uses the critical
// limit e^{-2t}(1 + 2t).
double decoherence_V(double tau, double t);

double memory_factor_W(double v, double mu);

DecoherenceFactors decoherence_factors(const ChannelConfig& config, double t);

// Scales rho14, rho41, rho23, rho32 by w; diagonal untouched.
DensityMatrix evolve_closed_form(const DensityMatrix& rho, double w);

// Joint Pauli weights p_ij = (1 - mu) p_i p_j + mu p_i delta_ij.
using PauliWeights = std::array<std::array<double, 4>, 4>;
PauliWeights correlated_weights(const std::array<double, 4>& single, double mu);

// sum_ij p_ij (sigma_i (x) sigma_j) rho (sigma_i (x) sigma_j); no validation of the output.
ComplexMatrix apply_pauli_channel(const ComplexMatrix& rho, const PauliWeights& weights);

// Dephasing distribution {1 - p, 0, 0, p} pushed through apply_pauli_channel.
DensityMatrix kraus_map_correlated(const DensityMatrix& rho, double p, double mu);

}  // namespace llbar
