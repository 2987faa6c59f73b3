#pragma once

#include <array>
#include <cstdint>

#include "llbar/spinstate.hpp"

// Brute-force references for the closed-form quantifiers. Everything here is
// derived from the definitions by direct search over measurement settings and
// none of it calls into measures.
namespace llbar::oracles {

// Unit Bloch vector of a spin measurement a . sigma.
class MeasurementDirection {
public:
    // Throws ArgumentError unless |v| = 1 within 1e-12.
    explicit MeasurementDirection(const std::array<double, 3>& v);
    static MeasurementDirection from_angles(double theta, double phi);

    [[nodiscard]] const std::array<double, 3>& vector() const noexcept { return v_; }
    [[nodiscard]] ComplexMatrix observable() const;  // n . sigma

private:
    std::array<double, 3> v_;
};

enum class Subsystem { A, B };

// E(a, b) = Tr[rho (a . sigma) (x) (b . sigma)].
double correlation(const DensityMatrix& rho, const MeasurementDirection& a, const MeasurementDirection& b);

// max |E(a,b) + E(a,b') + E(a',b) - E(a',b')| by exact coordinate ascent over
// the eight spherical angles, best of `restarts` seeded random starts (>= 8).
double chsh_bruteforce(const DensityMatrix& rho, int restarts = 16, std::uint64_t seed = tol::kDefaultSeed);

// S(rho_measured) - S(rho) + min_Pi S(other | Pi), minimized over projective
// measurements on `measured` by a grid x grid scan of (theta, phi) plus three
// rounds of local grids shrunk tenfold each. grid >= 64.
double discord_bruteforce(const DensityMatrix& rho, int grid = 64, Subsystem measured = Subsystem::A);

// Post-measurement conditional entropy for a measurement along n on `measured`.
double conditional_entropy(const DensityMatrix& rho, const MeasurementDirection& n, Subsystem measured);

// Best (1/sqrt 3) sum_i ||C v_i|| over `samples` (>= 1000) random orthonormal
// triads followed by a local rotation search. Lower bound on sqrt(Tr C C^T).
double steering_bruteforce(const DensityMatrix& rho, int samples = 4000, std::uint64_t seed = tol::kDefaultSeed);

}  // namespace llbar::oracles
