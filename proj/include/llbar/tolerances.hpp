#pragma once

#include <cstdint>

// Shared numerical tolerances. Functions that take a tolerance default to these.
namespace llbar::tol {

inline constexpr double kHermitianInput = 1e-10;   // accepted input asymmetry
inline constexpr double kHermitianState = 1e-12;   // DensityMatrix invariant
inline constexpr double kTrace = 1e-12;
inline constexpr double kMinEigenvalue = -1e-9;    // PSD slack
inline constexpr double kXShape = 1e-14;           // entries outside the X pattern
inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kSingularDenominator = 1e-12;
inline constexpr double kEntropyClamp = 1e-12;     // binary_entropy input slack
inline constexpr double kLogFloor = 1e-300;
inline constexpr double kTauDegenerate = 1e-6;     // |λ − 4| below which the critical limit is used
inline constexpr double kNormalizedClamp = 1e-12;
inline constexpr double kUnitVector = 1e-12;

inline constexpr std::uint64_t kDefaultSeed = 0xBE5111;

}  // namespace llbar::tol
