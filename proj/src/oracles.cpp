#include "llbar/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "llbar/errors.hpp"

namespace llbar::oracles {

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

constexpr double kPi = std::numbers::pi;

Vec3 spherical(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 mul(const Mat3& m, const Vec3& v) {
    return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

Vec3 mul_transpose(const Mat3& m, const Vec3& v) {
    Vec3 out{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out[j] += m[i][j] * v[i];
    return out;
}

Vec3 add(const Vec3& a, const Vec3& b, double sign = 1.0) {
    return {a[0] + sign * b[0], a[1] + sign * b[1], a[2] + sign * b[2]};
}

// E on the Pauli basis; bilinearity gives E(a, b) = a^T T b for all a, b.
Mat3 pauli_correlations(const DensityMatrix& rho) {
    Mat3 t{};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) t[i - 1][j - 1] = (rho.matrix() * pauli_product(i, j)).trace().real();
    return t;
}

double entropy_bits(const ComplexMatrix& m) {
    double s = 0.0;
    for (double l : hermitian_eigenvalues(m))
        if (l > 0.0) s -= l * std::log2(l);
    return s;
}

// Tr_other[(Pi on measured) rho].
ComplexMatrix conditional_block(const ComplexMatrix& rho, const ComplexMatrix& proj, Subsystem measured) {
    ComplexMatrix out(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            Complex acc{};
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t m = 0; m < 2; ++m) {
                    acc += measured == Subsystem::A ? proj(i, m) * rho(2 * m + r, 2 * i + c)
                                                    : proj(i, m) * rho(2 * r + m, 2 * c + i);
                }
            out(r, c) = acc;
        }
    // The product is Hermitian only up to rounding; symmetrize for the eigensolver.
    return Complex(0.5) * (out + out.adjoint());
}

}  // namespace

MeasurementDirection::MeasurementDirection(const std::array<double, 3>& v) : v_(v) {
    if (std::abs(norm(v) - 1.0) > tol::kUnitVector)
        throw ArgumentError("MeasurementDirection: vector norm " + std::to_string(norm(v)) + " != 1");
}

MeasurementDirection MeasurementDirection::from_angles(double theta, double phi) {
    return MeasurementDirection(spherical(theta, phi));
}

ComplexMatrix MeasurementDirection::observable() const {
    ComplexMatrix out(2, 2);
    for (int k = 0; k < 3; ++k) out += Complex(v_[k]) * pauli(k + 1);
    return out;
}

double correlation(const DensityMatrix& rho, const MeasurementDirection& a, const MeasurementDirection& b) {
    return (rho.matrix() * kron(a.observable(), b.observable())).trace().real();
}

double chsh_bruteforce(const DensityMatrix& rho, int restarts, std::uint64_t seed) {
    if (restarts < 8) throw ArgumentError("chsh_bruteforce: restarts must be >= 8");
    const Mat3 t = pauli_correlations(rho);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> turn(0.0, 2.0 * kPi);

    double best = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        // angles[2k], angles[2k+1] = (theta, phi) of a, a', b, b'.
        std::array<double, 8> angles{};
        for (int k = 0; k < 4; ++k) {
            angles[2 * k] = std::acos(unit(rng));
            angles[2 * k + 1] = turn(rng);
        }
        auto vec = [&](int k) { return spherical(angles[2 * k], angles[2 * k + 1]); };
        auto value = [&] {
            const Vec3 a = vec(0), ap = vec(1), b = vec(2), bp = vec(3);
            return dot(a, mul(t, add(b, bp))) + dot(ap, mul(t, add(b, bp, -1.0)));
        };
        // Linear coefficient of vector k in the CHSH expression.
        auto coefficient = [&](int k) {
            const Vec3 a = vec(0), ap = vec(1), b = vec(2), bp = vec(3);
            switch (k) {
                case 0: return mul(t, add(b, bp));
                case 1: return mul(t, add(b, bp, -1.0));
                case 2: return mul_transpose(t, add(a, ap));
                default: return mul_transpose(t, add(a, ap, -1.0));
            }
        };

        double current = value();
        for (int sweep = 0; sweep < 20000; ++sweep) {
            for (int k = 0; k < 4; ++k) {
                const Vec3 g = coefficient(k);
                double& theta = angles[2 * k];
                double& phi = angles[2 * k + 1];
                // g . n = sin(theta) (gx cos phi + gy sin phi) + gz cos(theta)
                theta = std::atan2(g[0] * std::cos(phi) + g[1] * std::sin(phi), g[2]);
                const double s = std::sin(theta);
                if (s != 0.0) phi = s > 0.0 ? std::atan2(g[1], g[0]) : std::atan2(-g[1], -g[0]);
            }
            const double next = value();
            const bool stalled = next - current <= 1e-15;
            current = std::max(current, next);
            if (stalled) break;
        }
        best = std::max(best, std::abs(current));
    }
    return best;
}

double conditional_entropy(const DensityMatrix& rho, const MeasurementDirection& n, Subsystem measured) {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const ComplexMatrix obs = n.observable();
    double s = 0.0;
    for (double sign : {1.0, -1.0}) {
        const ComplexMatrix proj = Complex(0.5) * (id + Complex(sign) * obs);
        ComplexMatrix block = conditional_block(rho.matrix(), proj, measured);
        const double p = block.trace().real();
        if (p <= 1e-15) continue;
        block *= Complex(1.0 / p);
        s += p * entropy_bits(block);
    }
    return s;
}

double discord_bruteforce(const DensityMatrix& rho, int grid, Subsystem measured) {
    if (grid < 64) throw ArgumentError("discord_bruteforce: grid must be >= 64 per angle");
    auto objective = [&](double theta, double phi) {
        return conditional_entropy(rho, MeasurementDirection::from_angles(theta, phi), measured);
    };

    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    double best_phi = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double theta = kPi * i / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double phi = 2.0 * kPi * j / grid;
            if (const double v = objective(theta, phi); v < best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    constexpr int kLocal = 21;
    double half_theta = kPi / (grid - 1);
    double half_phi = 2.0 * kPi / grid;
    for (int round = 0; round < 3; ++round) {
        const double center_theta = best_theta;
        const double center_phi = best_phi;
        for (int i = 0; i < kLocal; ++i) {
            const double theta = center_theta + half_theta * (2.0 * i / (kLocal - 1) - 1.0);
            for (int j = 0; j < kLocal; ++j) {
                const double phi = center_phi + half_phi * (2.0 * j / (kLocal - 1) - 1.0);
                if (const double v = objective(theta, phi); v < best) {
                    best = v;
                    best_theta = theta;
                    best_phi = phi;
                }
            }
        }
        half_theta /= 10.0;
        half_phi /= 10.0;
    }

    const ComplexMatrix marginal =
        measured == Subsystem::A ? partial_trace_b(rho.matrix()) : partial_trace_a(rho.matrix());
    return entropy_bits(marginal) - entropy_bits(rho.matrix()) + best;
}

double steering_bruteforce(const DensityMatrix& rho, int samples, std::uint64_t seed) {
    if (samples < 1000) throw ArgumentError("steering_bruteforce: samples must be >= 1000");
    const Mat3 t = pauli_correlations(rho);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto score = [&](const Mat3& triad) {
        double s = 0.0;
        for (const auto& v : triad) s += norm(mul(t, v));
        return s / std::numbers::sqrt3;
    };
    auto random_triad = [&] {
        Mat3 q{};
        for (std::size_t k = 0; k < 3; ++k) {
            Vec3 g{gauss(rng), gauss(rng), gauss(rng)};
            for (std::size_t m = 0; m < k; ++m) g = add(g, q[m], -dot(g, q[m]));
            const double n = norm(g);
            for (auto& x : g) x /= n;
            q[k] = g;
        }
        return q;
    };

    Mat3 best_triad = random_triad();
    double best = score(best_triad);
    for (int s = 1; s < samples; ++s) {
        const Mat3 q = random_triad();
        if (const double v = score(q); v > best) {
            best = v;
            best_triad = q;
        }
    }

    // Local search: rotate the incumbent triad about random axes (Rodrigues).
    double step = 0.3;
    int failures = 0;
    for (int iter = 0; iter < 50000 && step > 1e-7; ++iter) {
        Vec3 axis{gauss(rng), gauss(rng), gauss(rng)};
        const double n = norm(axis);
        for (auto& x : axis) x /= n;
        const double c = std::cos(step);
        const double sn = std::sin(step);
        Mat3 q{};
        for (std::size_t k = 0; k < 3; ++k) {
            const Vec3& v = best_triad[k];
            const Vec3 cross{axis[1] * v[2] - axis[2] * v[1], axis[2] * v[0] - axis[0] * v[2],
                             axis[0] * v[1] - axis[1] * v[0]};
            const double proj = dot(axis, v);
            for (std::size_t i = 0; i < 3; ++i) q[k][i] = v[i] * c + cross[i] * sn + axis[i] * proj * (1.0 - c);
        }
        if (const double v = score(q); v > best) {
            best = v;
            best_triad = q;
            failures = 0;
        } else if (++failures >= 40) {
            step *= 0.5;
            failures = 0;
        }
    }
    return best;
}

}  // namespace llbar::oracles
