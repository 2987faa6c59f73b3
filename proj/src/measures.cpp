#include "llbar/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "llbar/errors.hpp"

namespace llbar {

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;
constexpr int kEpsGrid = 101;
constexpr double kDiscordCeiling = 1.0 + 1e-9;
constexpr double kRankFloor = 1e-14;

double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

double clamp_normalized(double value) {
    if (value < 0.0) return 0.0;  // below threshold, and float noise >= -1e-12 at the threshold
    return value;
}

// Golden-section maximization of a unimodal g on [lo, hi].
std::pair<double, double> golden_max(const std::function<double(double)>& g, double lo, double hi) {
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double g1 = g(x1);
    double g2 = g(x2);
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        if (g1 < g2) {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + ratio * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - ratio * (hi - lo);
            g1 = g(x1);
        }
    }
    return g1 >= g2 ? std::pair{x1, g1} : std::pair{x2, g2};
}

}  // namespace

Matrix3 correlation_tensor(const DensityMatrix& rho) {
    Matrix3 t{};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) t[i - 1][j - 1] = (rho.matrix() * pauli_product(i, j)).trace().real();
    return t;
}

double normalize_bell(double raw) { return clamp_normalized((raw - 2.0) / (2.0 * kSqrt2 - 2.0)); }

double normalize_steering(double raw) { return clamp_normalized((raw - 1.0) / (kSqrt3 - 1.0)); }

ScaledMeasure bell_chsh(const DensityMatrix& rho) {
    const Matrix3 t = correlation_tensor(rho);
    ComplexMatrix ttt(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
            ttt(i, j) = s;
        }
    const auto omega = hermitian_eigenvalues(ttt);
    const double m = std::max(0.0, omega[1] + omega[2]);
    const double raw = 2.0 * std::sqrt(m);
    return {raw, normalize_bell(raw)};
}

double bell_chsh_xstate(const DensityMatrix& rho) {
    require_x_state(rho, "bell_chsh_xstate");
    const double r14 = std::abs(rho(0, 3));
    const double r23 = std::abs(rho(1, 2));
    const double zz = rho(0, 0).real() + rho(3, 3).real() - rho(1, 1).real() - rho(2, 2).real();
    const double m1 = 8.0 * (r14 * r14 + r23 * r23);
    const double m2 = 4.0 * (r14 + r23) * (r14 + r23) + zz * zz;
    return 2.0 * std::sqrt(std::max(m1, m2));
}

ScaledMeasure steering_F3(const DensityMatrix& rho) {
    const Matrix3 t = correlation_tensor(rho);
    double frob = 0.0;
    for (const auto& row : t)
        for (double v : row) frob += v * v;
    const double raw = std::sqrt(frob);
    return {raw, normalize_steering(raw)};
}

double concurrence_xstate(const DensityMatrix& rho) {
    require_x_state(rho, "concurrence_xstate");
    const double outer = std::abs(rho(1, 2)) - std::sqrt(std::max(0.0, rho(0, 0).real() * rho(3, 3).real()));
    const double inner = std::abs(rho(0, 3)) - std::sqrt(std::max(0.0, rho(1, 1).real() * rho(2, 2).real()));
    return std::min(1.0, 2.0 * std::max({outer, inner, 0.0}));
}

double concurrence_wootters(const DensityMatrix& rho) {
    // Work in the eigenbasis of rho: with rho = sum_i l_i |v_i><v_i|, the
    // Wootters lambdas are the singular values of
    // tau_ij = sqrt(l_i l_j) <v_i| (sigma_y x sigma_y) |v_j*>.
    // Eigenvalues at rounding level are dropped so a rank-deficient rho does
    // not feed sqrt(1e-17)-sized noise into the difference below.
    const auto eig = hermitian_eigen(rho.matrix());
    const ComplexMatrix yy = pauli_product(2, 2);
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < 4; ++i)
        if (eig.eigenvalues[i] > kRankFloor) support.push_back(i);
    const std::size_t r = support.size();
    ComplexMatrix tau(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            const std::size_t i = support[a];
            const std::size_t j = support[b];
            Complex acc{};
            for (std::size_t p = 0; p < 4; ++p)
                for (std::size_t q = 0; q < 4; ++q)
                    acc += std::conj(eig.eigenvectors(p, i)) * yy(p, q) * std::conj(eig.eigenvectors(q, j));
            tau(a, b) = std::sqrt(eig.eigenvalues[i] * eig.eigenvalues[j]) * acc;
        }
    ComplexMatrix gram = tau.adjoint() * tau;
    gram = Complex(0.5) * (gram + gram.adjoint());
    std::array<double, 4> lam{};
    const auto mu = hermitian_eigenvalues(gram);
    for (std::size_t k = 0; k < r; ++k) lam[k] = std::sqrt(std::max(0.0, mu[k]));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double purity(const DensityMatrix& rho) {
    double s = 0.0;
    for (const auto& z : rho.matrix().entries()) s += std::norm(z);
    return s;
}

double binary_entropy(double x) {
    if (!std::isfinite(x) || x < -tol::kEntropyClamp || x > 1.0 + tol::kEntropyClamp)
        throw ArgumentError("binary_entropy: argument " + std::to_string(x) + " outside [0, 1]");
    x = std::clamp(x, 0.0, 1.0);
    return -xlog2x(x) - xlog2x(1.0 - x);
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    double s = 0.0;
    for (double l : hermitian_eigenvalues(rho)) s -= xlog2x(l);
    return s;
}

std::string_view to_string(CoherenceRadicand r) { return r == CoherenceRadicand::Squared ? "squared" : "linear"; }

std::string_view to_string(ConditionalTerm t) { return t == ConditionalTerm::Standard ? "standard" : "omitted"; }

double discord_F(double eps, const XStateCoefficients& x, CoherenceRadicand radicand) {
    if (!std::isfinite(eps) || eps < 0.0 || eps > 1.0)
        throw ArgumentError("discord_F: eps must lie in [0, 1] (got " + std::to_string(eps) + ")");
    const double bmax = std::max(std::abs(x.b1), std::abs(x.b2));
    const double coherence = radicand == CoherenceRadicand::Squared ? bmax * bmax : bmax;
    const double transverse = coherence * (1.0 - eps * eps);
    const double dplus = std::sqrt(std::max(0.0, transverse + (x.a + x.b3 * eps) * (x.a + x.b3 * eps)));
    const double dminus = std::sqrt(std::max(0.0, transverse + (x.a - x.b3 * eps) * (x.a - x.b3 * eps)));
    const double ae = x.a * eps;
    double f = 0.0;
    for (double arg : {1.0 + ae + dplus, 1.0 + ae - dplus, 1.0 - ae + dminus, 1.0 - ae - dminus}) {
        const double q = std::max(0.25 * arg, tol::kLogFloor);
        f += q * std::log2(q);
    }
    return f;
}

std::array<double, 4> xstate_eigenvalues(const XStateCoefficients& x) {
    const double r11 = 0.25 * (1.0 + 2.0 * x.a + x.b3);
    const double r44 = 0.25 * (1.0 - 2.0 * x.a + x.b3);
    const double r22 = 0.25 * (1.0 - x.b3);
    const double r14 = 0.25 * (x.b1 - x.b2);
    const double r23 = 0.25 * (x.b1 + x.b2);
    const double root = std::sqrt((r11 - r44) * (r11 - r44) + 4.0 * r14 * r14);
    return {0.5 * (r11 + r44 + root), 0.5 * (r11 + r44 - root), r22 + std::abs(r23), r22 - std::abs(r23)};
}

DiscordOptimum discord_optimum(const XStateCoefficients& x, DiscordConvention convention) {
    const auto objective = [&](double eps) {
        double g = discord_F(eps, x, convention.radicand);
        if (convention.term == ConditionalTerm::Standard) g += binary_entropy(0.5 * (1.0 + x.a * eps));
        return g;
    };

    double best_eps = 0.0;
    double best = objective(0.0);
    int best_index = 0;
    for (int k = 1; k < kEpsGrid; ++k) {
        const double eps = static_cast<double>(k) / (kEpsGrid - 1);
        const double g = objective(eps);
        if (g > best) {
            best = g;
            best_eps = eps;
            best_index = k;
        }
    }
    const double lo = static_cast<double>(std::max(0, best_index - 1)) / (kEpsGrid - 1);
    const double hi = static_cast<double>(std::min(kEpsGrid - 1, best_index + 1)) / (kEpsGrid - 1);
    if (const auto [eps, g] = golden_max(objective, lo, hi); g > best) {
        best = g;
        best_eps = eps;
    }

    double entropy_sum = 0.0;
    for (double g : xstate_eigenvalues(x)) entropy_sum += xlog2x(std::max(0.0, g));
    const double ha = binary_entropy(0.5 * (1.0 + x.a));
    const double value = convention.term == ConditionalTerm::Standard ? ha + entropy_sum - best
                                                                      : 1.0 - ha + entropy_sum - best;
    return {std::clamp(value, 0.0, kDiscordCeiling), best_eps};
}

double discord(const XStateCoefficients& x, DiscordConvention convention) {
    return discord_optimum(x, convention).value;
}

double discord_closed_radical(const XStateCoefficients& x) {
    return std::sqrt(std::max(0.0, x.b1 * x.b1 + x.b3 * x.b3 - x.b1 * x.b3));
}

std::optional<double> discord_closed(const XStateCoefficients& x) {
    const double arg = 0.5 * (1.0 + discord_closed_radical(x));
    const double pa = 0.5 * (1.0 + x.a);
    const double pb = 0.5 * (1.0 + x.b3);
    for (double p : {arg, pa, pb})
        if (p < 0.0 || p > 1.0) return std::nullopt;
    return binary_entropy(pa) - binary_entropy(pb) + binary_entropy(arg);
}

MeasureSet evaluate_measures(const DensityMatrix& rho, DiscordConvention convention) {
    MeasureSet m;
    const auto bell = bell_chsh(rho);
    const auto steer = steering_F3(rho);
    m.bell_raw = bell.raw;
    m.bell_norm = bell.norm;
    m.steering_raw = steer.raw;
    m.steering_norm = steer.norm;
    m.concurrence = concurrence_xstate(rho);
    m.discord = discord(xstate_from_density(rho), convention);
    m.purity = purity(rho);
    return m;
}

}  // namespace llbar
