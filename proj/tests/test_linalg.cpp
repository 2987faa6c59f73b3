#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "llbar/errors.hpp"
#include "llbar/linalg.hpp"

using namespace llbar;

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = g(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = Complex(g(rng), g(rng));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("pauli algebra") {
    const Complex i(0.0, 1.0);
    CHECK(max_abs_diff(pauli(1) * pauli(2), i * pauli(3)) == 0.0);
    CHECK(max_abs_diff(pauli(2) * pauli(3), i * pauli(1)) == 0.0);
    for (int k = 0; k < 4; ++k) CHECK(max_abs_diff(pauli(k) * pauli(k), ComplexMatrix::identity(2)) == 0.0);
    CHECK_THROWS_AS(pauli(4), ArgumentError);
    CHECK_THROWS_AS(pauli(-1), ArgumentError);
}

TEST_CASE("kron and partial traces") {
    const ComplexMatrix zz = pauli_product(3, 3);
    CHECK(zz(0, 0) == Complex(1.0));
    CHECK(zz(1, 1) == Complex(-1.0));
    CHECK(zz(2, 2) == Complex(-1.0));
    CHECK(zz(3, 3) == Complex(1.0));
    CHECK_THROWS_AS(kron(ComplexMatrix::identity(4), pauli(1)), ArgumentError);

    // |Phi+><Phi+| has maximally mixed marginals.
    ComplexMatrix bell(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    CHECK(max_abs_diff(partial_trace_a(bell), Complex(0.5) * ComplexMatrix::identity(2)) < 1e-15);
    CHECK(max_abs_diff(partial_trace_b(bell), Complex(0.5) * ComplexMatrix::identity(2)) < 1e-15);

    // Tr_B(A (x) B) = A Tr B
    const ComplexMatrix a{{1.0, Complex(0.0, 2.0)}, {Complex(0.0, -2.0), 3.0}};
    const ComplexMatrix b{{0.25, 0.1}, {0.1, 0.75}};
    CHECK(max_abs_diff(partial_trace_b(kron(a, b)), a) < 1e-15);
    CHECK(max_abs_diff(partial_trace_a(kron(a, b)), Complex(4.0) * b) < 1e-15);
}

TEST_CASE("ragged and mismatched shapes are rejected") {
    CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), ArgumentError);
    CHECK_THROWS_AS(ComplexMatrix(2, 2) + ComplexMatrix(3, 3), ArgumentError);
    CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), ArgumentError);
    CHECK_THROWS_AS(static_cast<void>(ComplexMatrix(2, 3).trace()), ArgumentError);
}

TEST_CASE("hermitian_eigen on a known 2x2") {
    const ComplexMatrix m{{2.0, Complex(0.0, 1.0)}, {Complex(0.0, -1.0), 2.0}};
    const auto r = hermitian_eigen(m);
    REQUIRE(r.eigenvalues.size() == 2);
    CHECK(r.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen reconstructs random Hermitian matrices") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix m = random_hermitian(rng, 4);
        const auto r = hermitian_eigen(m);
        for (std::size_t k = 1; k < 4; ++k) CHECK(r.eigenvalues[k - 1] <= r.eigenvalues[k]);
        const ComplexMatrix& u = r.eigenvectors;
        CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(4)) < 1e-13);
        const ComplexMatrix back = u * ComplexMatrix::diagonal(r.eigenvalues) * u.adjoint();
        CHECK(max_abs_diff(back, m) < 1e-12);
    }
}

TEST_CASE("hermitian_eigen handles degenerate and diagonal input") {
    const auto r = hermitian_eigen(ComplexMatrix::identity(4));
    for (double l : r.eigenvalues) CHECK(l == doctest::Approx(1.0));
    const std::vector<double> d{3.0, -1.0, 2.0, 0.0};
    const auto s = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
    CHECK(s == std::vector<double>{-1.0, 0.0, 2.0, 3.0});
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
    const ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(hermitian_eigen(m), ValidationError);
    CHECK_FALSE(is_hermitian(m));
    CHECK(hermiticity_defect(m) == doctest::Approx(2.0));
}

TEST_CASE("hermitian_function square root") {
    std::mt19937_64 rng(99);
    const ComplexMatrix h = random_hermitian(rng, 4);
    const ComplexMatrix psd = h * h.adjoint();
    const ComplexMatrix root = hermitian_function(psd, [](double l) { return std::sqrt(std::max(0.0, l)); });
    CHECK(max_abs_diff(root * root, psd) < 1e-11);
}
