#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "llbar/tolerances.hpp"

namespace llbar {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Sized for the 2x2 / 4x4 problems in this
// library; nothing here is tuned for large n.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] std::span<const Complex> entries() const noexcept { return data_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] ComplexMatrix transpose() const;
    [[nodiscard]] ComplexMatrix conjugate() const;
    [[nodiscard]] Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);

// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
// max_ij |m_ij - conj(m_ji)|
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = tol::kHermitianState);

// index 0 is the identity, 1..3 are sigma_x, sigma_y, sigma_z.
ComplexMatrix pauli(int index);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// sigma_i (x) sigma_j on two qubits.
ComplexMatrix pauli_product(int i, int j);

// Partial traces of a 4x4 two-qubit operator; the first factor is qubit A.
ComplexMatrix partial_trace_a(const ComplexMatrix& m);
ComplexMatrix partial_trace_b(const ComplexMatrix& m);

struct EigenResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Cyclic complex Jacobi. Stops when every off-diagonal magnitude is at most
// tol * max(1, max|m_ij|). Throws ValidationError for non-Hermitian input
// (beyond 1e-10) and NumericError when max_sweeps is exhausted.
EigenResult hermitian_eigen(const ComplexMatrix& m,
                            double tol = tol::kJacobiOffDiagonal,
                            int max_sweeps = tol::kJacobiMaxSweeps);

// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// f applied to the spectrum of a Hermitian matrix: V f(D) V^dagger.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F&& f) {
    const EigenResult eig = hermitian_eigen(m);
    const std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(eig.eigenvalues[k]);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += eig.eigenvectors(i, k) * fk * std::conj(eig.eigenvectors(j, k));
            }
        }
    }
    return out;
}

}  // namespace llbar
