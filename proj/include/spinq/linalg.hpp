// Dense complex linear algebra for small Hilbert spaces: matrices, a cyclic
// Jacobi Hermitian eigensolver, and a symmetric-tridiagonal path used by the
// two-mode Hamiltonians. All types are immutable value types once built.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace spinq {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    bool is_hermitian(double tol) const;
    double max_abs() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// Frobenius norm and entrywise distance, used all over the tests.
double frobenius_norm(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v);
Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);
double vector_norm(std::span<const Complex> v);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, orthonormal
};

// Cyclic Jacobi for Hermitian matrices. Input must be Hermitian within
// `hermiticity_tol` (entrywise, relative to the largest entry) or the call
// throws. Residuals ||A v - lambda v|| <= 1e-9 * ||A|| per pair.
EigenDecomposition hermitian_eigensolve(const ComplexMatrix& matrix,
                                        double hermiticity_tol = 1e-10);

// Real symmetric tridiagonal matrix: diag.size() = n, off.size() = n - 1,
// off[i] couples rows i and i+1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
    std::vector<double> apply(std::span<const double> v) const;
};

// All eigenvalues, ascending (implicit-shift QL, no eigenvectors).
std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t);

// Lowest eigenpair. Eigenvalue from QL, eigenvector by inverse iteration with
// a partially pivoted tridiagonal solve.
struct TridiagonalGround {
    double eigenvalue;
    std::vector<double> vector;  // unit norm
};
TridiagonalGround tridiagonal_ground_state(const SymTridiagonal& t);

}  // namespace spinq
