#pragma once

// Dense complex matrices sized for two-qubit work (2x2 and 4x4).
//
// Storage is row-major. A ComplexMatrix is a value: every operation returns a
// new matrix and nothing mutates an existing one after construction.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qmem/errors.hpp"

namespace qmem {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  /// Zero matrix. Throws InvalidArgument for a zero dimension.
  ComplexMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of row-major entries. Throws InvalidArgument when the
  /// size does not match or an entry is not finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  /// Row-by-row literal, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  /// Copy with entry (i, j) replaced.
  ComplexMatrix with_entry(std::size_t i, std::size_t j, Complex value) const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

/// Kronecker product; entry (i*b.rows+k, j*b.cols+l) = a(i,j) * b(k,l).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);
/// Entrywise complex conjugate (no transpose).
ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);

/// max |a(i,j) - b(i,j)|. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |a(i,j) - conj(a(j,i))|. Square input only.
double hermiticity_residual(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. `values` are sorted descending and `vectors` holds the matching
/// orthonormal eigenvectors as columns.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Throws InvalidArgument unless `a` is square and Hermitian within 1e-10.
HermitianEigen eigen_hermitian(const ComplexMatrix& a);
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& a);

/// Eigenvalues of an arbitrary square matrix (Hessenberg reduction followed by
/// single-shift complex QR). Order is unspecified; imaginary parts are kept.
/// Throws NumericalFailure if the iteration does not converge.
std::vector<Complex> eigenvalues_general(const ComplexMatrix& a);

/// Singular values by one-sided Jacobi, sorted descending. Small singular
/// values carry absolute error of order eps * ||a||.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Principal square root of a Hermitian positive-semidefinite matrix.
/// Eigenvalues below `rank_tol * lambda_max` (including small negative ones)
/// are treated as exact zeros.
ComplexMatrix sqrt_psd(const ComplexMatrix& a, double rank_tol);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// Index 0..3 -> I, X, Y, Z.
ComplexMatrix by_index(int i);
}  // namespace pauli

}  // namespace qmem
