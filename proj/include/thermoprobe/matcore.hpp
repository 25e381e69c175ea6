#pragma once

// Dense complex linear algebra for the 2x2 and 4x4 Hermitian matrices that
// show up in two-qubit thermometry. Everything here is a pure function of
// its arguments.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace thermoprobe {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Square complex matrix of dimension 2 or 4, stored row-major inline.
class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  /// Zero matrix. Throws SizeOverflow for dim > 4 and DimensionMismatch for
  /// anything other than 2 or 4.
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> entries);
  /// |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * kMaxDim + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * kMaxDim + j];
  }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// Largest |M(i,j)|.
  double max_abs() const;
  bool is_hermitian(double tol = 1e-12) const;
  /// (M + M^dagger) / 2
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m);

/// max_ij |a(i,j) - b(i,j)|; throws DimensionMismatch on unequal dims.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr[A B] without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// <u|M|v>
Complex sandwich(std::span<const Complex> u, const ComplexMatrix& m, std::span<const Complex> v);

/// Kronecker product, out[(i*dB+k),(j*dB+l)] = A(i,j) B(k,l).
/// Throws SizeOverflow when the result would exceed 4x4.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct Eigensystem {
  /// Ascending.
  std::vector<double> values;
  /// Column k is the unit eigenvector for values[k]. Each column is phased so
  /// its largest-magnitude entry is real and positive.
  ComplexMatrix vectors{2};

  std::size_t dim() const noexcept { return values.size(); }
  ComplexVector vector(std::size_t k) const;
  ComplexMatrix projector(std::size_t k) const;
  /// sum_k lambda_k v_k v_k^dagger
  ComplexMatrix reconstruct() const;
};

struct JacobiOptions {
  /// Bound on the off-diagonal Frobenius norm, scaled by max(1, ||M||_F).
  double tolerance = 1e-13;
  int max_sweeps = 100;
  /// Hermiticity check applied before diagonalising.
  double hermitian_tolerance = 1e-12;
};

/// Cyclic complex Jacobi diagonalisation.
/// Throws NotHermitian or NoConvergence.
Eigensystem hermitian_eig(const ComplexMatrix& m, const JacobiOptions& options = {});

/// sum_k f(lambda_k) v_k v_k^dagger. Throws DomainError if f returns a
/// non-finite value on the spectrum.
ComplexMatrix matrix_function(const ComplexMatrix& m, const std::function<double(double)>& f);
ComplexMatrix matrix_function(const Eigensystem& eig, const std::function<double(double)>& f);

ComplexMatrix matrix_exp(const ComplexMatrix& m);
/// Principal log of a positive-definite matrix.
ComplexMatrix matrix_log(const ComplexMatrix& m);
/// Eigenvalues in [-1e-12, 0) are clamped to zero; anything more negative
/// raises DomainError.
ComplexMatrix matrix_sqrt(const ComplexMatrix& m);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// sigma_0..sigma_3 = I, X, Y, Z
ComplexMatrix by_index(int i);
}  // namespace pauli

}  // namespace thermoprobe
