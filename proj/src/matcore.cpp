#include "thermoprobe/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {

namespace {

void check_dim(std::size_t dim) {
  if (dim > ComplexMatrix::kMaxDim) {
    throw SizeOverflow("matrix dimension " + std::to_string(dim) + " exceeds 4");
  }
  if (dim != 2 && dim != 4) {
    throw DimensionMismatch("matrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// Rotate the (p,q) plane so that a(p,q) vanishes: a <- G^dagger a G, v <- v G.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = std::conj(apq) / r;  // e^{-i alpha}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // G restricted to (p,q): [[c, s], [-s e^{-ia}, c e^{-ia}]]
  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * phase;
  const Complex gqq = c * phase;
  const std::size_t n = a.dim();

  for (std::size_t k = 0; k < n; ++k) {  // a <- a G
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // a <- G^dagger a
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

void fix_phase(ComplexMatrix& v, std::size_t col) {
  const std::size_t n = v.dim();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::abs(v(i, col)));
  // first index within rounding of the maximum, so ties resolve deterministically
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(v(i, col)) >= best - 1e-12) {
      pivot = i;
      break;
    }
  }
  const Complex z = v(pivot, col);
  const Complex rot = std::conj(z) / std::abs(z);
  for (std::size_t i = 0; i < n; ++i) v(i, col) *= rot;
  v(pivot, col) = std::abs(v(pivot, col));
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major)
    : ComplexMatrix(dim) {
  if (row_major.size() != dim * dim) {
    throw DimensionMismatch("expected " + std::to_string(dim * dim) + " entries, got " +
                            std::to_string(row_major.size()));
  }
  auto it = row_major.begin();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) (*this)(i, j) = *it++;
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) s += std::norm((*this)(i, j));
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) += rhs(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) -= rhs(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << m(i, j);
  }
  return os << ']';
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

Complex sandwich(std::span<const Complex> u, const ComplexMatrix& m, std::span<const Complex> v) {
  if (u.size() != m.dim() || v.size() != m.dim()) {
    throw DimensionMismatch("vector length does not match matrix dimension");
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) row += m(i, j) * v[j];
    s += std::conj(u[i]) * row;
  }
  return s;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da * db > ComplexMatrix::kMaxDim) {
    throw SizeOverflow("tensor product dimension " + std::to_string(da * db) + " exceeds 4");
  }
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return out;
}

ComplexVector Eigensystem::vector(std::size_t k) const {
  ComplexVector v(dim());
  for (std::size_t i = 0; i < dim(); ++i) v[i] = vectors(i, k);
  return v;
}

ComplexMatrix Eigensystem::projector(std::size_t k) const {
  const ComplexVector v = vector(k);
  return ComplexMatrix::outer(v);
}

ComplexMatrix Eigensystem::reconstruct() const {
  return matrix_function(*this, [](double x) { return x; });
}

Eigensystem hermitian_eig(const ComplexMatrix& m, const JacobiOptions& options) {
  if (!m.is_hermitian(options.hermitian_tolerance)) {
    throw NotHermitian("hermitian_eig: input is not Hermitian");
  }
  const std::size_t n = m.dim();
  ComplexMatrix a = m.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tol = options.tolerance * std::max(1.0, a.frobenius_norm());

  int sweep = 0;
  while (off_diagonal_norm(a) > tol) {
    if (sweep++ >= options.max_sweeps) {
      throw NoConvergence("hermitian_eig: off-diagonal norm above tolerance after " +
                          std::to_string(options.max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Eigensystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    fix_phase(out.vectors, k);
  }
  return out;
}

ComplexMatrix matrix_function(const Eigensystem& eig, const std::function<double(double)>& f) {
  const std::size_t n = eig.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (!std::isfinite(fk)) {
      throw DomainError("matrix_function: function undefined at eigenvalue " +
                        std::to_string(eig.values[k]));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += fk * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out.hermitian_part();
}

ComplexMatrix matrix_function(const ComplexMatrix& m, const std::function<double(double)>& f) {
  return matrix_function(hermitian_eig(m), f);
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  return matrix_function(m, [](double x) { return std::exp(x); });
}

ComplexMatrix matrix_log(const ComplexMatrix& m) {
  return matrix_function(m, [](double x) {
    return x > 0.0 ? std::log(x) : std::numeric_limits<double>::quiet_NaN();
  });
}

ComplexMatrix matrix_sqrt(const ComplexMatrix& m) {
  return matrix_function(m, [](double x) {
    if (x >= 0.0) return std::sqrt(x);
    return x >= -1e-12 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  });
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix y() { return ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}); }
ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix by_index(int i) {
  switch (i) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: throw DomainError("Pauli index must be 0..3, got " + std::to_string(i));
  }
}

}  // namespace pauli

}  // namespace thermoprobe
