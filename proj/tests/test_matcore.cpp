#include "thermoprobe/matcore.hpp"

#include <array>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "thermoprobe/errors.hpp"

using namespace thermoprobe;

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    h(i, i) = u(rng);
    for (std::size_t j = i + 1; j < dim; ++j) {
      h(i, j) = Complex(u(rng), u(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

}  // namespace

TEST(matcore, eig_identity) {
  const Eigensystem e = hermitian_eig(ComplexMatrix::identity(2));
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 1.0, 1e-15);
  EXPECT_LT(max_abs_diff(e.reconstruct(), ComplexMatrix::identity(2)), 1e-14);
}

TEST(matcore, eig_diagonal) {
  const std::array<double, 2> d{3.0, -2.0};
  const Eigensystem e = hermitian_eig(ComplexMatrix::diagonal(d));
  EXPECT_DOUBLE_EQ(e.values[0], -2.0);
  EXPECT_DOUBLE_EQ(e.values[1], 3.0);
  EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1.0, 1e-15);
}

TEST(matcore, eig_pauli_x) {
  const Eigensystem e = hermitian_eig(pauli::x());
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
  const ComplexVector v0 = e.vector(0);
  const ComplexVector v1 = e.vector(1);
  EXPECT_NEAR(std::abs(v0[0] + v0[1]), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(v1[0] - v1[1]), 0.0, 1e-14);
  // largest entry real positive
  EXPECT_NEAR(v1[0].imag(), 0.0, 1e-15);
  EXPECT_GT(v1[0].real(), 0.0);
}

TEST(matcore, eig_rejects_non_hermitian) {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eig(m), NotHermitian);
}

TEST(matcore, random_hermitian_reconstruction) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const ComplexMatrix h = random_hermitian(rng, 4, 3.0);
    const Eigensystem e = hermitian_eig(h);
    EXPECT_LT(max_abs_diff(e.reconstruct(), h), 1e-11 * std::max(1.0, h.frobenius_norm()));
    for (std::size_t i = 1; i < 4; ++i) EXPECT_LE(e.values[i - 1], e.values[i]);
    const ComplexMatrix gram = e.vectors.adjoint() * e.vectors;
    EXPECT_LT(max_abs_diff(gram, ComplexMatrix::identity(4)), 1e-12);
  }
}

TEST(matcore, eig_is_deterministic) {
  std::mt19937_64 rng(5);
  const ComplexMatrix h = random_hermitian(rng, 4);
  const Eigensystem a = hermitian_eig(h);
  const Eigensystem b = hermitian_eig(h);
  EXPECT_EQ(a.values, b.values);
  EXPECT_TRUE(a.vectors == b.vectors);
}

TEST(matcore, degenerate_eigenspace_reconstructs) {
  const std::array<double, 4> d{1.0, 1.0, 2.0, 2.0};
  std::mt19937_64 rng(9);
  // rotate a degenerate diagonal matrix by a random unitary from an eigenbasis
  const Eigensystem u = hermitian_eig(random_hermitian(rng, 4));
  const ComplexMatrix m = u.vectors * ComplexMatrix::diagonal(d) * u.vectors.adjoint();
  const Eigensystem e = hermitian_eig(m.hermitian_part());
  EXPECT_LT(max_abs_diff(e.reconstruct(), m), 1e-12);
  EXPECT_NEAR(e.values[0], 1.0, 1e-12);
  EXPECT_NEAR(e.values[3], 2.0, 1e-12);
}

TEST(matcore, tensor_product_examples) {
  EXPECT_TRUE(tensor_product(pauli::identity(), pauli::identity()) == ComplexMatrix::identity(4));
  const std::array<double, 4> zi{1, 1, -1, -1};
  EXPECT_TRUE(tensor_product(pauli::z(), pauli::identity()) == ComplexMatrix::diagonal(zi));
  const std::array<double, 2> p0{1, 0}, p1{0, 1};
  const ComplexMatrix k = tensor_product(ComplexMatrix::diagonal(p0), ComplexMatrix::diagonal(p1));
  const std::array<double, 4> e1{0, 1, 0, 0};
  EXPECT_TRUE(k == ComplexMatrix::diagonal(e1));
  EXPECT_THROW(tensor_product(k, pauli::x()), SizeOverflow);
}

TEST(matcore, tensor_product_bilinear) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 2), c = random_hermitian(rng, 2);
    const Complex s(0.3, -1.2);
    EXPECT_LT(max_abs_diff(tensor_product(a + b * s, c), tensor_product(a, c) + tensor_product(b, c) * s), 1e-14);
    EXPECT_LT(max_abs_diff(tensor_product(c, a + b * s), tensor_product(c, a) + tensor_product(c, b) * s), 1e-14);
  }
}

TEST(matcore, matrix_function_examples) {
  EXPECT_LT(max_abs_diff(matrix_exp(ComplexMatrix(4)), ComplexMatrix::identity(4)), 1e-15);
  const std::array<double, 2> d{4.0, 9.0}, r{2.0, 3.0};
  EXPECT_LT(max_abs_diff(matrix_sqrt(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(r)), 1e-15);
  const std::array<double, 2> ab{0.5, -1.5}, eab{std::exp(0.5), std::exp(-1.5)};
  EXPECT_LT(max_abs_diff(matrix_exp(ComplexMatrix::diagonal(ab)), ComplexMatrix::diagonal(eab)), 1e-15);
}

TEST(matcore, exp_log_round_trip) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const ComplexMatrix h = random_hermitian(rng, 4);
    EXPECT_LT(max_abs_diff(matrix_log(matrix_exp(h)), h), 1e-11);
  }
}

TEST(matcore, log_of_singular_is_domain_error) {
  const std::array<double, 2> d{1.0, 0.0};
  EXPECT_THROW(matrix_log(ComplexMatrix::diagonal(d)), DomainError);
}

TEST(matcore, sqrt_squares_back) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix a = random_hermitian(rng, 4);
    const ComplexMatrix psd = (a * a).hermitian_part();
    const ComplexMatrix s = matrix_sqrt(psd);
    EXPECT_LT(max_abs_diff(s * s, psd), 1e-11);
  }
}

TEST(matcore, pauli_algebra) {
  const ComplexMatrix i2 = pauli::identity();
  EXPECT_TRUE(pauli::x() * pauli::x() == i2);
  EXPECT_LT(max_abs_diff(pauli::x() * pauli::y(), pauli::z() * Complex(0, 1)), 1e-15);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(pauli::by_index(i).is_hermitian());
}
