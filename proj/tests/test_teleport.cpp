#include "thermoprobe/teleport.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "thermoprobe/errors.hpp"

using namespace thermoprobe;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix random_state(std::mt19937_64& rng, std::size_t dim, double mixing) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  ComplexMatrix rho = (a * a.adjoint()).hermitian_part();
  rho *= 1.0 / rho.trace().real();
  rho = rho * (1.0 - mixing) + ComplexMatrix::identity(dim) * (mixing / static_cast<double>(dim));
  return DensityMatrix(rho.hermitian_part());
}

}  // namespace

TEST(teleport, bell_basis_b0) {
  const ComplexMatrix& b0 = bell_basis().projectors[0];
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
      EXPECT_NEAR(std::abs(b0(i, j) - Complex(corner ? 0.5 : 0.0)), 0.0, 1e-15);
    }
}

TEST(teleport, bell_basis_invariants) {
  const auto& b = bell_basis().projectors;
  ComplexMatrix sum(4);
  for (std::size_t i = 0; i < 4; ++i) {
    sum += b[i];
    EXPECT_LT(max_abs_diff(b[i] * b[i], b[i]), 1e-15);
    EXPECT_NEAR(b[i].trace().real(), 1.0, 1e-15);
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) EXPECT_LT((b[i] * b[j]).max_abs(), 1e-15);
  }
  EXPECT_LT(max_abs_diff(sum, ComplexMatrix::identity(4)), 1e-15);
}

TEST(teleport, input_state_examples) {
  const std::array<double, 2> ground{1, 0}, excited{0, 1};
  EXPECT_LT(max_abs_diff(input_state({0, 0}).matrix(), ComplexMatrix::diagonal(ground)), 1e-15);
  const DensityMatrix plus = input_state({kPi / 2, 0});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(plus(i, j) - Complex(0.5)), 0.0, 1e-15);
  for (double phi : {0.0, 1.0, 4.0})
    EXPECT_LT(max_abs_diff(input_state({kPi, phi}).matrix(), ComplexMatrix::diagonal(excited)), 1e-15);
  EXPECT_THROW(input_state({-0.1, 0}), ValidationError);
  EXPECT_THROW(input_state({0.1, 2 * kPi}), ValidationError);
}

TEST(teleport, channel_probability_examples) {
  const ChannelProbabilities perfect = channel_probabilities(DensityMatrix(bell_basis().projectors[0]));
  EXPECT_NEAR(perfect.p[0], 1.0, 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(perfect.p[i], 0.0, 1e-15);
  const ChannelProbabilities mixed = channel_probabilities(DensityMatrix::maximally_mixed(4));
  for (double p : mixed.p) EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(teleport, channel_probabilities_from_thermal_entries) {
  const DensityMatrix rho = thermal_state_closed_form(SensorParams{1, 0.1, 1}, ThermalPoint(0.5));
  const ChannelProbabilities c = channel_probabilities(rho);
  EXPECT_NEAR(c.p[0], (rho(0, 0) + rho(0, 3)).real(), 1e-14);
  EXPECT_NEAR(c.p[3], (rho(0, 0) - rho(0, 3)).real(), 1e-14);
  EXPECT_NEAR(c.p[1], (rho(1, 1) + rho(1, 2)).real(), 1e-14);
  EXPECT_NEAR(c.p[2], (rho(1, 1) - rho(1, 2)).real(), 1e-14);
}

TEST(teleport, perfect_and_useless_resource) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix in = random_state(rng, 2, 0.0);
    EXPECT_LT(max_abs_diff(teleport_output(DensityMatrix(bell_basis().projectors[0]), in).matrix(), in.matrix()), 1e-14);
    EXPECT_LT(max_abs_diff(teleport_output(DensityMatrix::maximally_mixed(4), in).matrix(),
                           ComplexMatrix::identity(2) * 0.5),
              1e-15);
  }
}

TEST(teleport, closed_form_matches_composition_fig5) {
  const SensorParams p{1.0, 0.05, 0.5};
  const InputState s{kPi / 2, kPi};
  const DensityMatrix composed = teleport_output(gibbs_state(p, ThermalPoint(0.5)), input_state(s));
  EXPECT_LT(max_abs_diff(composed.matrix(), teleport_output_closed_form(p, ThermalPoint(0.5), s).matrix()), 1e-12);
}

TEST(teleport, closed_form_theta_zero_is_diagonal) {
  const SensorParams p{2.0, 0.8, 1.0};
  const ThermalPoint t(0.3);
  const DensityMatrix out = teleport_output_closed_form(p, t, {0.0, 1.1});
  const ClosedFormElements e = closed_form_elements(p, t);
  EXPECT_NEAR(std::abs(out(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(out(0, 0).real(), (e.f1 - (e.b1 + e.b2)) / (2 * e.f1), 1e-13);
  EXPECT_NEAR(out(1, 1).real(), (e.f1 + (e.b1 + e.b2)) / (2 * e.f1), 1e-13);
}

TEST(teleport, closed_form_high_temperature) {
  const DensityMatrix out = teleport_output_closed_form(SensorParams{1, 0.1, 1}, ThermalPoint(1e9), {1.0, 2.0});
  EXPECT_LT(max_abs_diff(out.matrix(), ComplexMatrix::identity(2) * 0.5), 1e-9);
}

TEST(teleport, closed_form_generic_params) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> e(0.05, 4.0), t(0.05, 5.0), th(0.0, kPi), ph(0.0, 2 * kPi - 1e-9);
  for (int k = 0; k < 300; ++k) {
    const SensorParams p{e(rng), e(rng), e(rng)};
    const ThermalPoint tp(t(rng));
    const InputState s{th(rng), ph(rng)};
    EXPECT_LT(max_abs_diff(teleport_output(gibbs_state(p, tp), input_state(s)).matrix(),
                           teleport_output_closed_form(p, tp, s).matrix()),
              1e-10);
  }
}

TEST(teleport, random_channels_trace_and_positivity) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 500; ++k) {
    const DensityMatrix ch = random_state(rng, 4, 0.0);
    const DensityMatrix in = random_state(rng, 2, 0.0);
    const DensityMatrix out = teleport_output(ch, in);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(hermitian_eig(out.matrix()).values[0], -1e-12);
    const double f = fidelity(in, out);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
    EXPECT_NEAR(f, uhlmann_fidelity(in, out), 1e-10);
    // unitality
    EXPECT_LT(max_abs_diff(teleport_output(ch, DensityMatrix::maximally_mixed(2)).matrix(),
                           ComplexMatrix::identity(2) * 0.5),
              1e-12);
  }
}

TEST(teleport, fidelity_mixed_states) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix a = random_state(rng, 2, 0.4);
    const DensityMatrix b = random_state(rng, 2, 0.3);
    const double f = fidelity(a, b);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
    EXPECT_NEAR(f, fidelity(b, a), 1e-10);
    EXPECT_NEAR(fidelity(a, a), 1.0, 1e-10);
  }
}

TEST(teleport, derivative_is_linear_image) {
  const SensorParams p{1.0, 0.05, 0.5};
  const DensityMatrix in = input_state({kPi / 2, kPi});
  const double t = 0.4, h = 1e-5;
  const ComplexMatrix fd = (teleport_output(gibbs_state(p, ThermalPoint(t + h)), in).matrix() -
                            teleport_output(gibbs_state(p, ThermalPoint(t - h)), in).matrix()) *
                           (1.0 / (2 * h));
  const ComplexMatrix d = teleport_output_derivative(thermal_state_derivative(p, ThermalPoint(t)), in);
  EXPECT_LT((d - fd).frobenius_norm() / d.frobenius_norm(), 1e-6);
}
