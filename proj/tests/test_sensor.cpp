#include "thermoprobe/sensor.hpp"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/metrology.hpp"

using namespace thermoprobe;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

}  // namespace

TEST(sensor, electrostatic_energy_symmetric_point) {
  const SensorParams p{1.0, 0.1, 0.7, 1.3, 0.9};
  EXPECT_NEAR(electrostatic_energy(p, 0, 0), 1.3 / 4 + 0.9 / 4 + 0.7 / 4, 1e-15);
  EXPECT_NEAR(electrostatic_energy(p, 0, 1), 1.3 / 4 + 0.9 / 4 - 0.7 / 4, 1e-15);
  EXPECT_NEAR(electrostatic_energy(p, 1, 1), electrostatic_energy(p, 0, 0), 1e-15);
}

TEST(sensor, params_validation) {
  EXPECT_THROW((SensorParams{-1.0}).validate(), ValidationError);
  EXPECT_THROW((SensorParams{1.0, 0.1, std::numeric_limits<double>::quiet_NaN()}).validate(), ValidationError);
  EXPECT_THROW(ThermalPoint(0.0), NonPositiveTemperature);
  EXPECT_THROW(ThermalPoint(-1.0), NonPositiveTemperature);
  EXPECT_EQ(ThermalPoint(std::numeric_limits<double>::infinity()).beta(), 0.0);
}

TEST(sensor, hamiltonian_without_couplings_is_diagonal) {
  const SensorParams p{0.0, 0.0, 0.8};
  const ComplexMatrix h = build_hamiltonian(p);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) EXPECT_EQ(h(i, j), Complex(0.0));
  EXPECT_DOUBLE_EQ(h(0, 0).real(), electrostatic_energy(p, 0, 0));
  EXPECT_DOUBLE_EQ(h(1, 1).real(), electrostatic_energy(p, 1, 0));
  EXPECT_DOUBLE_EQ(h(2, 2).real(), electrostatic_energy(p, 0, 1));
  EXPECT_DOUBLE_EQ(h(3, 3).real(), electrostatic_energy(p, 1, 1));
}

TEST(sensor, hamiltonian_real_symmetric) {
  const ComplexMatrix h = build_hamiltonian(SensorParams{1.0, 0.1, 1.0});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(h(i, j).imag(), 0.0);
      EXPECT_EQ(h(i, j), h(j, i));
    }
}

TEST(sensor, spectrum_single_qubit_limit) {
  const SensorParams p{1.4, 0.0, 0.0};
  const SensorSpectrum s = analytic_spectrum(p);
  EXPECT_NEAR(s.r1, 2.8, 1e-14);
  EXPECT_NEAR(s.r2, 2.8, 1e-14);
  const double shift = 0.5;
  EXPECT_NEAR(s.eps[0], shift - 0.7, 1e-14);
  EXPECT_NEAR(s.eps[2], shift - 0.7, 1e-14);
  EXPECT_NEAR(s.eps[1], shift + 0.7, 1e-14);
  EXPECT_NEAR(s.eps[3], shift + 0.7, 1e-14);
}

TEST(sensor, spectrum_diagonal_limit) {
  const SensorParams p{0.0, 0.0, 0.6};
  const SensorSpectrum s = analytic_spectrum(p);
  EXPECT_NEAR(s.r1, 0.6, 1e-14);
  EXPECT_NEAR(s.r2, 0.6, 1e-14);
  EXPECT_NEAR(s.eps[0], 0.5 - 0.15, 1e-14);
  EXPECT_NEAR(s.eps[3], 0.5 + 0.15, 1e-14);
}

TEST(sensor, spectrum_ordering_and_eigenvectors) {
  // eps3 <= eps1 <= eps2 <= eps4 (R2 >= R1)
  for (double ej1 : linspace(0.01, 4.0, 9))
    for (double ej2 : linspace(0.01, 4.0, 9))
      for (double em : linspace(0.0, 4.0, 9)) {
        const SensorParams p{ej1, ej2, em};
        const SensorSpectrum s = analytic_spectrum(p);
        EXPECT_LE(s.eps[2], s.eps[0] + 1e-14);
        EXPECT_LE(s.eps[0], s.eps[1]);
        EXPECT_LE(s.eps[1], s.eps[3] + 1e-14);
        const ComplexMatrix h = build_hamiltonian(p);
        for (std::size_t k = 0; k < 4; ++k) {
          const ComplexVector& v = s.vecs[k];
          for (std::size_t i = 0; i < 4; ++i) {
            Complex hv = 0.0;
            for (std::size_t j = 0; j < 4; ++j) hv += h(i, j) * v[j];
            EXPECT_NEAR(std::abs(hv - s.eps[k] * v[i]), 0.0, 1e-12);
          }
        }
        std::vector<double> sorted(s.eps.begin(), s.eps.end());
        std::sort(sorted.begin(), sorted.end());
        const Eigensystem e = hermitian_eig(h);
        for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(sorted[k], e.values[k], 1e-10);
      }
}

TEST(sensor, analytic_ops_reject_asymmetric_point) {
  SensorParams p;
  p.ng1 = 0.3;
  EXPECT_NO_THROW(build_hamiltonian(p));
  EXPECT_NO_THROW(gibbs_state(p, ThermalPoint(0.5)));
  EXPECT_THROW(analytic_spectrum(p), NotSymmetricPoint);
  EXPECT_THROW(thermal_state_closed_form(p, ThermalPoint(0.5)), NotSymmetricPoint);
}

TEST(sensor, gibbs_infinite_temperature) {
  const DensityMatrix rho = gibbs_state(SensorParams{}, ThermalPoint(std::numeric_limits<double>::infinity()));
  EXPECT_TRUE(rho.matrix() == ComplexMatrix::identity(4) * 0.25);
}

TEST(sensor, gibbs_matches_closed_form_examples) {
  EXPECT_LT(max_abs_diff(gibbs_state(SensorParams{1, 0.1, 1}, ThermalPoint(0.5)).matrix(),
                         thermal_state_closed_form(SensorParams{1, 0.1, 1}, ThermalPoint(0.5)).matrix()),
            1e-10);
  EXPECT_LT(max_abs_diff(gibbs_state(SensorParams{2, 0.8, 1}, ThermalPoint(0.3)).matrix(),
                         thermal_state_closed_form(SensorParams{2, 0.8, 1}, ThermalPoint(0.3)).matrix()),
            1e-10);
}

TEST(sensor, closed_form_high_temperature) {
  const DensityMatrix rho = thermal_state_closed_form(SensorParams{1, 0.1, 1}, ThermalPoint(1e9));
  EXPECT_LT(max_abs_diff(rho.matrix(), ComplexMatrix::identity(4) * 0.25), 1e-9);
}

TEST(sensor, gibbs_shift_invariance) {
  for (double c : {0.5, 3.0, 25.0}) {
    const SensorParams p{1.0, 0.1, 1.0};
    SensorParams q = p;
    q.ec1 += c;
    for (double t : {0.05, 0.5, 5.0}) {
      EXPECT_LT(max_abs_diff(gibbs_state(p, ThermalPoint(t)).matrix(), gibbs_state(q, ThermalPoint(t)).matrix()), 1e-12);
    }
  }
}

TEST(sensor, positivity_and_route_equivalence_grid) {
  const std::vector<double> grid = linspace(0.01, 4.0, 20);
  for (double ej1 : grid)
    for (double em : grid)
      for (double t : {0.05, 0.5, 5.0}) {
        const SensorParams p{ej1, 0.1, em};
        const DensityMatrix g = gibbs_state(p, ThermalPoint(t));
        const DensityMatrix c = thermal_state_closed_form(p, ThermalPoint(t));
        ASSERT_LE(max_abs_diff(g.matrix(), c.matrix()), 1e-10) << "ej1=" << ej1 << " em=" << em << " T=" << t;
        EXPECT_GE(hermitian_eig(g.matrix()).values[0], -1e-12);
        EXPECT_GE(hermitian_eig(c.matrix()).values[0], -1e-12);
      }
}

TEST(sensor, low_temperature_no_overflow) {
  // R2 = sqrt(em^2 + 4 (ej1 + ej2)^2) = 10 -> A2 = 2500 at T = 1e-3
  const SensorParams p{3.0, 1.0, 6.0};
  ASSERT_NEAR(p.r2(), 10.0, 1e-12);
  const DensityMatrix rho = thermal_state_closed_form(p, ThermalPoint(1e-3));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_TRUE(std::isfinite(std::abs(rho(i, j))));
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_LT(max_abs_diff(rho.matrix(), gibbs_state(p, ThermalPoint(1e-3)).matrix()), 1e-10);
  const ComplexMatrix d = thermal_state_derivative(p, ThermalPoint(1e-3));
  EXPECT_TRUE(std::isfinite(d.frobenius_norm()));
}

TEST(sensor, derivative_matches_finite_difference) {
  const SensorParams p{1.0, 0.05, 0.5};
  const ComplexMatrix analytic = thermal_state_derivative(p, ThermalPoint(0.4));
  const ComplexMatrix numeric = finite_difference(thermal_family(p), 0.4);
  EXPECT_LT((analytic - numeric).frobenius_norm() / analytic.frobenius_norm(), 1e-6);
  EXPECT_NEAR(analytic.trace().real(), 0.0, 1e-14);
  EXPECT_TRUE(analytic.is_hermitian());
}

TEST(sensor, derivative_vanishes_at_high_temperature) {
  EXPECT_LT(thermal_state_derivative(SensorParams{1, 0.1, 1}, ThermalPoint(1e6)).max_abs(), 1e-10);
}

TEST(sensor, partition_function_consistent) {
  const SensorParams p{1.0, 0.1, 1.0};
  const SensorSpectrum s = analytic_spectrum(p);
  const double t = 0.7;
  double z = 0.0;
  for (double e : s.eps) z += std::exp(-e / t);
  EXPECT_NEAR(log_partition_function(p, ThermalPoint(t)), std::log(z), 1e-12);
}

TEST(sensor, density_matrix_validation) {
  ComplexMatrix bad = ComplexMatrix::identity(2);
  EXPECT_THROW(DensityMatrix{bad}, InvalidDensityMatrix);
  const std::array<double, 2> neg{1.5, -0.5};
  EXPECT_THROW(DensityMatrix{ComplexMatrix::diagonal(neg)}, InvalidDensityMatrix);
  EXPECT_NEAR(DensityMatrix::maximally_mixed(4).purity(), 0.25, 1e-15);
}

TEST(sensor, partial_trace) {
  const DensityMatrix rho = gibbs_state(SensorParams{1, 0.1, 1}, ThermalPoint(0.5));
  const ComplexMatrix a = trace_out_second(rho.matrix());
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_NEAR(a.trace().real(), 1.0, 1e-14);
  EXPECT_LT(max_abs_diff(trace_out_second(ComplexMatrix::identity(4) * 0.25), ComplexMatrix::identity(2) * 0.5), 1e-15);
}
