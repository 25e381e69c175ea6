#pragma once

// Two capacitively coupled, dissimilar charge qubits in thermal equilibrium.
//
// Basis ordering is {|00>, |10>, |01>, |11>} (index = n1 + 2*n2) everywhere in
// the library. Units: hbar = k_B = 1.

#include <array>
#include <optional>

#include "thermoprobe/matcore.hpp"

namespace thermoprobe {

struct SensorParams {
  double ej1 = 1.0;  ///< Josephson energy, qubit 1
  double ej2 = 0.1;  ///< Josephson energy, qubit 2
  double em = 1.0;   ///< mutual (capacitive) coupling energy
  double ec1 = 1.0;  ///< charging energy, qubit 1
  double ec2 = 1.0;  ///< charging energy, qubit 2
  double ng1 = 0.5;  ///< gate charge, qubit 1
  double ng2 = 0.5;  ///< gate charge, qubit 2

  /// Throws ValidationError on negative or non-finite energies.
  void validate() const;
  bool at_symmetric_point() const noexcept { return ng1 == 0.5 && ng2 == 0.5; }
  /// Throws NotSymmetricPoint unless ng1 == ng2 == 0.5.
  void require_symmetric_point() const;
  /// R1 = sqrt(4 (EJ1 - EJ2)^2 + Em^2)
  double r1() const;
  /// R2 = sqrt(4 (EJ1 + EJ2)^2 + Em^2)
  double r2() const;
};

/// Bath temperature with its cached inverse. T = +inf is allowed (beta = 0).
class ThermalPoint {
 public:
  /// Throws NonPositiveTemperature for T <= 0 or NaN.
  explicit ThermalPoint(double temperature);

  double temperature() const noexcept { return temperature_; }
  double beta() const noexcept { return beta_; }

 private:
  double temperature_;
  double beta_;
};

/// Trace-one, Hermitian, positive-semidefinite matrix. Construction validates.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Throws InvalidDensityMatrix when the trace, Hermiticity or positivity
  /// checks fail by more than kTolerance. The stored matrix is the Hermitian
  /// part of the argument.
  explicit DensityMatrix(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }
  Complex operator()(std::size_t i, std::size_t j) const noexcept { return mat_(i, j); }
  /// Tr[rho^2]
  double purity() const;

  static DensityMatrix maximally_mixed(std::size_t dim);

 private:
  ComplexMatrix mat_;
};

struct SensorSpectrum {
  /// epsilon_1..epsilon_4 in labelling order: eps[0,1] = shift -/+ R1/4,
  /// eps[2,3] = shift -/+ R2/4.
  std::array<double, 4> eps{};
  double r1 = 0.0;
  double r2 = 0.0;
  /// Unit eigenvectors in the same order as eps.
  std::array<ComplexVector, 4> vecs;
  /// EJ1 == EJ2 and Em == 0: the spectrum is doubly degenerate and the basis
  /// within each level is arbitrary.
  bool degenerate_couplings = false;
  /// The closed-form vector coefficients diverge (EJ1 == EJ2 or EJ1 + EJ2 == 0)
  /// and limiting eigenvectors were substituted.
  bool singular_vectors = false;
};

/// Closed-form thermal matrix elements, all scaled by exp(-max(A1, A2)) so
/// that nothing overflows at low temperature. Every density-matrix entry is a
/// ratio of these, so the scale cancels.
struct ClosedFormElements {
  double a1 = 0.0, a2 = 0.0;  ///< A_i = R_i / 4T (unscaled)
  double f1 = 0.0, f2 = 0.0;  ///< cosh A1 +/- cosh A2
  double b1 = 0.0, b2 = 0.0;  ///< Em sinh(A_i) / R_i
  double c1 = 0.0, c2 = 0.0;  ///< (EJ1 -/+ EJ2) sinh(A_i) / R_i
  double d = 0.0;             ///< 1 / (2 F1)
  double log_scale = 0.0;     ///< max(A1, A2): true value = scaled * exp(log_scale)
};

/// E_{n1 n2} = Ec1 (ng1 - n1)^2 + Ec2 (ng2 - n2)^2 + Em (ng1 - n1)(ng2 - n2)
double electrostatic_energy(const SensorParams& p, int n1, int n2);

/// 4x4 charge-basis Hamiltonian.
ComplexMatrix build_hamiltonian(const SensorParams& p);

/// Closed-form eigenvalues and eigenvectors at the symmetric point. Every
/// returned vector satisfies H v = eps v against build_hamiltonian.
SensorSpectrum analytic_spectrum(const SensorParams& p);

/// rho = exp(-beta H) / z via the numeric eigendecomposition of H. Accepts
/// any gate charges.
DensityMatrix gibbs_state(const SensorParams& p, const ThermalPoint& t);

/// log z, with z = Tr exp(-beta H).
double log_partition_function(const SensorParams& p, const ThermalPoint& t);

ClosedFormElements closed_form_elements(const SensorParams& p, const ThermalPoint& t);

/// Thermal state assembled entry by entry from closed-form elements.
/// Symmetric point only.
DensityMatrix thermal_state_closed_form(const SensorParams& p, const ThermalPoint& t);

/// Analytic d rho / dT of the closed-form thermal state. Symmetric point only.
ComplexMatrix thermal_state_derivative(const SensorParams& p, const ThermalPoint& t);

/// Partial trace over the second qubit (n2), 4x4 -> 2x2.
ComplexMatrix trace_out_second(const ComplexMatrix& m);

}  // namespace thermoprobe
