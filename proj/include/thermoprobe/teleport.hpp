#pragma once

// Standard single-qubit teleportation through a mixed two-qubit resource,
// which acts on the input as a Pauli mixture weighted by the resource's
// Bell-state populations.

#include <array>

#include "thermoprobe/matcore.hpp"
#include "thermoprobe/sensor.hpp"

namespace thermoprobe {

/// Best fidelity reachable without entanglement.
inline constexpr double kClassicalFidelityThreshold = 2.0 / 3.0;

/// Pure input cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct InputState {
  double theta = 0.0;  ///< [0, pi]
  double phi = 0.0;    ///< [0, 2 pi)

  void validate() const;
  ComplexVector ket() const;
};

struct BellBasis {
  /// B_0 = |Phi+><Phi+|, B_i = (I (x) sigma_i) B_0 (I (x) sigma_i).
  std::array<ComplexMatrix, 4> projectors{ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4),
                                          ComplexMatrix(4)};
};

struct ChannelProbabilities {
  std::array<double, 4> p{};
};

const BellBasis& bell_basis();

DensityMatrix input_state(const InputState& s);

/// p_i = Tr[B_i rho_ch]. Values in [-1e-12, 0) are clamped to zero and the
/// vector renormalised; anything lower raises InvalidDensityMatrix.
ChannelProbabilities channel_probabilities(const DensityMatrix& rho_ch);

/// Raw Bell-basis weights Tr[B_i M] of an arbitrary 4x4 matrix (no clamping).
std::array<double, 4> bell_weights(const ComplexMatrix& m);

/// sum_i w_i sigma_i M sigma_i; linear in both arguments.
ComplexMatrix pauli_mixture(const std::array<double, 4>& weights, const ComplexMatrix& m);

DensityMatrix teleport_output(const DensityMatrix& rho_ch, const DensityMatrix& rho_in);

/// d rho_out / dT given d rho_ch / dT: the channel is linear in the resource.
ComplexMatrix teleport_output_derivative(const ComplexMatrix& drho_ch, const DensityMatrix& rho_in);

/// 2x2 teleported thermal state from the closed-form elements.
DensityMatrix teleport_output_closed_form(const SensorParams& p, const ThermalPoint& t,
                                          const InputState& s);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho_in) rho_out sqrt(rho_in)))^2.
/// Uses Tr[rho_in rho_out] when rho_in is pure.
double fidelity(const DensityMatrix& rho_in, const DensityMatrix& rho_out);

/// Always evaluates the square-root formula.
double uhlmann_fidelity(const DensityMatrix& rho_in, const DensityMatrix& rho_out);

}  // namespace thermoprobe
