#include "thermoprobe/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {

namespace {

constexpr double kProbabilityFloor = -1e-12;
constexpr double kPurityTolerance = 1e-10;

BellBasis make_bell_basis() {
  BellBasis basis;
  ComplexMatrix b0(4);
  b0(0, 0) = b0(0, 3) = b0(3, 0) = b0(3, 3) = 0.5;
  basis.projectors[0] = b0;
  for (int i = 1; i < 4; ++i) {
    // Index is n1 + 2*n2, so "identity on qubit 1, sigma_i on qubit 2" is
    // kron(sigma_i, I) in this layout.
    const ComplexMatrix local = tensor_product(pauli::by_index(i), pauli::identity());
    basis.projectors[i] = local * b0 * local;
  }
  return basis;
}

}  // namespace

void InputState::validate() const {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw ValidationError("input-state angles must be finite");
  }
  if (theta < 0.0 || theta > std::numbers::pi) {
    throw ValidationError("theta must lie in [0, pi], got " + std::to_string(theta));
  }
  if (phi < 0.0 || phi >= 2.0 * std::numbers::pi) {
    throw ValidationError("phi must lie in [0, 2 pi), got " + std::to_string(phi));
  }
}

ComplexVector InputState::ket() const {
  return {std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi)};
}

const BellBasis& bell_basis() {
  static const BellBasis basis = make_bell_basis();
  return basis;
}

DensityMatrix input_state(const InputState& s) {
  s.validate();
  const ComplexVector v = s.ket();
  return DensityMatrix(ComplexMatrix::outer(v));
}

std::array<double, 4> bell_weights(const ComplexMatrix& m) {
  if (m.dim() != 4) throw DimensionMismatch("Bell weights need a 4x4 matrix");
  std::array<double, 4> w{};
  for (std::size_t i = 0; i < 4; ++i) w[i] = trace_product(bell_basis().projectors[i], m).real();
  return w;
}

ChannelProbabilities channel_probabilities(const DensityMatrix& rho_ch) {
  ChannelProbabilities out;
  out.p = bell_weights(rho_ch.matrix());
  double total = 0.0;
  for (double& p : out.p) {
    if (p < kProbabilityFloor) {
      throw InvalidDensityMatrix("negative Bell-state population " + std::to_string(p));
    }
    p = std::max(p, 0.0);
    total += p;
  }
  for (double& p : out.p) p /= total;
  return out;
}

ComplexMatrix pauli_mixture(const std::array<double, 4>& weights, const ComplexMatrix& m) {
  if (m.dim() != 2) throw DimensionMismatch("Pauli mixture acts on 2x2 matrices");
  ComplexMatrix out(2);
  for (int i = 0; i < 4; ++i) {
    const ComplexMatrix s = pauli::by_index(i);
    out += (s * m * s) * weights[static_cast<std::size_t>(i)];
  }
  return out;
}

DensityMatrix teleport_output(const DensityMatrix& rho_ch, const DensityMatrix& rho_in) {
  if (rho_ch.dim() != 4 || rho_in.dim() != 2) {
    throw DimensionMismatch("teleportation needs a 4x4 resource and a 2x2 input");
  }
  return DensityMatrix(pauli_mixture(channel_probabilities(rho_ch).p, rho_in.matrix()));
}

ComplexMatrix teleport_output_derivative(const ComplexMatrix& drho_ch, const DensityMatrix& rho_in) {
  return pauli_mixture(bell_weights(drho_ch), rho_in.matrix()).hermitian_part();
}

DensityMatrix teleport_output_closed_form(const SensorParams& p, const ThermalPoint& t,
                                          const InputState& s) {
  s.validate();
  const ClosedFormElements e = closed_form_elements(p, t);
  const double ct = std::cos(s.theta);
  const double st = std::sin(s.theta);
  const double denom = 2.0 * e.f1;
  ComplexMatrix out(2);
  out(0, 0) = (e.f1 - (e.b1 + e.b2) * ct) / denom;
  out(1, 1) = ((e.b1 + e.b2) * ct + e.f1) / denom;
  out(0, 1) = -st * Complex(e.f2 * std::cos(s.phi), (e.b1 - e.b2) * std::sin(s.phi)) / denom;
  out(1, 0) = -st * Complex(e.f2 * std::cos(s.phi), -(e.b1 - e.b2) * std::sin(s.phi)) / denom;
  return DensityMatrix(out);
}

double uhlmann_fidelity(const DensityMatrix& rho_in, const DensityMatrix& rho_out) {
  if (rho_in.dim() != rho_out.dim()) {
    throw DimensionMismatch("fidelity needs density matrices of equal dimension");
  }
  const ComplexMatrix s = matrix_sqrt(rho_in.matrix());
  const ComplexMatrix inner = (s * rho_out.matrix() * s).hermitian_part();
  const double root_trace = matrix_sqrt(inner).trace().real();
  return root_trace * root_trace;
}

double fidelity(const DensityMatrix& rho_in, const DensityMatrix& rho_out) {
  if (rho_in.dim() != rho_out.dim()) {
    throw DimensionMismatch("fidelity needs density matrices of equal dimension");
  }
  if (std::abs(rho_in.purity() - 1.0) <= kPurityTolerance) {
    return std::max(0.0, trace_product(rho_in.matrix(), rho_out.matrix()).real());
  }
  return uhlmann_fidelity(rho_in, rho_out);
}

}  // namespace thermoprobe
