#include "thermoprobe/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {

namespace {

constexpr double kSupportWarning = 1e-10;
constexpr double kPovmTolerance = 1e-10;
constexpr double kPsdTolerance = 1e-12;
constexpr double kSpeedTolerance = 1e-6;
constexpr int kMaxHalvings = 20;

// d rho expressed in the eigenbasis of rho: M = V^dagger d rho V.
ComplexMatrix in_eigenbasis(const Eigensystem& eig, const ComplexMatrix& m) {
  return eig.vectors.adjoint() * m * eig.vectors;
}

}  // namespace

const char* to_string(DerivativeSource s) noexcept {
  switch (s) {
    case DerivativeSource::analytic: return "analytic";
    case DerivativeSource::finite_difference: return "finite_difference";
  }
  return "unknown";
}

QfiReport qfi(const DensityMatrix& rho, const ComplexMatrix& drho, const QfiOptions& options) {
  if (rho.dim() != drho.dim()) throw DimensionMismatch("qfi: rho and d rho differ in dimension");
  const Eigensystem eig = hermitian_eig(rho.matrix());
  const ComplexMatrix m = in_eigenbasis(eig, drho.hermitian_part());
  const std::size_t n = eig.dim();

  QfiReport report;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double la = eig.values[a];
      const double lb = eig.values[b];
      const double numerator = 2.0 * std::norm(m(a, b));
      if (la + lb <= options.cutoff) {
        ++report.skipped_terms;
        report.dropped_numerator = std::max(report.dropped_numerator, numerator);
        continue;
      }
      const double term = numerator / (la + lb);
      report.total += term;

      const double gap = la - lb;
      if (std::abs(gap) <= options.degeneracy_tolerance) {
        // Within a (near-)degenerate level the pair sum is exactly the
        // population term of a basis that diagonalises d rho on the level.
        report.classical_part += term;
      } else {
        // <psi_b | d psi_a> = <psi_b | d rho | psi_a> / (lambda_a - lambda_b)
        const double overlap = std::norm(m(b, a)) / (gap * gap);
        report.quantum_part += 2.0 * gap * gap / (la + lb) * overlap;
      }
    }
  }
  report.degenerate_support = report.skipped_terms > 0 && report.dropped_numerator > kSupportWarning;
  return report;
}

QfiReport qfi(const ParameterizedState& state, double at, const QfiOptions& options) {
  const DensityMatrix rho = state.evaluate(at);
  if (state.derivative) {
    QfiReport r = qfi(rho, state.derivative(at), options);
    r.derivative_source = DerivativeSource::analytic;
    return r;
  }
  QfiReport r = qfi(rho, finite_difference(state, at), options);
  r.derivative_source = DerivativeSource::finite_difference;
  return r;
}

ComplexMatrix sld(const DensityMatrix& rho, const ComplexMatrix& drho, double cutoff) {
  if (rho.dim() != drho.dim()) throw DimensionMismatch("sld: rho and d rho differ in dimension");
  const Eigensystem eig = hermitian_eig(rho.matrix());
  const ComplexMatrix m = in_eigenbasis(eig, drho.hermitian_part());
  const std::size_t n = eig.dim();
  ComplexMatrix l(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double s = eig.values[a] + eig.values[b];
      if (s > cutoff) l(a, b) = 2.0 * m(a, b) / s;
    }
  return (eig.vectors * l * eig.vectors.adjoint()).hermitian_part();
}

double qfi_from_sld(const DensityMatrix& rho, const ComplexMatrix& drho, double cutoff) {
  const ComplexMatrix l = sld(rho, drho, cutoff);
  return trace_product(rho.matrix(), l * l).real();
}

double hss(const ComplexMatrix& drho) {
  if (!drho.is_hermitian(1e-12)) throw NotHermitian("hss: derivative is not Hermitian");
  return std::sqrt(0.5 * trace_product(drho, drho).real());
}

double cramer_rao_bound(double qfi, int repetitions) {
  if (repetitions < 1) throw ValidationError("number of repetitions must be at least 1");
  return 1.0 / (static_cast<double>(repetitions) * qfi);
}

void Povm::validate() const {
  if (effects.empty()) throw ValidationError("POVM has no effects");
  const std::size_t n = effects.front().dim();
  ComplexMatrix sum(n);
  for (const ComplexMatrix& e : effects) {
    if (e.dim() != n) throw DimensionMismatch("POVM effects differ in dimension");
    if (!e.is_hermitian(kPsdTolerance)) throw ValidationError("POVM effect is not Hermitian");
    if (hermitian_eig(e).values.front() < -kPsdTolerance) {
      throw ValidationError("POVM effect is not positive semidefinite");
    }
    sum += e;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(n)) > kPovmTolerance) {
    throw ValidationError("POVM effects do not sum to identity");
  }
}

Povm Povm::projective(const Eigensystem& eig) {
  Povm povm;
  for (std::size_t k = 0; k < eig.dim(); ++k) povm.effects.push_back(eig.projector(k));
  return povm;
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Povm& povm) {
  std::vector<double> p;
  p.reserve(povm.effects.size());
  for (const ComplexMatrix& e : povm.effects) p.push_back(trace_product(e, rho.matrix()).real());
  return p;
}

double classical_fisher_information(const DensityMatrix& rho, const ComplexMatrix& drho,
                                    const Povm& povm, double cutoff) {
  povm.validate();
  double f = 0.0;
  for (const ComplexMatrix& e : povm.effects) {
    const double p = trace_product(e, rho.matrix()).real();
    const double dp = trace_product(e, drho).real();
    if (p <= cutoff) {
      if (std::abs(dp) <= cutoff) continue;
      throw SingularOutcome("outcome with probability " + std::to_string(p) +
                            " has derivative " + std::to_string(dp));
    }
    f += dp * dp / p;
  }
  return f;
}

double classical_distance_alpha(std::span<const double> p, std::span<const double> q, double alpha,
                                DistanceForm form) {
  if (p.size() != q.size()) throw LengthMismatch("probability vectors differ in length");
  if (!(alpha >= 1.0)) throw DomainError("alpha must be at least 1");
  auto check = [](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
      if (x < 0.0) throw DomainError("probabilities must be non-negative");
      s += x;
    }
    if (std::abs(s - 1.0) > 1e-10) throw DomainError("probabilities must sum to 1");
  };
  check(p);
  check(q);

  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = form == DistanceForm::root_power
                            ? std::pow(p[i], 1.0 / alpha) - std::pow(q[i], 1.0 / alpha)
                            : p[i] - q[i];
    s += std::pow(std::abs(diff), alpha);
  }
  return std::pow(0.5 * s, 1.0 / alpha);
}

double classical_statistical_speed(const ProbabilityFamily& family, double at, double alpha,
                                   DistanceForm form, double initial_step) {
  const std::vector<double> base = family(at);
  auto estimate = [&](double h) { return classical_distance_alpha(family(at + h), base, alpha, form) / h; };

  double h = initial_step;
  double previous = estimate(h);
  for (int k = 0; k < kMaxHalvings; ++k) {
    h *= 0.5;
    const double current = estimate(h);
    const double change = std::abs(current - previous);
    if (change <= kSpeedTolerance * std::abs(current) || change <= 1e-15) return current;
    previous = current;
  }
  throw NoConvergence("classical_statistical_speed: no convergence after 20 step halvings");
}

ComplexMatrix finite_difference(const ParameterizedState& state, double at, std::optional<double> step) {
  const double h = step.value_or(std::max(1e-6, 1e-4 * std::abs(at)));
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  if (at - h <= state.lower_bound) {
    throw DomainEdge("finite difference at " + std::to_string(at) + " with step " + std::to_string(h) +
                     " leaves the parameter domain");
  }
  ComplexMatrix d = state.evaluate(at + h).matrix() - state.evaluate(at - h).matrix();
  d *= 1.0 / (2.0 * h);
  return d.hermitian_part();
}

ParameterizedState thermal_family(const SensorParams& p) {
  p.validate();
  ParameterizedState s;
  if (p.at_symmetric_point()) {
    s.evaluate = [p](double t) { return thermal_state_closed_form(p, ThermalPoint(t)); };
    s.derivative = [p](double t) { return thermal_state_derivative(p, ThermalPoint(t)); };
  } else {
    s.evaluate = [p](double t) { return gibbs_state(p, ThermalPoint(t)); };
  }
  return s;
}

ParameterizedState teleported_family(const SensorParams& p, const InputState& in) {
  p.validate();
  const DensityMatrix rho_in = input_state(in);
  const ParameterizedState resource = thermal_family(p);
  ParameterizedState s;
  s.evaluate = [resource, rho_in](double t) { return teleport_output(resource.evaluate(t), rho_in); };
  if (resource.derivative) {
    s.derivative = [resource, rho_in](double t) {
      return teleport_output_derivative(resource.derivative(t), rho_in);
    };
  }
  return s;
}

}  // namespace thermoprobe
