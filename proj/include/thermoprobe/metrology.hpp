#pragma once

// Single-parameter quantum estimation: quantum Fisher information (QFI),
// symmetric logarithmic derivative (SLD), Hilbert-Schmidt speed (HSS),
// classical Fisher information of a fixed measurement, and the classical
// alpha-distances and statistical speeds.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "thermoprobe/matcore.hpp"
#include "thermoprobe/sensor.hpp"
#include "thermoprobe/teleport.hpp"

namespace thermoprobe {

inline constexpr double kDefaultSupportCutoff = 1e-12;

/// rho(theta) and, optionally, its analytic derivative.
struct ParameterizedState {
  std::function<DensityMatrix(double)> evaluate;
  /// Empty when no analytic derivative is known.
  std::function<ComplexMatrix(double)> derivative;
  /// Parameter values must stay strictly above this (temperature families
  /// use 0). Set to -inf for unbounded families.
  double lower_bound = 0.0;
};

enum class DerivativeSource { analytic, finite_difference };

const char* to_string(DerivativeSource s) noexcept;

struct QfiOptions {
  /// Eigenvalue pairs with lambda_n + lambda_m <= cutoff are dropped.
  double cutoff = kDefaultSupportCutoff;
  /// Eigenvalue pairs closer than this are treated as degenerate in the
  /// classical/quantum split.
  double degeneracy_tolerance = 1e-10;
};

struct QfiReport {
  /// Pair sum 2 sum |<n|d rho|m>|^2 / (lambda_n + lambda_m).
  double total = 0.0;
  /// Population (eigenvalue-derivative) part of the split.
  double classical_part = 0.0;
  /// Eigenbasis-rotation part of the split.
  double quantum_part = 0.0;
  int skipped_terms = 0;
  /// Largest 2|<n|d rho|m>|^2 among the skipped pairs.
  double dropped_numerator = 0.0;
  /// Set when dropped pairs still carried weight above 1e-10, i.e. the result
  /// depends on where the support cutoff sits.
  bool degenerate_support = false;
  DerivativeSource derivative_source = DerivativeSource::analytic;
};

QfiReport qfi(const DensityMatrix& rho, const ComplexMatrix& drho, const QfiOptions& options = {});

/// Uses state.derivative when present, the central finite difference otherwise.
QfiReport qfi(const ParameterizedState& state, double at, const QfiOptions& options = {});

/// Hermitian L with (L rho + rho L)/2 = d rho on the support of rho; entries
/// between kernel vectors are zero.
ComplexMatrix sld(const DensityMatrix& rho, const ComplexMatrix& drho,
                  double cutoff = kDefaultSupportCutoff);

/// Tr[rho L^2] with L the SLD.
double qfi_from_sld(const DensityMatrix& rho, const ComplexMatrix& drho,
                    double cutoff = kDefaultSupportCutoff);

/// sqrt(Tr[(d rho)^2] / 2)
double hss(const ComplexMatrix& drho);

/// Minimal estimator variance 1 / (m F) for m repetitions.
double cramer_rao_bound(double qfi, int repetitions = 1);

struct Povm {
  std::vector<ComplexMatrix> effects;

  /// Throws ValidationError unless the effects are PSD and sum to identity.
  void validate() const;
  /// Rank-one projectors onto the eigenvectors of eig.
  static Povm projective(const Eigensystem& eig);
};

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Povm& povm);

/// sum_x (Tr[E_x d rho])^2 / Tr[E_x rho]. Outcomes with both traces below
/// the cutoff are ignored; an outcome with vanishing probability but
/// non-vanishing derivative raises SingularOutcome.
double classical_fisher_information(const DensityMatrix& rho, const ComplexMatrix& drho,
                                    const Povm& povm, double cutoff = kDefaultSupportCutoff);

enum class DistanceForm {
  /// [d]^alpha = 1/2 sum |p^(1/alpha) - q^(1/alpha)|^alpha
  root_power,
  /// [d]^alpha = 1/2 sum |p - q|^alpha, the form whose quantum alpha = 2
  /// counterpart is the HSS.
  absolute_difference,
};

double classical_distance_alpha(std::span<const double> p, std::span<const double> q, double alpha,
                                DistanceForm form = DistanceForm::root_power);

using ProbabilityFamily = std::function<std::vector<double>(double)>;

/// d/d(theta) of d_alpha(p(theta0 + theta), p(theta0)) at 0+, by one-sided
/// differences with step halving until consecutive estimates agree to 1e-6
/// relative. Throws NoConvergence after 20 halvings.
double classical_statistical_speed(const ProbabilityFamily& family, double at, double alpha,
                                   DistanceForm form = DistanceForm::root_power,
                                   double initial_step = 1e-2);

/// (rho(theta + h) - rho(theta - h)) / 2h, Hermitised. Default step is
/// max(1e-6, 1e-4 theta). Throws DomainEdge if theta - h leaves the domain.
ComplexMatrix finite_difference(const ParameterizedState& state, double at,
                                std::optional<double> step = std::nullopt);

/// Temperature family of the sensor's thermal state, with the analytic
/// derivative.
ParameterizedState thermal_family(const SensorParams& p);

/// Temperature family of the teleported output for a fixed input state.
ParameterizedState teleported_family(const SensorParams& p, const InputState& s);

}  // namespace thermoprobe
