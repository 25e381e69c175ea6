#include "thermoprobe/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {

namespace {

// Places the six independent entries into the symmetric pattern of the
// closed-form thermal matrix (and of its temperature derivative).
ComplexMatrix assemble_symmetric(double r11, double r22, double r14, double r23, double r12,
                                 double r13) {
  ComplexMatrix m(4);
  m(0, 0) = m(3, 3) = r11;
  m(1, 1) = m(2, 2) = r22;
  m(0, 3) = m(3, 0) = r14;
  m(1, 2) = m(2, 1) = r23;
  m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = r12;
  m(0, 2) = m(2, 0) = m(1, 3) = m(3, 1) = r13;
  return m;
}

struct ScaledHyperbolics {
  double ch1, ch2;      // cosh(A_i) e^{-s}
  double sh1, sh2;      // sinh(A_i) e^{-s}
  double shr1, shr2;    // sinh(A_i) / R_i e^{-s}
};

ScaledHyperbolics scaled_hyperbolics(double a1, double a2, double r1, double r2, double temperature) {
  const double s = std::max(a1, a2);
  auto ch = [s](double a) { return 0.5 * (std::exp(a - s) + std::exp(-a - s)); };
  auto sh = [s](double a) { return 0.5 * (std::exp(a - s) - std::exp(-a - s)); };
  // sinh(A)/R -> 1/(4T) as R -> 0
  auto shr = [&](double a, double r) {
    return r > 0.0 ? sh(a) / r : std::exp(-s) / (4.0 * temperature);
  };
  return {ch(a1), ch(a2), sh(a1), sh(a2), shr(a1, r1), shr(a2, r2)};
}

double residual(const ComplexMatrix& h, const ComplexVector& v, double eps) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    Complex row = -eps * v[i];
    for (std::size_t j = 0; j < 4; ++j) row += h(i, j) * v[j];
    s += std::norm(row);
  }
  return std::sqrt(s);
}

ComplexVector normalized(std::array<double, 4> c) {
  double n = 0.0;
  for (double x : c) n += x * x;
  n = std::sqrt(n);
  ComplexVector v(4);
  for (std::size_t i = 0; i < 4; ++i) v[i] = c[i] / n;
  return v;
}

}  // namespace

void SensorParams::validate() const {
  const std::array<std::pair<const char*, double>, 7> fields{{{"ej1", ej1},
                                                              {"ej2", ej2},
                                                              {"em", em},
                                                              {"ec1", ec1},
                                                              {"ec2", ec2},
                                                              {"ng1", ng1},
                                                              {"ng2", ng2}}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) throw ValidationError(std::string(name) + " must be finite");
  }
  for (std::size_t i = 0; i < 5; ++i) {
    if (fields[i].second < 0.0) {
      throw ValidationError(std::string(fields[i].first) + " must be non-negative");
    }
  }
}

void SensorParams::require_symmetric_point() const {
  if (!at_symmetric_point()) {
    throw NotSymmetricPoint("closed-form route requires ng1 = ng2 = 0.5 (got ng1 = " +
                            std::to_string(ng1) + ", ng2 = " + std::to_string(ng2) + ")");
  }
}

double SensorParams::r1() const {
  const double d = ej1 - ej2;
  return std::sqrt(4.0 * d * d + em * em);
}

double SensorParams::r2() const {
  const double s = ej1 + ej2;
  return std::sqrt(4.0 * s * s + em * em);
}

ThermalPoint::ThermalPoint(double temperature) : temperature_(temperature) {
  if (!(temperature > 0.0)) {
    throw NonPositiveTemperature("temperature must be positive, got " + std::to_string(temperature));
  }
  beta_ = std::isinf(temperature) ? 0.0 : 1.0 / temperature;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : mat_(m.hermitian_part()) {
  if (!m.is_hermitian(kTolerance)) throw InvalidDensityMatrix("density matrix is not Hermitian");
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > kTolerance) {
    throw InvalidDensityMatrix("density matrix trace is " + std::to_string(tr.real()));
  }
  const Eigensystem eig = hermitian_eig(mat_);
  if (eig.values.front() < -kTolerance) {
    throw InvalidDensityMatrix("density matrix has negative eigenvalue " +
                               std::to_string(eig.values.front()));
  }
}

double DensityMatrix::purity() const { return trace_product(mat_, mat_).real(); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

double electrostatic_energy(const SensorParams& p, int n1, int n2) {
  if ((n1 != 0 && n1 != 1) || (n2 != 0 && n2 != 1)) {
    throw DomainError("Cooper-pair numbers must be 0 or 1");
  }
  const double q1 = p.ng1 - n1;
  const double q2 = p.ng2 - n2;
  return p.ec1 * q1 * q1 + p.ec2 * q2 * q2 + p.em * q1 * q2;
}

ComplexMatrix build_hamiltonian(const SensorParams& p) {
  p.validate();
  ComplexMatrix h(4);
  h(0, 0) = electrostatic_energy(p, 0, 0);
  h(1, 1) = electrostatic_energy(p, 1, 0);
  h(2, 2) = electrostatic_energy(p, 0, 1);
  h(3, 3) = electrostatic_energy(p, 1, 1);
  h(0, 1) = h(1, 0) = h(2, 3) = h(3, 2) = -0.5 * p.ej1;
  h(0, 2) = h(2, 0) = h(1, 3) = h(3, 1) = -0.5 * p.ej2;
  return h;
}

SensorSpectrum analytic_spectrum(const SensorParams& p) {
  p.validate();
  p.require_symmetric_point();

  SensorSpectrum out;
  out.r1 = p.r1();
  out.r2 = p.r2();
  const double shift = 0.25 * (p.ec1 + p.ec2);
  out.eps = {shift - 0.25 * out.r1, shift + 0.25 * out.r1, shift - 0.25 * out.r2,
             shift + 0.25 * out.r2};
  out.degenerate_couplings = p.ej1 == p.ej2 && p.em == 0.0;

  const ComplexMatrix h = build_hamiltonian(p);
  const double tol = 1e-10 * std::max(1.0, h.frobenius_norm());
  const double delta = p.ej1 - p.ej2;
  const double sum = p.ej1 + p.ej2;

  // Pick the first candidate that is actually an eigenvector; the printed
  // coefficient signs are not trusted blindly.
  auto choose = [&](std::size_t k, std::initializer_list<std::array<double, 4>> candidates) {
    for (const auto& c : candidates) {
      ComplexVector v = normalized(c);
      if (residual(h, v, out.eps[k]) <= tol) {
        out.vecs[k] = std::move(v);
        return;
      }
    }
    throw NumericalError("analytic_spectrum: no closed-form candidate solves H v = eps v for level " +
                         std::to_string(k + 1));
  };

  // Coefficient (Em +/- R)/(2J); the minus branch is rewritten as -2J/(Em + R)
  // to avoid cancellation.
  auto coefficient = [&](double j, double r, int sign) {
    return sign > 0 ? (p.em + r) / (2.0 * j) : -2.0 * j / (p.em + r);
  };

  if (delta != 0.0) {
    for (int k = 0; k < 2; ++k) {
      const int sign = k == 0 ? +1 : -1;
      const double q = coefficient(delta, out.r1, sign);
      const double printed_first = -(p.em + out.r1) / (2.0 * delta);
      // index order: |00>, |10>, |01>, |11>
      choose(k, {{-1.0, q, printed_first, 1.0},
                 {-1.0, q, -q, 1.0},
                 {-1.0, -q, q, 1.0},
                 {-1.0, q, q, 1.0}});
    }
  } else {
    out.singular_vectors = true;
    const double s = 1.0 / std::sqrt(2.0);
    choose(0, {{0.0, s, -s, 0.0}, {s, 0.0, 0.0, -s}});
    choose(1, {{s, 0.0, 0.0, -s}, {0.0, s, -s, 0.0}});
  }

  if (sum != 0.0) {
    for (int k = 0; k < 2; ++k) {
      const int sign = k == 0 ? +1 : -1;
      const double x = coefficient(sum, out.r2, sign);
      choose(2 + k, {{1.0, x, x, 1.0}, {1.0, -x, -x, 1.0}});
    }
  } else {
    out.singular_vectors = true;
    const double s = 1.0 / std::sqrt(2.0);
    choose(2, {{0.0, s, s, 0.0}, {s, 0.0, 0.0, s}});
    choose(3, {{s, 0.0, 0.0, s}, {0.0, s, s, 0.0}});
  }
  return out;
}

DensityMatrix gibbs_state(const SensorParams& p, const ThermalPoint& t) {
  const ComplexMatrix h = build_hamiltonian(p);
  if (t.beta() == 0.0) return DensityMatrix::maximally_mixed(4);
  const Eigensystem eig = hermitian_eig(h);
  const double e_min = eig.values.front();
  const double beta = t.beta();
  double z = 0.0;
  for (double e : eig.values) z += std::exp(-beta * (e - e_min));
  return DensityMatrix(matrix_function(eig, [&](double e) { return std::exp(-beta * (e - e_min)) / z; }));
}

double log_partition_function(const SensorParams& p, const ThermalPoint& t) {
  const Eigensystem eig = hermitian_eig(build_hamiltonian(p));
  const double e_min = eig.values.front();
  double z = 0.0;
  for (double e : eig.values) z += std::exp(-t.beta() * (e - e_min));
  return std::log(z) - t.beta() * e_min;
}

ClosedFormElements closed_form_elements(const SensorParams& p, const ThermalPoint& t) {
  p.validate();
  p.require_symmetric_point();
  const double r1 = p.r1();
  const double r2 = p.r2();
  const double temperature = t.temperature();

  ClosedFormElements e;
  e.a1 = 0.25 * r1 * t.beta();
  e.a2 = 0.25 * r2 * t.beta();
  e.log_scale = std::max(e.a1, e.a2);
  const ScaledHyperbolics hy = scaled_hyperbolics(e.a1, e.a2, r1, r2, temperature);
  e.f1 = hy.ch1 + hy.ch2;
  e.f2 = hy.ch1 - hy.ch2;
  e.b1 = p.em * hy.shr1;
  e.b2 = p.em * hy.shr2;
  e.c1 = (p.ej1 - p.ej2) * hy.shr1;
  e.c2 = (p.ej1 + p.ej2) * hy.shr2;
  e.d = 1.0 / (2.0 * e.f1);
  return e;
}

DensityMatrix thermal_state_closed_form(const SensorParams& p, const ThermalPoint& t) {
  const ClosedFormElements e = closed_form_elements(p, t);
  const double r11 = -e.d * (e.b1 + e.b2 - e.f1) / 2.0;
  const double r22 = e.d * (e.b1 + e.b2 + e.f1) / 2.0;
  const double r14 = -e.d * (-e.b1 + e.b2 + e.f2) / 2.0;
  const double r23 = e.d * (-e.b1 + e.b2 - e.f2) / 2.0;
  const double r12 = e.d * (e.c1 + e.c2);
  const double r13 = e.d * (-e.c1 + e.c2);
  return DensityMatrix(assemble_symmetric(r11, r22, r14, r23, r12, r13));
}

ComplexMatrix thermal_state_derivative(const SensorParams& p, const ThermalPoint& t) {
  const ClosedFormElements e = closed_form_elements(p, t);
  const double temperature = t.temperature();
  if (std::isinf(temperature)) return ComplexMatrix(4);

  const double r1 = p.r1();
  const double r2 = p.r2();
  const ScaledHyperbolics hy = scaled_hyperbolics(e.a1, e.a2, r1, r2, temperature);

  // dA_i/dT = -R_i / 4T^2 = -A_i / T; d(sinh A / R)/dT = -cosh A / 4T^2.
  const double da1 = -e.a1 / temperature;
  const double da2 = -e.a2 / temperature;
  const double inv4t2 = 1.0 / (4.0 * temperature * temperature);

  const double f1 = e.f1;
  const double df1 = hy.sh1 * da1 + hy.sh2 * da2;
  const double df2 = hy.sh1 * da1 - hy.sh2 * da2;
  const double db1 = -p.em * hy.ch1 * inv4t2;
  const double db2 = -p.em * hy.ch2 * inv4t2;
  const double dc1 = -(p.ej1 - p.ej2) * hy.ch1 * inv4t2;
  const double dc2 = -(p.ej1 + p.ej2) * hy.ch2 * inv4t2;

  // d/dT [N / (k F1)] = (N' F1 - N F1') / (k F1^2)
  auto quotient = [&](double n, double dn, double k) { return (dn * f1 - n * df1) / (k * f1 * f1); };

  const double r11 = quotient(e.f1 - e.b1 - e.b2, df1 - db1 - db2, 4.0);
  const double r22 = quotient(e.b1 + e.b2 + e.f1, db1 + db2 + df1, 4.0);
  const double r14 = quotient(e.b1 - e.b2 - e.f2, db1 - db2 - df2, 4.0);
  const double r23 = quotient(-e.b1 + e.b2 - e.f2, -db1 + db2 - df2, 4.0);
  const double r12 = quotient(e.c1 + e.c2, dc1 + dc2, 2.0);
  const double r13 = quotient(-e.c1 + e.c2, -dc1 + dc2, 2.0);
  return assemble_symmetric(r11, r22, r14, r23, r12, r13);
}

ComplexMatrix trace_out_second(const ComplexMatrix& m) {
  if (m.dim() != 4) throw DimensionMismatch("partial trace expects a 4x4 matrix");
  ComplexMatrix out(2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) out(a, b) = m(a, b) + m(a + 2, b + 2);
  return out;
}

}  // namespace thermoprobe
