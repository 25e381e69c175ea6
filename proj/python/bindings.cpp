#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "thermoprobe/acceptance.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/metrology.hpp"
#include "thermoprobe/sensor.hpp"
#include "thermoprobe/teleport.hpp"
#include "thermoprobe/thermolab.hpp"

namespace py = pybind11;
using namespace thermoprobe;

namespace {

py::array_t<Complex> to_numpy(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  py::array_t<Complex> out({n, n});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) view(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

ComplexMatrix from_numpy(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw DimensionMismatch("expected a square matrix");
  const auto n = static_cast<std::size_t>(a.shape(0));
  if (n != 2 && n != 4) throw SizeOverflow("matrices must be 2x2 or 4x4");
  ComplexMatrix m(n);
  auto view = a.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
  return m;
}

py::dict report_dict(const QfiReport& r) {
  py::dict d;
  d["total"] = r.total;
  d["classical_part"] = r.classical_part;
  d["quantum_part"] = r.quantum_part;
  d["skipped_terms"] = r.skipped_terms;
  d["dropped_numerator"] = r.dropped_numerator;
  d["degenerate_support"] = r.degenerate_support;
  d["derivative_source"] = to_string(r.derivative_source);
  return d;
}

}  // namespace

PYBIND11_MODULE(_thermoprobe, m) {
  m.doc() = "Thermometry with two coupled charge qubits (C++ core)";
  m.attr("__version__") = tool_version();
  m.attr("CLASSICAL_FIDELITY_THRESHOLD") = kClassicalFidelityThreshold;
  m.attr("CSV_HEADER") = std::string(kCsvHeader);

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  (void)validation;

  py::class_<SensorParams>(m, "SensorParams")
      .def(py::init([](double ej1, double ej2, double em, double ec1, double ec2, double ng1, double ng2) {
             return SensorParams{ej1, ej2, em, ec1, ec2, ng1, ng2};
           }),
           py::arg("ej1") = 1.0, py::arg("ej2") = 0.1, py::arg("em") = 1.0, py::arg("ec1") = 1.0,
           py::arg("ec2") = 1.0, py::arg("ng1") = 0.5, py::arg("ng2") = 0.5)
      .def_readwrite("ej1", &SensorParams::ej1)
      .def_readwrite("ej2", &SensorParams::ej2)
      .def_readwrite("em", &SensorParams::em)
      .def_readwrite("ec1", &SensorParams::ec1)
      .def_readwrite("ec2", &SensorParams::ec2)
      .def_readwrite("ng1", &SensorParams::ng1)
      .def_readwrite("ng2", &SensorParams::ng2)
      .def_property_readonly("r1", &SensorParams::r1)
      .def_property_readonly("r2", &SensorParams::r2)
      .def("__repr__", [](const SensorParams& p) {
        std::ostringstream os;
        os << "SensorParams(ej1=" << p.ej1 << ", ej2=" << p.ej2 << ", em=" << p.em << ", ec1=" << p.ec1
           << ", ec2=" << p.ec2 << ", ng1=" << p.ng1 << ", ng2=" << p.ng2 << ")";
        return os.str();
      });

  py::class_<InputState>(m, "InputState")
      .def(py::init([](double theta, double phi) { return InputState{theta, phi}; }), py::arg("theta") = 0.0,
           py::arg("phi") = 0.0)
      .def_readwrite("theta", &InputState::theta)
      .def_readwrite("phi", &InputState::phi);

  m.def("hamiltonian", [](const SensorParams& p) { return to_numpy(build_hamiltonian(p)); }, py::arg("params"));
  m.def(
      "spectrum",
      [](const SensorParams& p) {
        const SensorSpectrum s = analytic_spectrum(p);
        return std::vector<double>(s.eps.begin(), s.eps.end());
      },
      py::arg("params"), "Analytic eigenvalues eps1..eps4 at the symmetric point.");
  m.def(
      "gibbs_state", [](const SensorParams& p, double t) { return to_numpy(gibbs_state(p, ThermalPoint(t)).matrix()); },
      py::arg("params"), py::arg("T"));
  m.def(
      "thermal_state",
      [](const SensorParams& p, double t) { return to_numpy(thermal_state_closed_form(p, ThermalPoint(t)).matrix()); },
      py::arg("params"), py::arg("T"));
  m.def(
      "thermal_state_derivative",
      [](const SensorParams& p, double t) { return to_numpy(thermal_state_derivative(p, ThermalPoint(t))); },
      py::arg("params"), py::arg("T"));

  m.def(
      "input_state", [](const InputState& s) { return to_numpy(input_state(s).matrix()); }, py::arg("state"));
  m.def(
      "channel_probabilities",
      [](const py::array_t<Complex>& rho) { return channel_probabilities(DensityMatrix(from_numpy(rho))).p; },
      py::arg("rho_ch"));
  m.def(
      "teleport",
      [](const py::array_t<Complex>& rho_ch, const py::array_t<Complex>& rho_in) {
        return to_numpy(teleport_output(DensityMatrix(from_numpy(rho_ch)), DensityMatrix(from_numpy(rho_in))).matrix());
      },
      py::arg("rho_ch"), py::arg("rho_in"));
  m.def(
      "teleport_closed_form",
      [](const SensorParams& p, double t, const InputState& s) {
        return to_numpy(teleport_output_closed_form(p, ThermalPoint(t), s).matrix());
      },
      py::arg("params"), py::arg("T"), py::arg("state"));
  m.def(
      "fidelity",
      [](const py::array_t<Complex>& a, const py::array_t<Complex>& b) {
        return fidelity(DensityMatrix(from_numpy(a)), DensityMatrix(from_numpy(b)));
      },
      py::arg("rho_in"), py::arg("rho_out"));

  m.def(
      "qfi",
      [](const py::array_t<Complex>& rho, const py::array_t<Complex>& drho, double cutoff) {
        return report_dict(qfi(DensityMatrix(from_numpy(rho)), from_numpy(drho), QfiOptions{cutoff}));
      },
      py::arg("rho"), py::arg("drho"), py::arg("cutoff") = kDefaultSupportCutoff);
  m.def(
      "sld",
      [](const py::array_t<Complex>& rho, const py::array_t<Complex>& drho) {
        return to_numpy(sld(DensityMatrix(from_numpy(rho)), from_numpy(drho)));
      },
      py::arg("rho"), py::arg("drho"));
  m.def(
      "hss", [](const py::array_t<Complex>& drho) { return hss(from_numpy(drho)); }, py::arg("drho"));
  m.def(
      "thermal_qfi",
      [](const SensorParams& p, double t) { return report_dict(qfi(thermal_family(p), t)); }, py::arg("params"),
      py::arg("T"), "QFI of the two-qubit thermal state with respect to T.");
  m.def(
      "teleported_qfi",
      [](const SensorParams& p, const InputState& s, double t) { return report_dict(qfi(teleported_family(p, s), t)); },
      py::arg("params"), py::arg("state"), py::arg("T"), "QFI of the teleported qubit with respect to T.");

  m.def("preset_names", &preset_names);
  m.def(
      "preset_spec", [](const std::string& name) { return scenario_spec_to_json(figure_preset(name)); },
      py::arg("name"), "JSON text of a figure preset.");
  m.def(
      "sweep",
      [](const std::string& spec_json, const std::string& format, double cutoff) {
        const ScenarioSpec spec = parse_scenario_spec(spec_json);
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = run_sweep(spec, SweepOptions{cutoff, 0});
        }
        return render(r, parse_export_format(format));
      },
      py::arg("spec_json"), py::arg("format") = "csv", py::arg("cutoff") = kDefaultSupportCutoff,
      "Run a sweep from a JSON scenario spec; returns the rendered csv/json/svg text.");
  m.def(
      "figure",
      [](const std::string& name, const std::string& format) {
        const ScenarioSpec spec = figure_preset(name);
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = run_sweep(spec);
        }
        return render(r, parse_export_format(format));
      },
      py::arg("name"), py::arg("format") = "csv");
  m.def("selftest", []() {
    py::list out;
    for (const CriterionResult& r : run_acceptance_suite()) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      d["seconds"] = r.seconds;
      out.append(d);
    }
    return out;
  });
}
