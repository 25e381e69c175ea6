#include "thermoprobe/thermolab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "json.hpp"
#include "spec_json.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/metrology.hpp"

#ifndef THERMOPROBE_VERSION
#define THERMOPROBE_VERSION "0.0.0"
#endif

namespace thermoprobe {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

double& field_ref(SensorParams& p, VaryField f) {
  switch (f) {
    case VaryField::ej1: return p.ej1;
    case VaryField::ej2: return p.ej2;
    case VaryField::em: return p.em;
  }
  return p.em;
}

struct PointInput {
  std::optional<double> vary_value;
  SensorParams params;
  double temperature;
};

SweepRow evaluate_point(const PointInput& in, const ScenarioSpec& spec, const DensityMatrix& rho_in,
                        const QfiOptions& qfi_options) {
  const ParameterizedState resource = thermal_family(in.params);
  const DensityMatrix rho_ch = resource.evaluate(in.temperature);
  const ComplexMatrix drho_ch = resource.derivative ? resource.derivative(in.temperature)
                                                    : finite_difference(resource, in.temperature);

  SweepRow row;
  row.vary_value = in.vary_value;
  row.temperature = in.temperature;

  QfiReport direct;
  if (spec.reduced) {
    const DensityMatrix rho_a(trace_out_second(rho_ch.matrix()));
    const ComplexMatrix drho_a = trace_out_second(drho_ch);
    direct = qfi(rho_a, drho_a, qfi_options);
    row.hss_direct = hss(drho_a);
  } else {
    direct = qfi(rho_ch, drho_ch, qfi_options);
    row.hss_direct = hss(drho_ch);
  }
  row.qfi_direct = direct.total;

  const DensityMatrix rho_out = teleport_output(rho_ch, rho_in);
  const ComplexMatrix drho_out = teleport_output_derivative(drho_ch, rho_in);
  const QfiReport remote = qfi(rho_out, drho_out, qfi_options);
  row.qfi_remote = remote.total;
  row.hss_remote = hss(drho_out);
  row.fidelity = fidelity(rho_in, rho_out);
  row.p = channel_probabilities(rho_ch).p;
  row.skipped_terms = direct.skipped_terms + remote.skipped_terms;
  return row;
}

[[noreturn]] void rethrow_with_context(const std::exception_ptr& error, const PointInput& in) {
  std::string where = "at T = " + format_number(in.temperature);
  if (in.vary_value) where += ", vary value = " + format_number(*in.vary_value);
  try {
    std::rethrow_exception(error);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (" + where + ")");
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(e.what()) + " (" + where + ")");
  }
}

template <typename T>
void read_if_present(const Json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

Json params_to_json(const SensorParams& p) {
  return Json{{"ej1", p.ej1}, {"ej2", p.ej2}, {"em", p.em}, {"ec1", p.ec1},
              {"ec2", p.ec2}, {"ng1", p.ng1}, {"ng2", p.ng2}};
}

}  // namespace

namespace detail {

Json spec_to_json_value(const ScenarioSpec& spec) {
  Json j;
  j["name"] = spec.name;
  j["scenario"] = to_string(spec.scenario);
  j["params"] = params_to_json(spec.params);
  j["input"] = Json{{"theta", spec.input.theta}, {"phi", spec.input.phi}};
  j["t_grid"] = Json{{"t_min", spec.t_grid.t_min},
                     {"t_max", spec.t_grid.t_max},
                     {"count", spec.t_grid.count},
                     {"spacing", to_string(spec.t_grid.spacing)}};
  if (spec.vary) {
    j["vary"] = Json{{"field", to_string(spec.vary->field)}, {"values", spec.vary->values}};
  } else {
    j["vary"] = nullptr;
  }
  j["reduced"] = spec.reduced;
  j["notes"] = spec.notes;
  return j;
}

}  // namespace detail

const char* to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::direct: return "direct";
    case Scenario::remote: return "remote";
    case Scenario::both: return "both";
  }
  return "both";
}

const char* to_string(Spacing s) noexcept { return s == Spacing::log ? "log" : "linear"; }

const char* to_string(VaryField f) noexcept {
  switch (f) {
    case VaryField::ej1: return "ej1";
    case VaryField::ej2: return "ej2";
    case VaryField::em: return "em";
  }
  return "em";
}

const char* to_string(ExportFormat f) noexcept {
  switch (f) {
    case ExportFormat::csv: return "csv";
    case ExportFormat::json: return "json";
    case ExportFormat::svg: return "svg";
  }
  return "csv";
}

Scenario parse_scenario(std::string_view s) {
  if (s == "direct") return Scenario::direct;
  if (s == "remote") return Scenario::remote;
  if (s == "both") return Scenario::both;
  throw ValidationError("unknown scenario '" + std::string(s) + "'");
}

Spacing parse_spacing(std::string_view s) {
  if (s == "linear") return Spacing::linear;
  if (s == "log") return Spacing::log;
  throw ValidationError("unknown grid spacing '" + std::string(s) + "'");
}

VaryField parse_vary_field(std::string_view s) {
  if (s == "ej1") return VaryField::ej1;
  if (s == "ej2") return VaryField::ej2;
  if (s == "em") return VaryField::em;
  throw ValidationError("cannot vary '" + std::string(s) + "' (expected ej1, ej2 or em)");
}

ExportFormat parse_export_format(std::string_view s) {
  if (s == "csv") return ExportFormat::csv;
  if (s == "json") return ExportFormat::json;
  if (s == "svg") return ExportFormat::svg;
  throw ValidationError("unknown export format '" + std::string(s) + "'");
}

std::vector<double> TemperatureGrid::points() const {
  std::vector<double> t(static_cast<std::size_t>(std::max(count, 0)));
  const double last = static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    const double frac = static_cast<double>(i) / last;
    if (spacing == Spacing::linear) {
      t[static_cast<std::size_t>(i)] = t_min + (t_max - t_min) * frac;
    } else {
      t[static_cast<std::size_t>(i)] = std::exp(std::log(t_min) + (std::log(t_max) - std::log(t_min)) * frac);
    }
  }
  if (count >= 2) t.back() = t_max;
  return t;
}

void ScenarioSpec::validate() const {
  params.validate();
  input.validate();
  if (!(t_grid.t_min > 0.0) || !std::isfinite(t_grid.t_min)) {
    throw ValidationError("t_min must be positive and finite");
  }
  if (!(t_grid.t_max >= t_grid.t_min) || !std::isfinite(t_grid.t_max)) {
    throw ValidationError("t_max must be finite and not below t_min");
  }
  if (t_grid.count < 2) throw ValidationError("grid count must be at least 2");
  if (vary) {
    if (vary->values.empty()) throw ValidationError("vary.values must not be empty");
    for (double v : vary->values) {
      if (!std::isfinite(v) || v < 0.0) throw ValidationError("vary.values must be finite and non-negative");
    }
  }
}

double support_cutoff_from_env() {
  const char* raw = std::getenv("THERMOPROBE_CUTOFF");
  if (raw == nullptr || *raw == '\0') return kDefaultSupportCutoff;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError("THERMOPROBE_CUTOFF must be a positive number, got '" + std::string(raw) + "'");
  }
  return v;
}

SweepResult run_sweep(const ScenarioSpec& spec, const SweepOptions& options) {
  spec.validate();

  std::vector<std::optional<double>> vary_values;
  if (spec.vary) {
    std::vector<double> sorted = spec.vary->values;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    vary_values.assign(sorted.begin(), sorted.end());
  } else {
    vary_values.emplace_back(std::nullopt);
  }

  const std::vector<double> temps = spec.t_grid.points();
  std::vector<PointInput> inputs;
  inputs.reserve(vary_values.size() * temps.size());
  for (const auto& v : vary_values) {
    SensorParams p = spec.params;
    if (v) field_ref(p, spec.vary->field) = *v;
    for (double t : temps) inputs.push_back({v, p, t});
  }

  const DensityMatrix rho_in = input_state(spec.input);
  QfiOptions qfi_options;
  qfi_options.cutoff = options.cutoff;

  SweepResult result;
  result.spec = spec;
  result.tool_version = tool_version();
  result.cutoff = options.cutoff;
  result.derivative_source = to_string(spec.params.at_symmetric_point() ? DerivativeSource::analytic
                                                                        : DerivativeSource::finite_difference);
  result.rows.resize(inputs.size());

  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(inputs.size()));
  std::vector<std::exception_ptr> errors(inputs.size());
  {
    // Strided partition; every row lands at its own index so the output order
    // never depends on scheduling.
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < inputs.size(); i += workers) {
          try {
            result.rows[i] = evaluate_point(inputs[i], spec, rho_in, qfi_options);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (errors[i]) rethrow_with_context(errors[i], inputs[i]);
  }
  return result;
}

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig4", "fig5"};
}

ScenarioSpec figure_preset(std::string_view name) {
  ScenarioSpec s;
  s.name = std::string(name);
  s.t_grid = TemperatureGrid{};
  const std::vector<double> sweep_values{0.5, 1.0, 2.0, 4.0};
  auto set = [&](double ej1, double ej2, double em, double theta, double phi) {
    s.params.ej1 = ej1;
    s.params.ej2 = ej2;
    s.params.em = em;
    s.input = InputState{theta, phi};
  };

  if (name == "fig2a") {
    s.scenario = Scenario::remote;
    set(sweep_values.front(), 0.05, 4.0, kPi / 2, kPi / 2);
    s.vary = Variation{VaryField::ej1, sweep_values};
  } else if (name == "fig2b") {
    s.scenario = Scenario::remote;
    set(0.06, sweep_values.front(), 3.0, kPi / 2, kPi / 2);
    s.vary = Variation{VaryField::ej2, sweep_values};
  } else if (name == "fig2c") {
    s.scenario = Scenario::remote;
    set(2.0, 0.8, sweep_values.front(), kPi / 4, kPi / 3);
    s.vary = Variation{VaryField::em, sweep_values};
    s.notes.push_back("angles corrected to theta = pi/4, phi = pi/3");
  } else if (name == "fig2d") {
    s.scenario = Scenario::remote;
    set(1.0, 1.3, sweep_values.front(), kPi / 2, kPi / 2);
    s.vary = Variation{VaryField::em, sweep_values};
  } else if (name == "fig3a") {
    s.scenario = Scenario::direct;
    set(1.0, 0.1, 1.0, kPi / 2, kPi / 2);
  } else if (name == "fig3b") {
    s.scenario = Scenario::remote;
    set(1.0, 0.1, 1.0, kPi / 2, kPi / 2);
  } else if (name == "fig4") {
    s.scenario = Scenario::both;
    set(0.05, 2.0, 1.0, kPi / 2, kPi / 6);
  } else if (name == "fig5") {
    s.scenario = Scenario::remote;
    set(1.0, 0.05, 0.5, kPi / 2, kPi);
    s.notes.push_back("hss_remote is unscaled (no factor of 1/9)");
  } else {
    throw UnknownPreset("unknown figure preset '" + std::string(name) + "'");
  }
  if (s.vary) {
    s.notes.push_back(std::string("values of ") + to_string(s.vary->field) +
                      " are a chosen set");
  }
  return s;
}

ScenarioSpec parse_scenario_spec(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("spec file is not valid JSON: ") + e.what());
  }
  ScenarioSpec s;
  try {
    if (j.contains("scenario")) s.scenario = parse_scenario(j.at("scenario").get<std::string>());
    read_if_present(j, "name", s.name);
    read_if_present(j, "reduced", s.reduced);
    read_if_present(j, "notes", s.notes);
    if (j.contains("params")) {
      const Json& p = j.at("params");
      read_if_present(p, "ej1", s.params.ej1);
      read_if_present(p, "ej2", s.params.ej2);
      read_if_present(p, "em", s.params.em);
      read_if_present(p, "ec1", s.params.ec1);
      read_if_present(p, "ec2", s.params.ec2);
      read_if_present(p, "ng1", s.params.ng1);
      read_if_present(p, "ng2", s.params.ng2);
    }
    if (j.contains("input")) {
      read_if_present(j.at("input"), "theta", s.input.theta);
      read_if_present(j.at("input"), "phi", s.input.phi);
    }
    if (j.contains("t_grid")) {
      const Json& g = j.at("t_grid");
      read_if_present(g, "t_min", s.t_grid.t_min);
      read_if_present(g, "t_max", s.t_grid.t_max);
      read_if_present(g, "count", s.t_grid.count);
      if (g.contains("spacing")) s.t_grid.spacing = parse_spacing(g.at("spacing").get<std::string>());
    }
    if (j.contains("vary") && !j.at("vary").is_null()) {
      Variation v;
      v.field = parse_vary_field(j.at("vary").at("field").get<std::string>());
      v.values = j.at("vary").at("values").get<std::vector<double>>();
      s.vary = std::move(v);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed spec file: ") + e.what());
  }
  s.validate();
  return s;
}

std::string scenario_spec_to_json(const ScenarioSpec& spec) { return detail::spec_to_json_value(spec).dump(2); }

const char* tool_version() noexcept { return THERMOPROBE_VERSION; }

}  // namespace thermoprobe
