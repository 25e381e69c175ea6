// thermoprobe: temperature sweeps of a two-qubit quantum thermometer.
//
//   thermoprobe sweep --ej1 1 --ej2 0.1 --em 1 --theta 1.5708 --phi 0
//       --tmin 0.05 --tmax 5 --points 200 --out run.csv --format csv
//   thermoprobe figure fig4 --out fig4.csv
//   thermoprobe selftest
//
// Exit codes: 0 success, 1 validation error, 2 numerical-convergence error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thermoprobe/acceptance.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/thermolab.hpp"

namespace {

using namespace thermoprobe;

ExportFormat format_for(const std::optional<std::string>& explicit_format, const std::filesystem::path& out) {
  if (explicit_format) return parse_export_format(*explicit_format);
  const std::string ext = out.extension().string();
  if (ext == ".json") return ExportFormat::json;
  if (ext == ".svg") return ExportFormat::svg;
  return ExportFormat::csv;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError("--values: cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

void write(const SweepResult& result, ExportFormat format, const std::optional<std::string>& out) {
  if (out) {
    export_result(result, format, *out);
  } else {
    std::cout << render(result, format);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum thermometry with two coupled charge qubits: local vs teleported sensing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Sweep temperature for one parameter set (or a JSON spec file)");
  ScenarioSpec spec;
  std::optional<std::string> spec_file;
  std::optional<std::string> sweep_out;
  std::optional<std::string> sweep_format;
  std::string scenario = "both";
  std::optional<std::string> vary_field;
  std::optional<std::string> vary_values;
  bool log_spacing = false;
  sweep->add_option("--spec", spec_file, "JSON scenario spec file (other flags override nothing)");
  sweep->add_option("--ej1", spec.params.ej1, "Josephson energy of qubit 1");
  sweep->add_option("--ej2", spec.params.ej2, "Josephson energy of qubit 2");
  sweep->add_option("--em", spec.params.em, "mutual coupling energy");
  sweep->add_option("--ec1", spec.params.ec1, "charging energy of qubit 1");
  sweep->add_option("--ec2", spec.params.ec2, "charging energy of qubit 2");
  sweep->add_option("--ng1", spec.params.ng1, "gate charge of qubit 1");
  sweep->add_option("--ng2", spec.params.ng2, "gate charge of qubit 2");
  sweep->add_option("--theta", spec.input.theta, "input-state polar angle");
  sweep->add_option("--phi", spec.input.phi, "input-state phase");
  sweep->add_option("--tmin", spec.t_grid.t_min, "lowest temperature");
  sweep->add_option("--tmax", spec.t_grid.t_max, "highest temperature");
  sweep->add_option("--points", spec.t_grid.count, "number of temperatures");
  sweep->add_flag("--log", log_spacing, "logarithmic temperature spacing");
  sweep->add_option("--scenario", scenario, "direct | remote | both (controls plotted series)");
  sweep->add_option("--vary", vary_field, "parameter to vary: ej1 | ej2 | em");
  sweep->add_option("--values", vary_values, "comma-separated values for --vary");
  sweep->add_flag("--reduced", spec.reduced, "direct scenario on the reduced state of qubit 1");
  sweep->add_option("--out", sweep_out, "output path (stdout when omitted)");
  sweep->add_option("--format", sweep_format, "csv | json | svg (default: from --out extension, else csv)");

  // figure
  auto* figure = app.add_subcommand("figure", "Run a figure preset");
  std::string preset;
  std::optional<std::string> figure_out;
  std::optional<std::string> figure_format;
  figure->add_option("name", preset, "fig2a fig2b fig2c fig2d fig3a fig3b fig4 fig5")->required();
  figure->add_option("--out", figure_out, "output path (stdout when omitted)");
  figure->add_option("--format", figure_format, "csv | json | svg (default: from --out extension, else csv)");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the oracle and acceptance checks");

  CLI11_PARSE(app, argc, argv);

  try {
    const SweepOptions options{support_cutoff_from_env(), 0};

    if (sweep->parsed()) {
      if (spec_file) {
        std::ifstream in(*spec_file);
        if (!in) throw IoError("cannot read spec file '" + *spec_file + "'");
        spec = parse_scenario_spec(std::string(std::istreambuf_iterator<char>(in), {}));
      } else {
        spec.scenario = parse_scenario(scenario);
        spec.t_grid.spacing = log_spacing ? Spacing::log : Spacing::linear;
        if (vary_field || vary_values) {
          if (!vary_field || !vary_values) throw ValidationError("--vary and --values must be given together");
          spec.vary = Variation{parse_vary_field(*vary_field), parse_values(*vary_values)};
        }
      }
      const std::filesystem::path out_path = sweep_out.value_or("");
      write(run_sweep(spec, options), format_for(sweep_format, out_path), sweep_out);
    } else if (figure->parsed()) {
      const std::filesystem::path out_path = figure_out.value_or("");
      write(run_sweep(figure_preset(preset), options), format_for(figure_format, out_path), figure_out);
    } else if (selftest->parsed()) {
      bool all = true;
      for (const CriterionResult& r : run_acceptance_suite(&std::cout)) all = all && r.passed;
      std::cout << (all ? "selftest: all criteria passed\n" : "selftest: some criteria FAILED\n");
      return all ? 0 : 1;
    }
  } catch (const NumericalError& e) {
    std::cerr << "thermoprobe: numerical error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "thermoprobe: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
