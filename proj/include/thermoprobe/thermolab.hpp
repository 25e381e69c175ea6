#pragma once

// Temperature sweeps for the two thermometry scenarios (direct sensing of the
// two-qubit thermal state, and remote sensing of the teleported qubit), the
// figure presets, and table/plot export.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thermoprobe/sensor.hpp"
#include "thermoprobe/teleport.hpp"

namespace thermoprobe {

enum class Scenario { direct, remote, both };
enum class Spacing { linear, log };
enum class VaryField { ej1, ej2, em };
enum class ExportFormat { csv, json, svg };

const char* to_string(Scenario s) noexcept;
const char* to_string(Spacing s) noexcept;
const char* to_string(VaryField f) noexcept;
const char* to_string(ExportFormat f) noexcept;
Scenario parse_scenario(std::string_view s);
Spacing parse_spacing(std::string_view s);
VaryField parse_vary_field(std::string_view s);
ExportFormat parse_export_format(std::string_view s);

struct TemperatureGrid {
  double t_min = 0.05;
  double t_max = 5.0;
  int count = 200;
  Spacing spacing = Spacing::linear;

  /// Each point is computed independently from its index, never accumulated.
  std::vector<double> points() const;
};

struct Variation {
  VaryField field = VaryField::em;
  std::vector<double> values;
};

struct ScenarioSpec {
  Scenario scenario = Scenario::both;
  SensorParams params;
  InputState input;
  TemperatureGrid t_grid;
  std::optional<Variation> vary;
  /// Direct scenario uses the first qubit's reduced state instead of the
  /// full two-qubit state.
  bool reduced = false;
  /// Preset name, or "custom".
  std::string name = "custom";
  std::vector<std::string> notes;

  /// Throws ValidationError.
  void validate() const;
};

struct SweepRow {
  std::optional<double> vary_value;
  double temperature = 0.0;
  double qfi_direct = 0.0;
  double hss_direct = 0.0;
  double qfi_remote = 0.0;
  double hss_remote = 0.0;
  double fidelity = 0.0;
  std::array<double, 4> p{};
  int skipped_terms = 0;
};

struct SweepResult {
  ScenarioSpec spec;
  std::vector<SweepRow> rows;
  std::string tool_version;
  double cutoff = 0.0;
  std::string derivative_source;
};

struct SweepOptions {
  double cutoff = 1e-12;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Support cutoff from THERMOPROBE_CUTOFF, or the 1e-12 default.
double support_cutoff_from_env();

/// Rows come out sorted by (vary value, T). Errors carry the offending point.
SweepResult run_sweep(const ScenarioSpec& spec, const SweepOptions& options = {});

std::vector<std::string> preset_names();
/// Throws UnknownPreset.
ScenarioSpec figure_preset(std::string_view name);

/// JSON object whose field names mirror ScenarioSpec.
ScenarioSpec parse_scenario_spec(std::string_view json_text);
std::string scenario_spec_to_json(const ScenarioSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "vary_value,T,qfi_direct,hss_direct,qfi_remote,hss_remote,fidelity,p0,p1,p2,p3,skipped_terms";

std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);
std::string to_svg(const SweepResult& result);
std::string render(const SweepResult& result, ExportFormat format);

/// Throws IoError.
void export_result(const SweepResult& result, ExportFormat format, const std::filesystem::path& path);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double x);

const char* tool_version() noexcept;

}  // namespace thermoprobe
