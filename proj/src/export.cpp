#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spec_json.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/teleport.hpp"
#include "thermoprobe/thermolab.hpp"

namespace thermoprobe {

namespace {

using Json = nlohmann::ordered_json;

struct Column {
  const char* name;
  std::function<double(const SweepRow&)> get;
};

struct Panel {
  std::string title;
  std::vector<Column> columns;
  bool fidelity_rule = false;
};

std::vector<Panel> panels_for(Scenario s) {
  const Column qd{"qfi_direct", [](const SweepRow& r) { return r.qfi_direct; }};
  const Column qr{"qfi_remote", [](const SweepRow& r) { return r.qfi_remote; }};
  const Column hd{"hss_direct", [](const SweepRow& r) { return r.hss_direct; }};
  const Column hr{"hss_remote", [](const SweepRow& r) { return r.hss_remote; }};
  const Column fi{"fidelity", [](const SweepRow& r) { return r.fidelity; }};
  switch (s) {
    case Scenario::direct: return {{"QFI", {qd}}, {"HSS", {hd}}};
    case Scenario::remote: return {{"QFI", {qr}}, {"HSS", {hr}}, {"fidelity", {fi}, true}};
    case Scenario::both: return {{"QFI", {qd, qr}}, {"HSS", {hd, hr}}, {"fidelity", {fi}, true}};
  }
  return {};
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_csv(const SweepResult& result) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepRow& r : result.rows) {
    if (r.vary_value) out += format_number(*r.vary_value);
    for (double v : {r.temperature, r.qfi_direct, r.hss_direct, r.qfi_remote, r.hss_remote, r.fidelity,
                     r.p[0], r.p[1], r.p[2], r.p[3]}) {
      out += ',';
      out += format_number(v);
    }
    out += ',';
    out += std::to_string(r.skipped_terms);
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  Json meta;
  meta["tool"] = "thermoprobe";
  meta["version"] = result.tool_version;
  meta["spec"] = detail::spec_to_json_value(result.spec);
  meta["support_cutoff"] = result.cutoff;
  meta["derivative_source"] = result.derivative_source;
  meta["classical_fidelity_threshold"] = kClassicalFidelityThreshold;

  Json rows = Json::array();
  for (const SweepRow& r : result.rows) {
    Json row;
    row["vary_value"] = r.vary_value ? Json(*r.vary_value) : Json(nullptr);
    row["T"] = r.temperature;
    row["qfi_direct"] = r.qfi_direct;
    row["hss_direct"] = r.hss_direct;
    row["qfi_remote"] = r.qfi_remote;
    row["hss_remote"] = r.hss_remote;
    row["fidelity"] = r.fidelity;
    row["p0"] = r.p[0];
    row["p1"] = r.p[1];
    row["p2"] = r.p[2];
    row["p3"] = r.p[3];
    row["skipped_terms"] = r.skipped_terms;
    rows.push_back(std::move(row));
  }
  Json j;
  j["meta"] = std::move(meta);
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_svg(const SweepResult& result) {
  constexpr double kWidth = 820, kPanelHeight = 280;
  constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 50;
  const std::vector<Panel> panels = panels_for(result.spec.scenario);
  const bool log_x = result.spec.t_grid.spacing == Spacing::log;

  std::vector<std::optional<double>> vary_values;
  for (const SweepRow& r : result.rows) {
    if (std::find(vary_values.begin(), vary_values.end(), r.vary_value) == vary_values.end()) {
      vary_values.push_back(r.vary_value);
    }
  }

  double x_min = result.spec.t_grid.t_min, x_max = result.spec.t_grid.t_max;
  if (log_x) {
    x_min = std::log10(x_min);
    x_max = std::log10(x_max);
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  auto x_of = [&](double t) {
    const double v = log_x ? std::log10(t) : t;
    return kLeft + (v - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
  };

  std::ostringstream svg;
  const double height = kPanelHeight * static_cast<double>(panels.size());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << kWidth << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const Panel& panel = panels[pi];
    const double top = kPanelHeight * static_cast<double>(pi) + kTop;
    const double bottom = kPanelHeight * static_cast<double>(pi + 1) - kBottom;

    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (const Column& c : panel.columns)
      for (const SweepRow& r : result.rows) {
        y_min = std::min(y_min, c.get(r));
        y_max = std::max(y_max, c.get(r));
      }
    if (panel.fidelity_rule) {
      y_min = std::min(y_min, kClassicalFidelityThreshold);
      y_max = std::max(y_max, 1.0);
    }
    if (!std::isfinite(y_min) || !std::isfinite(y_max)) y_min = 0.0, y_max = 1.0;
    y_min = std::min(y_min, 0.0);
    if (y_max <= y_min) y_max = y_min + 1.0;
    y_max += 0.05 * (y_max - y_min);
    auto y_of = [&](double v) { return bottom - (v - y_min) / (y_max - y_min) * (bottom - top); };

    svg << "<g class=\"panel\" id=\"panel-" << panel.title << "\">\n";
    svg << "<text x=\"" << kLeft << "\" y=\"" << fixed(top - 12) << "\" font-weight=\"bold\">" << panel.title
        << " vs T (" << result.spec.name << ")</text>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(bottom) << "\" x2=\"" << kWidth - kRight << "\" y2=\""
        << fixed(bottom) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(top) << "\" x2=\"" << kLeft << "\" y2=\"" << fixed(bottom)
        << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double xv = x_min + (x_max - x_min) * k / 4.0;
      const double xpix = kLeft + (kWidth - kLeft - kRight) * k / 4.0;
      const double yv = y_min + (y_max - y_min) * k / 4.0;
      const double ypix = bottom - (bottom - top) * k / 4.0;
      svg << "<text x=\"" << fixed(xpix) << "\" y=\"" << fixed(bottom + 16) << "\" text-anchor=\"middle\">"
          << tick_label(log_x ? std::pow(10.0, xv) : xv) << "</text>\n";
      svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(ypix + 4) << "\" text-anchor=\"end\">"
          << tick_label(yv) << "</text>\n";
    }
    svg << "<text x=\"" << fixed((kLeft + kWidth - kRight) / 2) << "\" y=\"" << fixed(bottom + 36)
        << "\" text-anchor=\"middle\">T</text>\n";
    svg << "<text x=\"20\" y=\"" << fixed((top + bottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << fixed((top + bottom) / 2) << ")\">" << panel.title << "</text>\n";

    if (panel.fidelity_rule) {
      const double y = y_of(kClassicalFidelityThreshold);
      svg << "<line class=\"classical-threshold\" x1=\"" << kLeft << "\" y1=\"" << fixed(y) << "\" x2=\""
          << kWidth - kRight << "\" y2=\"" << fixed(y) << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
      svg << "<text x=\"" << kWidth - kRight + 4 << "\" y=\"" << fixed(y + 4) << "\" fill=\"gray\">CT = 2/3</text>\n";
    }

    std::size_t series = 0;
    for (const Column& c : panel.columns) {
      for (const auto& v : vary_values) {
        const char* colour = kPalette[series % std::size(kPalette)];
        svg << "<polyline class=\"series\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const SweepRow& r : result.rows) {
          if (r.vary_value != v) continue;
          svg << (first ? "" : " ") << fixed(x_of(r.temperature)) << ',' << fixed(y_of(c.get(r)));
          first = false;
        }
        svg << "\"/>\n";
        std::string label = c.name;
        if (v && result.spec.vary) label += std::string(" ") + to_string(result.spec.vary->field) + "=" + format_number(*v);
        const double ly = top + 14.0 * static_cast<double>(series);
        svg << "<line x1=\"" << kWidth - kRight + 8 << "\" y1=\"" << fixed(ly) << "\" x2=\"" << kWidth - kRight + 28
            << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << kWidth - kRight + 32 << "\" y=\"" << fixed(ly + 4) << "\">" << label << "</text>\n";
        ++series;
      }
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render(const SweepResult& result, ExportFormat format) {
  switch (format) {
    case ExportFormat::csv: return to_csv(result);
    case ExportFormat::json: return to_json(result);
    case ExportFormat::svg: return to_svg(result);
  }
  return to_csv(result);
}

void export_result(const SweepResult& result, ExportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::string text = render(result, format);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace thermoprobe
