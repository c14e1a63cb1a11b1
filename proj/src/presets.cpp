#include "biphoton/presets.hpp"

#include <sstream>

#include "biphoton/error.hpp"

namespace biphoton {

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig3a_dip", "fig3a_peak", "fig3b_dip",
                                                 "fig3b_peak", "fig4c"};
  return names;
}

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig config;
  if (name == "fig3a_dip" || name == "fig3a_peak") {
    config.qr1_axis = RodAxis::vertical;
    config.qr2_axis = RodAxis::vertical;
  } else if (name == "fig3b_dip" || name == "fig3b_peak") {
    config.qr1_axis = RodAxis::horizontal;
    config.qr2_axis = RodAxis::horizontal;
  } else if (name == "fig4c") {
    config.qr1_axis = RodAxis::vertical;
    config.qr2_axis = RodAxis::horizontal;
  } else {
    std::ostringstream msg;
    msg << "unknown preset '" << name << "'; valid presets:";
    for (const std::string& n : preset_names()) msg << ' ' << n;
    fail(ErrorKind::lookup, msg.str());
  }
  config.analyzer1_deg = 45.0;
  config.analyzer2_deg = name.ends_with("_peak") ? -45.0 : 45.0;
  return config;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (!is_numeric_parameter(spec.axis)) {
    std::ostringstream msg;
    msg << "unknown sweep axis '" << spec.axis << "'; valid axes:";
    for (const std::string& n : numeric_parameter_names()) msg << ' ' << n;
    fail(ErrorKind::lookup, msg.str());
  }
  if (spec.values.empty()) fail(ErrorKind::config, "sweep needs at least one value");

  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const double value = spec.values[i];
    try {
      ExperimentConfig config = spec.base;
      set_numeric_parameter(config, spec.axis, value);
      const ScanResult scan = scan_delay(config, spec.d_min, spec.d_max, spec.steps, spec.options);
      rows.push_back({value, scan.visibility, scan.kind, scan.extremum, scan.baseline});
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "sweep row " << i << " (" << spec.axis << " = " << format_double(value, 9)
          << "): " << e.what();
      fail(e.kind(), msg.str());
    }
  }
  return rows;
}

std::vector<double> pump_coherence_sweep(const ExperimentConfig& base,
                                         const std::vector<double>& coherence_times_fs,
                                         const ScanOptions& options) {
  for (std::size_t i = 0; i < coherence_times_fs.size(); ++i) {
    if (!(coherence_times_fs[i] > 0.0))
      fail(ErrorKind::config, "pump coherence times must be positive");
    if (i > 0 && !(coherence_times_fs[i] > coherence_times_fs[i - 1]))
      fail(ErrorKind::config, "pump coherence times must be strictly ascending");
  }
  SweepSpec spec;
  spec.base = base;
  spec.axis = "pump_coherence_time_fs";
  spec.values = coherence_times_fs;
  spec.options = options;
  std::vector<double> out;
  for (const SweepRow& row : run_sweep(spec)) out.push_back(row.visibility);
  return out;
}

}  // namespace biphoton
