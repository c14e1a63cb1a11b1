#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/config.hpp"
#include "biphoton/scan.hpp"

namespace biphoton {

/// fig3a_* rods V/V, fig3b_* rods H/H, fig4c rods V/H. *_dip analyzers 45°/45°,
/// *_peak 45°/−45° (analyzer 2 flipped). Everything else is the default setup.
ExperimentConfig preset(std::string_view name);
const std::vector<std::string>& preset_names();

inline constexpr double kDefaultScanMinFs = -1500.0;
inline constexpr double kDefaultScanMaxFs = 1500.0;
inline constexpr std::size_t kDefaultScanSteps = 151;

struct SweepSpec {
  ExperimentConfig base;
  std::string axis;
  std::vector<double> values;
  double d_min = kDefaultScanMinFs;
  double d_max = kDefaultScanMaxFs;
  std::size_t steps = kDefaultScanSteps;
  ScanOptions options;
};

struct SweepRow {
  double value = 0.0;
  double visibility = 0.0;
  ScanKind kind = ScanKind::flat;
  double extremum = 0.0;
  double baseline = 0.0;
};

/// One scan per value, rows in input order. A failing row rethrows with its
/// index and value prefixed to the message.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Scan visibility of `base` for each pump coherence time (positive, ascending).
std::vector<double> pump_coherence_sweep(const ExperimentConfig& base,
                                         const std::vector<double>& coherence_times_fs,
                                         const ScanOptions& options = {});

}  // namespace biphoton
