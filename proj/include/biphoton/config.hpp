#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/elements.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

struct GridSpec {
  std::size_t n = 256;
  double span_sigma = 6.0;
  // Raise n (powers of two) until the pump ridge along ν₁+ν₂ is resolved.
  bool auto_refine = true;
};

/// Full interferometer description. Analyzer 1 sits in front of D1 and
/// analyzer 2 in front of D2; PBS port A feeds D2 and port B feeds D1.
struct ExperimentConfig {
  RodAxis qr1_axis = RodAxis::vertical;
  RodAxis qr2_axis = RodAxis::vertical;
  double rod_length_mm = 20.0;  // 0 removes both rods
  std::optional<double> group_index_difference;
  double hwp_angle_deg = 45.0;
  double analyzer1_deg = 45.0;
  double analyzer2_deg = 45.0;
  double trombone_delay_fs = 0.0;
  SpectralParams spectral;
  GridSpec grid;
  double pair_phase_rad = 0.0;

  void validate() const;

  double port_a_analyzer_deg() const { return analyzer2_deg; }
  double port_b_analyzer_deg() const { return analyzer1_deg; }
};

/// Arm 1: QR1, trombone, HWP. Arm 2: QR2.
ElementChain build_chain(const ExperimentConfig& config);

/// Sets one key from its text form. Unknown keys raise a lookup error,
/// unparsable values a configuration error.
void set_parameter(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Keys accepted by `set_numeric_parameter` (the sweepable axes).
const std::vector<std::string>& numeric_parameter_names();
bool is_numeric_parameter(std::string_view key);
void set_numeric_parameter(ExperimentConfig& config, std::string_view key, double value);
double get_numeric_parameter(const ExperimentConfig& config, std::string_view key);

/// Parses `key = value` lines over `base`. Blank lines and `#` comments are
/// ignored; errors carry the line number.
ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base = {});
ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base = {});

/// Every key, one per line, in a form `parse_config` reads back exactly.
std::string to_config_text(const ExperimentConfig& config);

std::string format_double(double value, int significant_digits);

}  // namespace biphoton
