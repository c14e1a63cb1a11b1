#include "biphoton/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "biphoton/error.hpp"

namespace biphoton {
namespace {

struct NumericField {
  const char* key;
  double ExperimentConfig::*member;
  double SpectralParams::*spectral_member;
};

constexpr NumericField kNumericFields[] = {
    {"rod_length_mm", &ExperimentConfig::rod_length_mm, nullptr},
    {"hwp_angle_deg", &ExperimentConfig::hwp_angle_deg, nullptr},
    {"analyzer1_deg", &ExperimentConfig::analyzer1_deg, nullptr},
    {"analyzer2_deg", &ExperimentConfig::analyzer2_deg, nullptr},
    {"trombone_delay_fs", &ExperimentConfig::trombone_delay_fs, nullptr},
    {"pair_phase_rad", &ExperimentConfig::pair_phase_rad, nullptr},
    {"pump_center_wavelength_nm", nullptr, &SpectralParams::pump_center_wavelength_nm},
    {"signal_center_wavelength_nm", nullptr, &SpectralParams::signal_center_wavelength_nm},
    {"pump_coherence_time_fs", nullptr, &SpectralParams::pump_coherence_time_fs},
    {"filter_fwhm_nm", nullptr, &SpectralParams::filter_fwhm_nm},
    {"filter_center_nm", nullptr, &SpectralParams::filter_center_nm},
    {"asymmetry_ratio", nullptr, &SpectralParams::asymmetry_ratio},
    {"grid_span_sigma", nullptr, nullptr},
};

const NumericField* find_numeric(std::string_view key) {
  for (const NumericField& field : kNumericFields)
    if (key == field.key) return &field;
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    fail(ErrorKind::config,
         "key '" + std::string(key) + "': expected a finite number, got '" + std::string(text) + "'");
  }
  return value;
}

RodAxis parse_axis(std::string_view key, std::string_view text) {
  const std::string v = lower(text);
  if (v == "vertical" || v == "v") return RodAxis::vertical;
  if (v == "horizontal" || v == "h") return RodAxis::horizontal;
  fail(ErrorKind::config, "key '" + std::string(key) +
                              "': expected vertical or horizontal, got '" + std::string(text) + "'");
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string v = lower(text);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorKind::config,
       "key '" + std::string(key) + "': expected true or false, got '" + std::string(text) + "'");
}

const char* axis_name(RodAxis axis) {
  return axis == RodAxis::vertical ? "vertical" : "horizontal";
}

}  // namespace

std::string format_double(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

void ExperimentConfig::validate() const {
  spectral.validate();
  if (!(rod_length_mm >= 0.0) || !std::isfinite(rod_length_mm))
    fail(ErrorKind::config, "rod_length_mm must be >= 0");
  for (const double angle : {hwp_angle_deg, analyzer1_deg, analyzer2_deg, pair_phase_rad,
                             trombone_delay_fs, grid.span_sigma}) {
    if (!std::isfinite(angle)) fail(ErrorKind::config, "configuration values must be finite");
  }
  if (group_index_difference && !(*group_index_difference > 0.0))
    fail(ErrorKind::config, "group_index_difference must be positive");
  build_chain(*this).validate();
}

ElementChain build_chain(const ExperimentConfig& config) {
  ElementChain chain;
  if (config.rod_length_mm > 0.0) {
    chain.arm1.push_back(
        QuartzRod{config.qr1_axis, config.rod_length_mm, config.group_index_difference});
  }
  chain.arm1.push_back(TromboneDelay{config.trombone_delay_fs});
  chain.arm1.push_back(HalfWavePlate{config.hwp_angle_deg});
  if (config.rod_length_mm > 0.0) {
    chain.arm2.push_back(
        QuartzRod{config.qr2_axis, config.rod_length_mm, config.group_index_difference});
  }
  chain.analyzer_port_a = Analyzer{config.port_a_analyzer_deg()};
  chain.analyzer_port_b = Analyzer{config.port_b_analyzer_deg()};
  return chain;
}

const std::vector<std::string>& numeric_parameter_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const NumericField& field : kNumericFields) out.emplace_back(field.key);
    return out;
  }();
  return names;
}

bool is_numeric_parameter(std::string_view key) { return find_numeric(key) != nullptr; }

void set_numeric_parameter(ExperimentConfig& config, std::string_view key, double value) {
  const NumericField* field = find_numeric(key);
  if (!field) {
    std::string names;
    for (const auto& name : numeric_parameter_names()) names += (names.empty() ? "" : ", ") + name;
    fail(ErrorKind::lookup, "unknown parameter '" + std::string(key) + "' (valid: " + names + ")");
  }
  if (field->member) {
    config.*(field->member) = value;
  } else if (field->spectral_member) {
    config.spectral.*(field->spectral_member) = value;
  } else {
    config.grid.span_sigma = value;
  }
}

double get_numeric_parameter(const ExperimentConfig& config, std::string_view key) {
  const NumericField* field = find_numeric(key);
  if (!field) fail(ErrorKind::lookup, "unknown parameter '" + std::string(key) + "'");
  if (field->member) return config.*(field->member);
  if (field->spectral_member) return config.spectral.*(field->spectral_member);
  return config.grid.span_sigma;
}

void set_parameter(ExperimentConfig& config, std::string_view key, std::string_view value) {
  value = trim(value);
  if (is_numeric_parameter(key)) {
    set_numeric_parameter(config, key, parse_double(key, value));
  } else if (key == "qr1_axis") {
    config.qr1_axis = parse_axis(key, value);
  } else if (key == "qr2_axis") {
    config.qr2_axis = parse_axis(key, value);
  } else if (key == "group_index_difference") {
    if (lower(value) == "calibrated") {
      config.group_index_difference.reset();
    } else {
      config.group_index_difference = parse_double(key, value);
    }
  } else if (key == "grid_n") {
    const double n = parse_double(key, value);
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e9)
      fail(ErrorKind::config, "key 'grid_n': expected a positive integer");
    config.grid.n = static_cast<std::size_t>(n);
  } else if (key == "grid_auto_refine") {
    config.grid.auto_refine = parse_bool(key, value);
  } else {
    fail(ErrorKind::lookup, "unknown key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base) {
  ExperimentConfig config = base;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string_view::npos)
      fail(ErrorKind::config, where + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::config, where + ": missing key");
    try {
      set_parameter(config, key, value);
    } catch (const Error& e) {
      // Unknown keys are configuration errors inside a file.
      fail(ErrorKind::config, where + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::config, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), base);
}

std::string to_config_text(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "qr1_axis = " << axis_name(config.qr1_axis) << '\n';
  out << "qr2_axis = " << axis_name(config.qr2_axis) << '\n';
  out << "group_index_difference = "
      << (config.group_index_difference ? format_double(*config.group_index_difference, 17)
                                        : std::string("calibrated"))
      << '\n';
  for (const NumericField& field : kNumericFields)
    out << field.key << " = " << format_double(get_numeric_parameter(config, field.key), 17) << '\n';
  out << "grid_n = " << config.grid.n << '\n';
  out << "grid_auto_refine = " << (config.grid.auto_refine ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace biphoton
