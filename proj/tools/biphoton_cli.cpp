// Command-line front end. Talks to the simulator only through biphoton.h.
#include <biphoton/biphoton.h>

#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

struct Failure {
  int code;
};

int exit_code(bph_status status) {
  switch (status) {
    case BPH_OK: return kOk;
    case BPH_ERR_DOMAIN:
    case BPH_ERR_CONFIG:
    case BPH_ERR_LOOKUP:
    case BPH_ERR_IO:
    case BPH_ERR_ARGUMENT: return kUsage;
    case BPH_ERR_CONTRACT:
    case BPH_ERR_UNSUPPORTED:
    case BPH_ERR_INTERNAL: return kNumerical;
  }
  return kNumerical;
}

void check(bph_status status) {
  if (status == BPH_OK) return;
  std::cerr << "error (" << bph_status_name(status) << "): " << bph_last_error() << '\n';
  throw Failure{exit_code(status)};
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  throw Failure{kUsage};
}

struct ConfigDeleter {
  void operator()(bph_config* c) const { bph_config_free(c); }
};
struct ScanDeleter {
  void operator()(bph_scan* s) const { bph_scan_free(s); }
};
struct SweepDeleter {
  void operator()(bph_sweep* s) const { bph_sweep_free(s); }
};
struct ReportDeleter {
  void operator()(bph_report* r) const { bph_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { bph_string_free(s); }
};
using Config = std::unique_ptr<bph_config, ConfigDeleter>;
using Text = std::unique_ptr<char, StringDeleter>;

std::optional<std::size_t> grid_override() {
  const char* raw = std::getenv("BIPHOTON_GRID_N");
  if (!raw || !*raw) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(raw, &end, 10);
  if (errno != 0 || *end != '\0' || n == 0) usage_error("BIPHOTON_GRID_N must be a positive integer");
  return static_cast<std::size_t>(n);
}

// A path to an existing file is a config file; anything else must be a preset.
Config load_target(const std::string& target, const std::vector<std::string>& overrides) {
  bph_config* raw = nullptr;
  std::error_code ec;
  if (std::filesystem::is_regular_file(target, ec))
    check(bph_config_from_file(target.c_str(), &raw));
  else
    check(bph_config_from_preset(target.c_str(), &raw));
  Config config(raw);

  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) usage_error("--set expects key=value, got '" + kv + "'");
    check(bph_config_set(config.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  if (const auto n = grid_override()) check(bph_config_force_grid(config.get(), *n));
  return config;
}

void write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) usage_error("cannot write '" + path + "'");
}

std::string g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct ScanFlags {
  double d_min = -1500.0;
  double d_max = 1500.0;
  std::size_t steps = 151;
  unsigned threads = 1;
  bool michelson = false;
  std::optional<double> wing_factor;
  std::optional<double> flat_threshold;
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--d-min", d_min, "Scan start delay (fs)")->capture_default_str();
    cmd->add_option("--d-max", d_max, "Scan end delay (fs)")->capture_default_str();
    cmd->add_option("--steps", steps, "Delay points")->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
    cmd->add_flag("--michelson", michelson, "Report (max-min)/(max+min) visibility");
    cmd->add_option("--wing-factor", wing_factor, "Baseline wings start at this many dip widths");
    cmd->add_option("--flat-threshold", flat_threshold, "Relative excursion below which a scan is flat");
    cmd->add_option("--set", overrides, "Override a config key (key=value), repeatable");
  }

  bph_scan_options options() const {
    bph_scan_options o;
    bph_scan_options_default(&o);
    o.michelson = michelson ? 1 : 0;
    o.threads = threads;
    if (wing_factor) o.wing_factor = *wing_factor;
    if (flat_threshold) o.flat_threshold = *flat_threshold;
    return o;
  }
};

int cmd_run(const std::string& target, const ScanFlags& flags, const std::string& csv_path,
            const std::string& svg_path) {
  const Config config = load_target(target, flags.overrides);
  const bph_scan_options options = flags.options();
  bph_scan* raw = nullptr;
  check(bph_scan_run(config.get(), flags.d_min, flags.d_max, flags.steps, &options, &raw));
  const std::unique_ptr<bph_scan, ScanDeleter> scan(raw);

  char* csv_raw = nullptr;
  check(bph_scan_csv(scan.get(), &csv_raw));
  const Text csv(csv_raw);
  if (csv_path.empty() || csv_path == "-")
    std::fputs(csv.get(), stdout);
  else
    write_file(csv_path, csv.get());

  if (!svg_path.empty()) {
    char* svg_raw = nullptr;
    check(bph_scan_svg(scan.get(), target.c_str(), &svg_raw));
    const Text svg(svg_raw);
    write_file(svg_path, svg.get());
  }

  bph_scan_summary s;
  check(bph_scan_summary_get(scan.get(), &s));
  std::ostream& out = (csv_path.empty() || csv_path == "-") ? std::cerr : std::cout;
  out << "config: " << target << '\n'
      << "grid_n: " << s.grid_n << '\n'
      << "points: " << s.points << '\n'
      << "kind: " << bph_kind_name(s.kind) << '\n'
      << "visibility: " << g9(s.visibility) << (flags.michelson ? " (michelson)" : "") << '\n'
      << "baseline: " << g9(s.baseline) << '\n'
      << "extremum: " << g9(s.extremum) << '\n'
      << "oracle_max_rel_delta: " << g9(s.oracle_max_rel_delta) << '\n';
  return kOk;
}

int cmd_sweep(const std::string& target, const std::string& axis, const std::vector<double>& values,
              const ScanFlags& flags, const std::string& csv_path) {
  const Config config = load_target(target, flags.overrides);
  const bph_scan_options options = flags.options();
  bph_sweep* raw = nullptr;
  check(bph_sweep_run(config.get(), axis.c_str(), values.data(), values.size(), flags.d_min,
                      flags.d_max, flags.steps, &options, &raw));
  const std::unique_ptr<bph_sweep, SweepDeleter> sweep(raw);
  char* csv_raw = nullptr;
  check(bph_sweep_csv(sweep.get(), &csv_raw));
  const Text csv(csv_raw);
  if (csv_path.empty() || csv_path == "-")
    std::fputs(csv.get(), stdout);
  else
    write_file(csv_path, csv.get());
  return kOk;
}

int cmd_verify(unsigned threads, const std::string& only) {
  bph_verify_options options{};
  options.threads = threads;
  options.only = only.empty() ? nullptr : only.c_str();
  if (const auto n = grid_override()) options.grid_n = *n;

  bph_report* raw = nullptr;
  check(bph_verify_run(&options, &raw));
  const std::unique_ptr<bph_report, ReportDeleter> report(raw);
  char* json_raw = nullptr;
  check(bph_report_json(report.get(), &json_raw));
  const Text json(json_raw);
  std::fputs(json.get(), stdout);
  if (!bph_report_passed(report.get())) {
    std::cerr << "verification failed: " << bph_report_first_failure(report.get()) << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_list() {
  std::cout << "presets:";
  for (std::size_t i = 0; i < bph_preset_count(); ++i) std::cout << ' ' << bph_preset_name(i);
  std::cout << "\nsweep axes:";
  for (std::size_t i = 0; i < bph_sweep_axis_count(); ++i) std::cout << ' ' << bph_sweep_axis_name(i);
  std::cout << "\nchecks:";
  for (std::size_t i = 0; i < bph_check_count(); ++i) std::cout << ' ' << bph_check_name(i);
  std::cout << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon interference simulator for a pulsed type-II SPDC polarization interferometer"};
  app.require_subcommand(1);

  ScanFlags run_flags;
  std::string run_target, run_csv, run_svg;
  CLI::App* run = app.add_subcommand("run", "Scan the trombone delay for a preset or config file");
  run->add_option("target", run_target, "Preset name or config file path")->required();
  run->add_option("-o,--csv", run_csv, "CSV output path (default: standard output)");
  run->add_option("--svg", run_svg, "Also write an SVG plot of the scan");
  run_flags.attach(run);

  ScanFlags sweep_flags;
  std::string sweep_target, sweep_axis, sweep_csv;
  std::vector<double> sweep_values;
  CLI::App* sweep = app.add_subcommand("sweep", "Visibility across values of one parameter");
  sweep->add_option("target", sweep_target, "Preset name or config file path")->required();
  sweep->add_option("--axis", sweep_axis, "Parameter to sweep")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required()->delimiter(',');
  sweep->add_option("-o,--csv", sweep_csv, "CSV output path (default: standard output)");
  sweep_flags.attach(sweep);

  unsigned verify_threads = 1;
  std::string verify_only;
  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite; JSON report on standard output");
  verify->add_option("--threads", verify_threads, "Worker threads")->capture_default_str();
  verify->add_option("--check", verify_only, "Run only this check");

  CLI::App* list = app.add_subcommand("list", "List presets, sweep axes and checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_target, run_flags, run_csv, run_svg);
    if (*sweep) return cmd_sweep(sweep_target, sweep_axis, sweep_values, sweep_flags, sweep_csv);
    if (*verify) return cmd_verify(verify_threads, verify_only);
    if (*list) return cmd_list();
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
