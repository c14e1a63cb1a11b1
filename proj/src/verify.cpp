#include "biphoton/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "biphoton/elements.hpp"
#include "biphoton/error.hpp"
#include "biphoton/oracle.hpp"
#include "biphoton/presets.hpp"
#include "biphoton/scan.hpp"
#include "parallel.hpp"

namespace biphoton {
namespace {

struct Outcome {
  double metric = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

using CheckFn = Outcome (*)(const VerifyOptions&);

ExperimentConfig prepared(ExperimentConfig config, const VerifyOptions& options) {
  if (options.grid_n) {
    config.grid.n = *options.grid_n;
    config.grid.auto_refine = false;
  }
  return config;
}

ExperimentConfig prepared(std::string_view name, const VerifyOptions& options) {
  return prepared(preset(name), options);
}

std::vector<double> uniform_delays(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

double relative_error(double value, double reference, double scale) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-6 * scale);
}

// Worst (max − min)/mean of a quantity that should not depend on d.
double relative_spread(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  return (*hi - *lo) / mean;
}

std::string fmt(double v) { return format_double(v, 6); }

Outcome below(double metric, double threshold, std::string detail) {
  return {metric, threshold, metric < threshold, std::move(detail)};
}

double orthogonal_angle(double deg) { return deg + 90.0 <= 90.0 ? deg + 90.0 : deg - 90.0; }

Outcome check_calibration(const VerifyOptions&) {
  const double delay = quartz_group_delay(QuartzRod{RodAxis::vertical, 20.0, std::nullopt});
  const double coherence = coherence_time_from_filter(20.0, 780.0);
  const double metric = std::max(std::abs(delay - 630.0) * 1e6, std::abs(coherence - 100.0));
  std::ostringstream detail;
  detail << "quartz delay(20 mm) = " << format_double(delay, 17)
         << " fs; filter coherence time(20 nm, 780 nm) = " << fmt(coherence) << " fs";
  return {metric, 2.0, delay == 630.0 && std::abs(coherence - 100.0) <= 2.0, detail.str()};
}

Outcome check_grid_refinement(const VerifyOptions& options) {
  double worst = 0.0;
  std::string where;
  for (const std::string& name : preset_names()) {
    for (double tau : {120.0, 6300.0}) {
      ExperimentConfig config = prepared(name, options);
      config.spectral.pump_coherence_time_fs = tau;
      for (double d : {0.0, 50.0, 200.0}) {
        const double delta = refine_check(config, d);
        if (where.empty() || delta > worst) {
          worst = delta;
          where = name + " tau_p=" + fmt(tau) + " d=" + fmt(d);
        }
      }
    }
  }
  return below(worst, 1e-6, "max |R_n - R_2n|/R_2n at " + where);
}

Outcome check_engine_oracle(const VerifyOptions& options) {
  struct Point {
    double fwhm, rho, tau;
  };
  std::vector<Point> lattice;
  for (double fwhm : {10.0, 20.0, 40.0})
    for (double rho : {0.5, 1.0, 2.0})
      for (double tau : {60.0, 120.0, 6300.0}) lattice.push_back({fwhm, rho, tau});

  const std::vector<double> delays = uniform_delays(-1500.0, 1500.0, 21);
  std::vector<double> worst(lattice.size(), 0.0);
  detail::parallel_for(lattice.size(), options.threads, [&](std::size_t i) {
    ExperimentConfig base = prepared("fig3a_dip", options);
    base.spectral.filter_fwhm_nm = lattice[i].fwhm;
    base.spectral.asymmetry_ratio = lattice[i].rho;
    base.spectral.pump_coherence_time_fs = lattice[i].tau;
    const CoincidenceEngine shared(base);
    for (const std::string& name : preset_names()) {
      ExperimentConfig config = prepared(name, options);
      config.spectral = base.spectral;
      const CoincidenceEngine engine = shared.rebind(config);
      for (double d : delays) {
        const double err =
            relative_error(engine.rate(d), oracle_rate(config, d), engine.incoherent_rate(d));
        worst[i] = std::max(worst[i], err);
      }
    }
  });
  const std::size_t at = static_cast<std::size_t>(
      std::max_element(worst.begin(), worst.end()) - worst.begin());
  std::ostringstream detail;
  detail << lattice.size() << " spectral points x " << preset_names().size()
         << " presets x 21 delays; worst at fwhm=" << fmt(lattice[at].fwhm)
         << " rho=" << fmt(lattice[at].rho) << " tau_p=" << fmt(lattice[at].tau);
  return below(worst[at], 1e-3, detail.str());
}

// Configurations sharing one spectrum, evaluated on one engine.
template <typename Fn>
double worst_over_rod_pairs(const VerifyOptions& options, Fn&& per_delay_spread) {
  const std::array<std::pair<RodAxis, RodAxis>, 3> rods = {
      std::pair{RodAxis::vertical, RodAxis::vertical},
      std::pair{RodAxis::horizontal, RodAxis::horizontal},
      std::pair{RodAxis::vertical, RodAxis::horizontal}};
  double worst = 0.0;
  for (double rho : {1.0, 2.0}) {
    ExperimentConfig base = prepared("fig3a_dip", options);
    base.spectral.asymmetry_ratio = rho;
    const CoincidenceEngine shared(base);
    for (const auto& [qr1, qr2] : rods) {
      ExperimentConfig config = base;
      config.qr1_axis = qr1;
      config.qr2_axis = qr2;
      worst = std::max(worst, per_delay_spread(shared, config));
    }
  }
  return worst;
}

double analyzer_sum_spread(const CoincidenceEngine& shared, ExperimentConfig config,
                           const std::vector<std::pair<double, double>>& analyzers) {
  std::vector<CoincidenceEngine> engines;
  for (const auto& [a1, a2] : analyzers) {
    config.analyzer1_deg = a1;
    config.analyzer2_deg = a2;
    engines.push_back(shared.rebind(config));
  }
  std::vector<double> sums;
  for (double d : uniform_delays(-1500.0, 1500.0, 21)) {
    double sum = 0.0;
    for (const CoincidenceEngine& e : engines) sum += e.rate(d);
    sums.push_back(sum);
  }
  return relative_spread(sums);
}

Outcome check_outcome_completeness(const VerifyOptions& options) {
  const double worst = worst_over_rod_pairs(options, [](const CoincidenceEngine& e,
                                                        const ExperimentConfig& c) {
    double spread = 0.0;
    for (const auto& [a1, a2] : {std::pair{45.0, 45.0}, std::pair{30.0, -70.0}}) {
      const double b1 = orthogonal_angle(a1);
      const double b2 = orthogonal_angle(a2);
      spread = std::max(spread, analyzer_sum_spread(e, c, {{a1, a2}, {a1, b2}, {b1, a2}, {b1, b2}}));
    }
    return spread;
  });
  return below(worst, 1e-6, "spread over d of the four-outcome analyzer sum");
}

Outcome check_dip_peak_complementarity(const VerifyOptions& options) {
  const double worst = worst_over_rod_pairs(options, [](const CoincidenceEngine& e,
                                                        const ExperimentConfig& c) {
    return analyzer_sum_spread(e, c, {{45.0, 45.0}, {45.0, -45.0}});
  });
  return below(worst, 1e-6, "spread over d of R(45,45) + R(45,-45)");
}

Outcome check_parseval(const VerifyOptions& options) {
  double worst = 0.0;
  for (const std::string& name : preset_names()) {
    const CoincidenceEngine engine(prepared(name, options));
    for (double d : {0.0, 100.0}) {
      const TimeJointDensity joint = arrival_time_joint(engine, d);
      worst = std::max(worst, relative_error(joint.total, engine.rate(d), engine.incoherent_rate(d)));
    }
  }
  return below(worst, 1e-6, "time-domain total vs frequency-domain rate");
}

Outcome check_normalization_invariance(const VerifyOptions& options) {
  double worst = 0.0;
  for (const std::string& name : preset_names()) {
    const ExperimentConfig config = prepared(name, options);
    const CoincidenceEngine reference(config);
    JointSpectralAmplitude scaled = reference.jsa();
    for (Complex& v : scaled.values.data()) v *= 7.3;
    const CoincidenceEngine rescaled(config, std::move(scaled));

    const ScanResult a = scan_delay(reference, -1500.0, 1500.0, 61);
    const ScanResult b = scan_delay(rescaled, -1500.0, 1500.0, 61);
    if (a.kind != b.kind) return {1.0, 1e-12, false, name + ": classification changed"};
    for (std::size_t i = 0; i < a.rates.size(); ++i)
      worst = std::max(worst, relative_error(b.rates[i], a.rates[i], reference.incoherent_rate(a.delays[i])));
    worst = std::max(worst, std::abs(a.visibility - b.visibility));
  }
  return below(worst, 1e-12, "JSA scaled by 7.3 before normalization");
}

Outcome check_visibility_overlap(const VerifyOptions& options) {
  ScanOptions scan_options;
  scan_options.wing_factor = 5.0;
  double worst = 0.0;
  for (const char* name : {"fig3a_dip", "fig3a_peak", "fig3b_dip", "fig3b_peak"}) {
    for (double rho : {1.0, 1.5, 2.0}) {
      ExperimentConfig config = prepared(name, options);
      config.spectral.asymmetry_ratio = rho;
      const CoincidenceEngine engine(config);
      const ScanResult scan = scan_delay(engine, -1500.0, 1500.0, 151, scan_options);
      const std::vector<PathAmplitude> paths = engine.paths(0.0);
      const double overlap = std::abs(path_overlap(paths, engine.jsa(), engine.grid()));
      worst = std::max(worst, std::abs(scan.visibility - overlap));
    }
  }
  return below(worst, 1e-6, "|V_scan - |overlap(d=0)|| for rho in {1, 1.5, 2}");
}

Outcome check_rod_axis_swap(const VerifyOptions& options) {
  double worst = 0.0;
  for (const auto& [a, b] : {std::pair{"fig3a_dip", "fig3b_dip"}, std::pair{"fig3a_peak", "fig3b_peak"}}) {
    const ScanResult sa = scan_delay(prepared(a, options), -1500.0, 1500.0, 151);
    const ScanResult sb = scan_delay(prepared(b, options), -1500.0, 1500.0, 151);
    for (std::size_t i = 0; i < sa.rates.size(); ++i)
      worst = std::max(worst, std::abs(sa.rates[i] - sb.rates[i]));
  }
  return below(worst, 1e-9, "max pointwise |R_fig3a - R_fig3b|");
}

Outcome check_firing_order(const VerifyOptions& options) {
  constexpr double kT = 630.0;
  double worst = 0.0;
  const auto track = [&](double lag) {
    worst = std::isfinite(lag) ? std::max(worst, std::abs(lag - kT))
                               : std::numeric_limits<double>::infinity();
  };

  for (const auto& [name, sign] : {std::pair{"fig3a_dip", 1.0}, std::pair{"fig3b_dip", -1.0}}) {
    const TimeJointDensity joint = arrival_time_joint(prepared(name, options), 0.0);
    for (const PathTimeDensity& p : joint.paths) track(sign * (p.mean_t_b - p.mean_t_a));
  }
  for (const auto& [name, sign] : {std::pair{"fig3a_peak", 1.0}, std::pair{"fig3b_peak", -1.0}}) {
    const TimeJointDensity joint = arrival_time_joint(prepared(name, options), 0.0);
    track(sign * (joint.mean_t_b - joint.mean_t_a));
  }
  if (!std::isfinite(worst)) return {worst, 5.0, false, "arrival-time means undefined"};
  return below(worst, 5.0, "| |<t_b> - <t_a>| - 630 fs | at d=0, sign reversed between fig3a and fig3b");
}

Outcome check_preset_outcomes(const VerifyOptions& options) {
  struct Expect {
    const char* name;
    ScanKind kind;
  };
  std::ostringstream detail;
  int failures = 0;
  for (const Expect& e : {Expect{"fig3a_dip", ScanKind::dip}, Expect{"fig3a_peak", ScanKind::peak},
                          Expect{"fig3b_dip", ScanKind::dip}, Expect{"fig3b_peak", ScanKind::peak}}) {
    const ScanResult s = scan_delay(prepared(e.name, options), -1500.0, 1500.0, 151);
    detail << e.name << ": " << to_string(s.kind) << " V=" << fmt(s.visibility) << "; ";
    if (s.kind != e.kind || s.visibility < 0.99) ++failures;
  }
  const ScanResult flat = scan_delay(prepared("fig4c", options), -1500.0, 1500.0, 151);
  detail << "fig4c: " << to_string(flat.kind) << " V=" << fmt(flat.visibility) << "; ";
  if (flat.kind != ScanKind::flat || flat.visibility > 0.02) ++failures;

  ExperimentConfig long_pump = prepared("fig4c", options);
  long_pump.spectral.pump_coherence_time_fs = 6300.0;
  const ScanResult restored = scan_delay(long_pump, -1500.0, 1500.0, 151);
  detail << "fig4c tau_p=6300: " << to_string(restored.kind) << " V=" << fmt(restored.visibility);
  if (restored.visibility < 0.9) ++failures;
  return {static_cast<double>(failures), 1.0, failures == 0, detail.str()};
}

Outcome check_pump_coherence_monotone(const VerifyOptions& options) {
  const std::vector<double> taus = {60.0, 120.0, 630.0, 6300.0};
  const std::vector<double> v = pump_coherence_sweep(prepared("fig4c", options), taus);
  double worst_drop = 0.0;
  std::ostringstream detail;
  for (std::size_t i = 0; i < v.size(); ++i) {
    detail << (i ? ", " : "V = ") << fmt(v[i]);
    if (i > 0) worst_drop = std::max(worst_drop, v[i - 1] - v[i]);
  }
  detail << " at tau_p = 60, 120, 630, 6300 fs";
  return {worst_drop, 0.0, worst_drop <= 0.0, detail.str()};
}

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"calibration", check_calibration},
      {"grid_refinement", check_grid_refinement},
      {"engine_oracle", check_engine_oracle},
      {"outcome_completeness", check_outcome_completeness},
      {"dip_peak_complementarity", check_dip_peak_complementarity},
      {"parseval", check_parseval},
      {"normalization_invariance", check_normalization_invariance},
      {"visibility_overlap", check_visibility_overlap},
      {"rod_axis_swap", check_rod_axis_swap},
      {"firing_order", check_firing_order},
      {"preset_outcomes", check_preset_outcomes},
      {"pump_coherence_monotone", check_pump_coherence_monotone},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& verification_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : registry()) out.push_back(entry.first);
    return out;
  }();
  return names;
}

CheckResult run_check(std::string_view name, const VerifyOptions& options) {
  const auto it = std::find_if(registry().begin(), registry().end(),
                               [&](const auto& entry) { return entry.first == name; });
  if (it == registry().end()) {
    std::ostringstream msg;
    msg << "unknown check '" << name << "'";
    fail(ErrorKind::lookup, msg.str());
  }
  CheckResult result;
  result.name = it->first;
  try {
    Outcome o = it->second(options);
    result.passed = o.passed && std::isfinite(o.metric);
    if (std::isfinite(o.metric)) result.metric = o.metric;
    result.threshold = o.threshold;
    result.detail = std::move(o.detail);
  } catch (const Error& e) {
    result.passed = false;
    result.detail = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return result;
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  report.grid_n = options.grid_n;
  for (const std::string& name : verification_check_names())
    report.checks.push_back(run_check(name, options));
  return report;
}

bool VerifyReport::passed() const { return first_failure() == nullptr; }

const CheckResult* VerifyReport::first_failure() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["passed"] = passed();
  const CheckResult* failure = first_failure();
  doc["first_failure"] = failure ? nlohmann::ordered_json(failure->name) : nlohmann::ordered_json();
  doc["grid_n_override"] = grid_n ? nlohmann::ordered_json(*grid_n) : nlohmann::ordered_json();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["metric"] = c.metric ? nlohmann::ordered_json(*c.metric) : nlohmann::ordered_json();
    item["threshold"] = c.threshold;
    item["detail"] = c.detail;
    list.push_back(std::move(item));
  }
  doc["checks"] = std::move(list);
  return doc.dump(2) + "\n";
}

}  // namespace biphoton
