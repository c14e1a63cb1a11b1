// Acceptance run: one PASS/FAIL line per criterion with its wall time.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "biphoton/error.hpp"
#include "biphoton/oracle.hpp"
#include "biphoton/presets.hpp"
#include "biphoton/scan.hpp"
#include "biphoton/spectral.hpp"
#include "biphoton/verify.hpp"

using namespace biphoton;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < budget_s;
  const bool passed = o.passed && in_time;
  if (!passed) ++failures;
  std::printf("%s  %d  %-34s %7.2f s / %5.0f s  %s%s\n", passed ? "PASS" : "FAIL", id, title, elapsed, budget_s,
              o.detail.c_str(), in_time ? "" : " (over time budget)");
  std::fflush(stdout);
}

std::string g(double v) { return format_double(v, 6); }

double timed_scan(const std::string& name, ScanKind want, double min_v, std::ostringstream& detail, bool& ok) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentConfig c = preset(name);
  const ScanResult s = scan_delay(c, kDefaultScanMinFs, kDefaultScanMaxFs, kDefaultScanSteps);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::size_t n = required_grid_n(c.spectral, c.grid);
  ok = ok && s.kind == want && s.visibility >= min_v && elapsed < 5.0 && n == 256 && s.rates.size() == 151;
  detail << name << ' ' << to_string(s.kind) << " V=" << g(s.visibility) << " n=" << n << ' '
         << format_double(elapsed, 3) << "s; ";
  return s.visibility;
}

}  // namespace

int main() {
  criterion(1, "fig3 dip and peak at rho=1", 20.0, [] {
    std::ostringstream d;
    bool ok = true;
    timed_scan("fig3a_dip", ScanKind::dip, 0.99, d, ok);
    timed_scan("fig3a_peak", ScanKind::peak, 0.99, d, ok);
    timed_scan("fig3b_dip", ScanKind::dip, 0.99, d, ok);
    timed_scan("fig3b_peak", ScanKind::peak, 0.99, d, ok);
    return Outcome{ok, d.str()};
  });

  criterion(2, "fig4c flat, long pump restores", 10.0, [] {
    const ScanResult flat = scan_delay(preset("fig4c"), kDefaultScanMinFs, kDefaultScanMaxFs, kDefaultScanSteps);
    ExperimentConfig long_pump = preset("fig4c");
    long_pump.spectral.pump_coherence_time_fs = 6300.0;
    const ScanResult restored = scan_delay(long_pump, kDefaultScanMinFs, kDefaultScanMaxFs, kDefaultScanSteps);
    const bool ok = flat.kind == ScanKind::flat && flat.visibility <= 0.02 && restored.visibility >= 0.9;
    return Outcome{ok, std::string("tau=120 ") + to_string(flat.kind) + " V=" + g(flat.visibility) + "; tau=6300 " +
                           to_string(restored.kind) + " V=" + g(restored.visibility)};
  });

  criterion(3, "firing order and its reversal", 10.0, [] {
    std::ostringstream d;
    bool ok = true;
    for (const char* family : {"fig3a", "fig3b"}) {
      const double sign = std::string(family) == "fig3a" ? 1.0 : -1.0;
      const ExperimentConfig peak = preset(std::string(family) + "_peak");
      const TimeJointDensity coherent = arrival_time_joint(peak, 0.0);
      const double lag = sign * (coherent.mean_t_b - coherent.mean_t_a);
      double worst = std::abs(lag - 630.0);
      const TimeJointDensity dip = arrival_time_joint(preset(std::string(family) + "_dip"), 0.0);
      for (const PathTimeDensity& p : dip.paths)
        worst = std::max(worst, std::abs(sign * (p.mean_t_b - p.mean_t_a) - 630.0));
      const ScanResult s = scan_delay(peak, kDefaultScanMinFs, kDefaultScanMaxFs, kDefaultScanSteps);
      ok = ok && std::isfinite(lag) && worst <= 5.0 && s.visibility >= 0.99;
      d << family << " t_b-t_a=" << g(sign * lag) << " |err|<=" << g(worst) << " V=" << g(s.visibility) << "; ";
    }
    double curve = 0.0;
    for (const char* suffix : {"_dip", "_peak"}) {
      const ScanResult a = scan_delay(preset(std::string("fig3a") + suffix), kDefaultScanMinFs, kDefaultScanMaxFs,
                                      kDefaultScanSteps);
      const ScanResult b = scan_delay(preset(std::string("fig3b") + suffix), kDefaultScanMinFs, kDefaultScanMaxFs,
                                      kDefaultScanSteps);
      for (std::size_t i = 0; i < a.rates.size(); ++i) curve = std::max(curve, std::abs(a.rates[i] - b.rates[i]));
    }
    ok = ok && curve <= 1e-9;
    d << "max |R_3a - R_3b|=" << format_double(curve, 3);
    return Outcome{ok, d.str()};
  });

  criterion(4, "engine vs closed form", 60.0, [] {
    double worst = 0.0;
    std::size_t points = 0;
    for (double rho : {0.5, 1.0, 2.0})
      for (double tau : {60.0, 120.0, 6300.0}) {
        ExperimentConfig base = preset("fig3a_dip");
        base.spectral.asymmetry_ratio = rho;
        base.spectral.pump_coherence_time_fs = tau;
        const CoincidenceEngine shared(base);
        for (const std::string& name : preset_names()) {
          ExperimentConfig c = preset(name);
          c.spectral = base.spectral;
          const CoincidenceEngine engine = shared.rebind(c);
          for (int i = 0; i < 21; ++i) {
            const double d = -1500.0 + 150.0 * i;
            const double oracle = oracle_rate(c, d);
            const double err =
                std::abs(engine.rate(d) - oracle) / std::max(oracle, 1e-6 * engine.incoherent_rate(d));
            worst = std::max(worst, err);
            ++points;
          }
        }
      }
    return Outcome{worst < 1e-3, std::to_string(points) + " points, max rel err=" + format_double(worst, 3)};
  });

  criterion(5, "invariant suite", 120.0, [] {
    const VerifyReport report = run_verification();
    std::ostringstream d;
    d << report.checks.size() << " checks";
    if (const CheckResult* f = report.first_failure()) d << ", first failure " << f->name << ": " << f->detail;
    return Outcome{report.passed(), d.str()};
  });

  criterion(6, "calibration", 1.0, [] {
    const double rod = quartz_group_delay(QuartzRod{});
    const double tc = coherence_time_from_filter(20.0, 780.0);
    return Outcome{rod == 630.0 && std::abs(tc - 100.0) <= 2.0,
                   "quartz 20 mm=" + format_double(rod, 17) + " fs, 20 nm at 780 nm tc=" + g(tc) + " fs"};
  });

  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
