#include <gtest/gtest.h>

#include <cmath>

#include "biphoton/error.hpp"
#include "biphoton/oracle.hpp"
#include "biphoton/presets.hpp"
#include "biphoton/scan.hpp"

using namespace biphoton;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::io;
}

ScanResult synthetic(std::vector<double> rates) {
  std::vector<double> delays;
  for (std::size_t i = 0; i < rates.size(); ++i)
    delays.push_back(-100.0 + 200.0 * static_cast<double>(i) / static_cast<double>(rates.size() - 1));
  return classify_scan(std::move(delays), std::move(rates), 60.0);
}

}  // namespace

TEST(GridSize, RefinesForLongPumps) {
  SpectralParams p;
  GridSpec spec;
  EXPECT_EQ(required_grid_n(p, spec), 256u);
  p.pump_coherence_time_fs = 6300.0;
  EXPECT_EQ(required_grid_n(p, spec), 1024u);
  p.asymmetry_ratio = 2.0;
  EXPECT_EQ(required_grid_n(p, spec), 2048u);
  spec.auto_refine = false;
  EXPECT_EQ(required_grid_n(p, spec), 256u);
  spec.auto_refine = true;
  p.pump_coherence_time_fs = 1e5;
  EXPECT_EQ(kind_of([&] { required_grid_n(p, spec); }), ErrorKind::config);
}

TEST(Rate, DipZeroAndEqualWings) {
  const CoincidenceEngine engine(preset("fig3a_dip"));
  const double base = engine.incoherent_rate(0.0);
  EXPECT_DOUBLE_EQ(base, 0.25);
  EXPECT_LT(engine.rate(0.0), 1e-6 * base);
  EXPECT_NEAR(engine.rate(-2000.0), base, 1e-6 * base);
  EXPECT_NEAR(engine.rate(2000.0), engine.rate(-2000.0), 1e-6 * base);
  EXPECT_EQ(coincidence_rate(preset("fig3a_dip"), 37.0), engine.rate(37.0));
}

TEST(Rate, SinglePathIsFlat) {
  ExperimentConfig c = preset("fig3a_dip");
  c.analyzer1_deg = 0.0;
  c.analyzer2_deg = 0.0;
  const CoincidenceEngine engine(c);
  const double r0 = engine.rate(0.0);
  for (double d : {-1500.0, -100.0, 20.0, 900.0}) EXPECT_NEAR(engine.rate(d), r0, 1e-9);
}

TEST(Rate, AgreesWithOracleForEveryPreset) {
  for (const std::string& name : preset_names()) {
    const CoincidenceEngine engine(preset(name));
    for (double d = -1500.0; d <= 1500.0; d += 150.0) {
      const double oracle = oracle_rate(engine.config(), d);
      EXPECT_LE(std::abs(engine.rate(d) - oracle), 1e-3 * std::max(oracle, 1e-6 * 0.25)) << name << " d=" << d;
    }
  }
}

TEST(Rate, RebindSharesSpectrumOnly) {
  const CoincidenceEngine engine(preset("fig3a_dip"));
  const CoincidenceEngine peak = engine.rebind(preset("fig3a_peak"));
  EXPECT_EQ(&peak.jsa(), &engine.jsa());
  EXPECT_NEAR(peak.rate(0.0), 0.5, 1e-9);
  ExperimentConfig other = preset("fig3a_peak");
  other.spectral.asymmetry_ratio = 2.0;
  EXPECT_EQ(kind_of([&] { engine.rebind(other); }), ErrorKind::contract);
}

TEST(Rate, NormalizationInvariance) {
  const ExperimentConfig c = preset("fig3a_peak");
  const CoincidenceEngine reference(c);
  JointSpectralAmplitude scaled = reference.jsa();
  for (Complex& v : scaled.values.data()) v *= 1234.5;
  const CoincidenceEngine rescaled(c, scaled);
  for (double d : {-400.0, 0.0, 60.0}) EXPECT_NEAR(rescaled.rate(d), reference.rate(d), 1e-12 * reference.rate(d));
}

TEST(Scan, PresetKindsAndVisibility) {
  const ScanResult dip = scan_delay(preset("fig3a_dip"), -1500.0, 1500.0, 151);
  EXPECT_EQ(dip.kind, ScanKind::dip);
  EXPECT_GE(dip.visibility, 0.99);
  const ScanResult peak = scan_delay(preset("fig3b_peak"), -1500.0, 1500.0, 151);
  EXPECT_EQ(peak.kind, ScanKind::peak);
  EXPECT_GE(peak.visibility, 0.99);
  const ScanResult flat = scan_delay(preset("fig4c"), -1500.0, 1500.0, 151);
  EXPECT_EQ(flat.kind, ScanKind::flat);
  EXPECT_LE(flat.visibility, 0.02);
}

TEST(Scan, UniformDelaysIncludingZero) {
  const ScanResult s = scan_delay(preset("fig3a_dip"), -1500.0, 1500.0, 151);
  ASSERT_EQ(s.delays.size(), 151u);
  EXPECT_EQ(s.delays.front(), -1500.0);
  EXPECT_EQ(s.delays[75], 0.0);
  EXPECT_EQ(s.delays.back(), 1500.0);
  for (double r : s.rates) EXPECT_GE(r, 0.0);
  EXPECT_NEAR(s.wing_threshold_fs, 3.0 * dip_width_estimate(preset("fig3a_dip").spectral), 1e-12);
}

TEST(Scan, Preconditions) {
  const ExperimentConfig c = preset("fig3a_dip");
  EXPECT_EQ(kind_of([&] { scan_delay(c, 10.0, 10.0, 11); }), ErrorKind::config);
  EXPECT_EQ(kind_of([&] { scan_delay(c, -10.0, 10.0, 2); }), ErrorKind::config);
  EXPECT_EQ(kind_of([&] { scan_delay(c, -50.0, 50.0, 11); }), ErrorKind::config);  // no wings
  ExperimentConfig none = c;
  none.hwp_angle_deg = 0.0;
  EXPECT_EQ(kind_of([&] { scan_delay(none, -1500.0, 1500.0, 31); }), ErrorKind::contract);
}

TEST(Scan, IdenticalAcrossThreadCounts) {
  ScanOptions one;
  ScanOptions four;
  four.threads = 4;
  ExperimentConfig c = preset("fig3a_dip");
  c.spectral.asymmetry_ratio = 1.3;
  const CoincidenceEngine engine(c);
  const ScanResult a = scan_delay(engine, -1500.0, 1500.0, 61, one);
  const ScanResult b = scan_delay(engine, -1500.0, 1500.0, 61, four);
  EXPECT_EQ(a.rates, b.rates);
  EXPECT_EQ(a.visibility, b.visibility);
}

TEST(Visibility, Definitions) {
  const ScanResult ideal_dip = synthetic({1, 1, 1, 0.5, 0, 0.5, 1, 1, 1});
  EXPECT_EQ(ideal_dip.kind, ScanKind::dip);
  EXPECT_EQ(ideal_dip.visibility, 1.0);
  EXPECT_EQ(ideal_dip.extremum, 0.0);

  const ScanResult ideal_peak = synthetic({1, 1, 1, 1.5, 2, 1.5, 1, 1, 1});
  EXPECT_EQ(ideal_peak.kind, ScanKind::peak);
  EXPECT_EQ(ideal_peak.visibility, 1.0);

  const ScanResult flat = synthetic({1, 1, 1, 1.001, 1.002, 0.999, 1, 1, 1});
  EXPECT_EQ(flat.kind, ScanKind::flat);
  EXPECT_NEAR(flat.visibility, 0.002, 1e-12);
}

TEST(Visibility, MichelsonEstimator) {
  ScanOptions o;
  o.estimator = VisibilityEstimator::michelson;
  const ScanResult s = classify_scan({-100, -50, 0, 50, 100}, {1, 1, 0.2, 1, 1}, 60.0, o);
  EXPECT_EQ(s.kind, ScanKind::dip);
  EXPECT_NEAR(s.visibility, 0.8 / 1.2, 1e-15);
}

TEST(Visibility, ZeroBaselineIsUndefined) {
  EXPECT_EQ(kind_of([] { synthetic({0, 0, 0, 0, 0, 0, 0}); }), ErrorKind::contract);
  ScanResult s;
  s.rates = {1.0};
  s.baseline = 0.0;
  EXPECT_EQ(kind_of([&] { visibility(s); }), ErrorKind::contract);
}

TEST(Visibility, FlatThresholdIsConfigurable) {
  ScanOptions strict;
  strict.flat_threshold = 1e-4;
  const ScanResult s = classify_scan({-100, -50, 0, 50, 100}, {1, 1, 1.001, 1, 1}, 60.0, strict);
  EXPECT_EQ(s.kind, ScanKind::peak);
}

TEST(ArrivalTime, ParsevalAndPathMeans) {
  const CoincidenceEngine engine(preset("fig3a_dip"));
  const TimeJointDensity joint = arrival_time_joint(engine, 0.0);
  EXPECT_LT(joint.total, 1e-6 * 0.25);
  EXPECT_TRUE(std::isnan(joint.mean_t_a));
  ASSERT_EQ(joint.paths.size(), 2u);
  for (const PathTimeDensity& p : joint.paths) {
    EXPECT_NEAR(p.total, 0.125, 1e-9);
    EXPECT_NEAR(p.mean_t_b - p.mean_t_a, 630.0, 1e-6);
  }
  for (double d : {-150.0, 40.0}) {
    const TimeJointDensity off = arrival_time_joint(engine, d);
    EXPECT_NEAR(off.total, engine.rate(d), 1e-6 * engine.rate(d));
  }
}

TEST(ArrivalTime, FiringOrderReversesBetweenRodOrientations) {
  const TimeJointDensity a = arrival_time_joint(preset("fig3a_peak"), 0.0);
  const TimeJointDensity b = arrival_time_joint(preset("fig3b_peak"), 0.0);
  EXPECT_NEAR(a.mean_t_b - a.mean_t_a, 630.0, 5.0);
  EXPECT_NEAR(b.mean_t_a - b.mean_t_b, 630.0, 5.0);
}

TEST(ArrivalTime, Fig4PhotonsOverlapButPairTimesDiffer) {
  const TimeJointDensity j = arrival_time_joint(preset("fig4c"), 0.0);
  ASSERT_EQ(j.paths.size(), 2u);
  const PathTimeDensity& p0 = j.paths[0];
  const PathTimeDensity& p1 = j.paths[1];
  EXPECT_NEAR(p0.mean_t_a - p0.mean_t_b, 0.0, 1e-6);
  EXPECT_NEAR(p1.mean_t_a - p1.mean_t_b, 0.0, 1e-6);
  EXPECT_NEAR(std::abs(p1.mean_t_a - p0.mean_t_a), 630.0, 1e-6);
  EXPECT_NEAR(std::abs(p1.mean_t_b - p0.mean_t_b), 630.0, 1e-6);
}

// |f|² = exp(−xᵀQx) in frequency gives |ψ|² ∝ exp(−tᵀQ⁻¹... ) with covariance Q/2.
TEST(ArrivalTime, PathCovarianceMatchesClosedForm) {
  ExperimentConfig c = preset("fig3a_dip");
  c.spectral.asymmetry_ratio = 1.5;
  const TimeJointDensity j = arrival_time_joint(c, 0.0);
  const double tau2 = c.spectral.pump_coherence_time_fs * c.spectral.pump_coherence_time_fs;
  const double u1 = 1.0 / (2.0 * c.spectral.sigma1() * c.spectral.sigma1());
  const double u2 = 1.0 / (2.0 * c.spectral.sigma2() * c.spectral.sigma2());
  for (const PathTimeDensity& p : j.paths) {
    const bool swapped = p.label == PathLabel::tt;
    const double ua = swapped ? u2 : u1;
    double m0 = 0.0, va = 0.0, vd = 0.0;
    for (std::size_t a = 0; a < j.times.size(); ++a)
      for (std::size_t b = 0; b < j.times.size(); ++b) {
        const double w = p.density(a, b);
        const double ta = j.times[a] - p.mean_t_a;
        const double td = (j.times[a] - j.times[b]) - (p.mean_t_a - p.mean_t_b);
        m0 += w;
        va += w * ta * ta;
        vd += w * td * td;
      }
    EXPECT_NEAR(va / m0, 0.5 * (tau2 + ua), 1e-4 * 0.5 * (tau2 + ua));
    EXPECT_NEAR(vd / m0, 0.5 * (u1 + u2), 1e-4 * 0.5 * (u1 + u2));
  }
}

TEST(ArrivalTime, NeedsResolvedGrid) {
  ExperimentConfig c = preset("fig3a_dip");
  c.grid.n = 64;
  c.grid.auto_refine = false;
  EXPECT_EQ(kind_of([&] { arrival_time_joint(c, 0.0); }), ErrorKind::config);
}

TEST(Refinement, Converged) {
  EXPECT_LT(refine_check(preset("fig3a_dip"), 0.0), 1e-6);
  EXPECT_LT(refine_check(preset("fig3a_peak"), 80.0), 1e-6);
  EXPECT_LT(refine_check(preset("fig4c"), 0.0), 1e-6);
  ExperimentConfig coarse = preset("fig3a_peak");
  coarse.grid.n = 64;
  coarse.grid.auto_refine = false;
  EXPECT_LT(refine_check(coarse, 80.0), 1e-3);
  ExperimentConfig unresolved = preset("fig4c");
  unresolved.spectral.pump_coherence_time_fs = 6300.0;
  unresolved.grid.auto_refine = false;
  EXPECT_GT(refine_check(unresolved, 0.0), 1e-3);
}
