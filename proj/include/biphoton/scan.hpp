#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "biphoton/config.hpp"
#include "biphoton/pathsum.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

/// Largest grid the engine will allocate (4096² complex values ≈ 268 MB).
inline constexpr std::size_t kMaxGridN = 4096;

/// Pump-ridge resolution: grid spacing may not exceed this multiple of the
/// |pump|² standard deviation along ν₁+ν₂.
inline constexpr double kSumResolutionFactor = 1.1;

/// Grid size actually used for `spec`: the requested n, raised to the next
/// powers of two until the pump ridge is resolved when `auto_refine` is set.
std::size_t required_grid_n(const SpectralParams& params, const GridSpec& spec);

/// Immutable JSA plus interferometer; evaluates R(d) = Σ|A|²w².
class CoincidenceEngine {
 public:
  /// Double-Gaussian JSA on the resolved grid.
  explicit CoincidenceEngine(const ExperimentConfig& config);
  /// Caller-supplied amplitude (normalized copy). The oracle refuses these.
  CoincidenceEngine(const ExperimentConfig& config, JointSpectralAmplitude jsa);

  /// Same JSA, different interferometer. Spectral and grid settings of
  /// `config` must match this engine's exactly.
  CoincidenceEngine rebind(const ExperimentConfig& config) const;

  const ExperimentConfig& config() const noexcept { return config_; }
  const FrequencyGrid& grid() const noexcept { return source_->grid(); }
  const JointSpectralAmplitude& jsa() const noexcept { return source_->jsa(); }

  std::vector<PathAmplitude> paths(double delay_fs) const;
  double rate(double delay_fs) const;
  /// Non-interfering reference Σ_paths |c|², used to scale tolerances.
  double incoherent_rate(double delay_fs) const;

 private:
  CoincidenceEngine(const ExperimentConfig& config, std::shared_ptr<const SwappableJsa> source);

  ExperimentConfig config_;
  std::shared_ptr<const SwappableJsa> source_;
};

double coincidence_rate(const ExperimentConfig& config, double delay_fs);

enum class ScanKind { dip, peak, flat };
const char* to_string(ScanKind kind) noexcept;

enum class VisibilityEstimator {
  baseline_referenced,  // dip: (base−min)/base, peak: (max−base)/base
  michelson,            // (max−min)/(max+min)
};

struct ScanOptions {
  double wing_factor = 3.0;      // wings start at wing_factor × dip-width estimate
  double flat_threshold = 0.02;  // max|R−base|/base below this is flat
  VisibilityEstimator estimator = VisibilityEstimator::baseline_referenced;
  unsigned threads = 1;
};

struct ScanResult {
  std::vector<double> delays;
  std::vector<double> rates;
  double wing_threshold_fs = 0.0;
  double baseline = 0.0;
  double extremum = 0.0;
  double visibility = 0.0;
  ScanKind kind = ScanKind::flat;
  VisibilityEstimator estimator = VisibilityEstimator::baseline_referenced;
};

/// 1/e half-width in d of the interference envelope, √(1/(2σ₁²) + 1/(2σ₂²)).
double dip_width_estimate(const SpectralParams& params);

/// Baseline, extremum, kind and visibility for already-computed rates.
ScanResult classify_scan(std::vector<double> delays, std::vector<double> rates,
                         double wing_threshold_fs, const ScanOptions& options = {});

ScanResult scan_delay(const CoincidenceEngine& engine, double d_min, double d_max,
                      std::size_t steps, const ScanOptions& options = {});
ScanResult scan_delay(const ExperimentConfig& config, double d_min, double d_max,
                      std::size_t steps, const ScanOptions& options = {});

/// Recomputes the visibility of `scan` from its rates and baseline.
double visibility(const ScanResult& scan);

struct PathTimeDensity {
  PathLabel label;
  RealMatrix density;
  double total = 0.0;
  double mean_t_a = 0.0;
  double mean_t_b = 0.0;
};

/// |ψ(t_a, t_b)|² on the time grid conjugate to the frequency grid; ψ is the
/// unitary 2-D Fourier transform of A, so an exp(iνδ) phase peaks at t = δ.
struct TimeJointDensity {
  std::vector<double> times;  // fs, shared by both axes
  double time_step = 0.0;
  RealMatrix density;          // rows t_a, columns t_b
  double total = 0.0;          // Σ density · dt²
  double mean_t_a = 0.0;       // NaN when the coherent total vanishes
  double mean_t_b = 0.0;
  std::vector<PathTimeDensity> paths;  // each path on its own, no interference
};

TimeJointDensity arrival_time_joint(const CoincidenceEngine& engine, double delay_fs);
TimeJointDensity arrival_time_joint(const ExperimentConfig& config, double delay_fs);

/// |R_n − R_2n|/max(R_2n, ε) with ε = 1e-6 × the incoherent rate.
double refine_check(const ExperimentConfig& config, double delay_fs);

}  // namespace biphoton
