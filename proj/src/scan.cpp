#include "biphoton/scan.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "biphoton/error.hpp"
#include "parallel.hpp"

namespace biphoton {
namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftwBuffer {
 public:
  explicit FftwBuffer(std::size_t count)
      : data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count))) {
    if (!data_) fail(ErrorKind::contract, "FFT buffer allocation failed");
  }
  ~FftwBuffer() { fftw_free(data_); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* get() const noexcept { return data_; }

 private:
  fftw_complex* data_;
};

class Fft2d {
 public:
  explicit Fft2d(std::size_t n) : n_(n), in_(n * n), out_(n * n) {
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), in_.get(), out_.get(),
                             FFTW_FORWARD, FFTW_ESTIMATE);
    if (!plan_) fail(ErrorKind::contract, "FFT planning failed");
  }
  ~Fft2d() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  // |ψ|² for ψ(t_j, t_k) = (w²/2π) Σ A(ν_m, ν_l) exp(−i[ν_m t_j + ν_l t_k]).
  // With ν_m = (m − (n−1)/2)w and t_j = (j − n/2)·2π/(nw), the sum is a DFT of
  // A·(−1)^(m+l) up to unit-modulus factors that drop out of |ψ|².
  RealMatrix density(const ComplexMatrix& amplitude, double weight) {
    for (std::size_t m = 0; m < n_; ++m) {
      for (std::size_t l = 0; l < n_; ++l) {
        const double sign = ((m + l) & 1U) ? -1.0 : 1.0;
        const Complex a = amplitude(m, l) * sign;
        in_.get()[m * n_ + l][0] = a.real();
        in_.get()[m * n_ + l][1] = a.imag();
      }
    }
    fftw_execute(plan_);
    const double scale = weight * weight / (2.0 * std::numbers::pi);
    RealMatrix out(n_);
    for (std::size_t k = 0; k < n_ * n_; ++k) {
      const double re = out_.get()[k][0] * scale;
      const double im = out_.get()[k][1] * scale;
      out.data()[k] = re * re + im * im;
    }
    return out;
  }

 private:
  std::size_t n_;
  FftwBuffer in_;
  FftwBuffer out_;
  fftw_plan plan_ = nullptr;
};

struct Moments {
  double total = 0.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
};

Moments moments(const RealMatrix& density, const std::vector<double>& times, double dt) {
  const std::size_t n = density.size();
  double sum = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double* row = density.row(j);
    double row_sum = 0.0, row_b = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      row_sum += row[k];
      row_b += row[k] * times[k];
    }
    sum += row_sum;
    sum_a += row_sum * times[j];
    sum_b += row_b;
  }
  Moments m;
  m.total = sum * dt * dt;
  m.mean_a = sum > 0.0 ? sum_a / sum : std::numeric_limits<double>::quiet_NaN();
  m.mean_b = sum > 0.0 ? sum_b / sum : std::numeric_limits<double>::quiet_NaN();
  return m;
}

ExperimentConfig with_delay(const ExperimentConfig& config, double delay_fs) {
  ExperimentConfig at = config;
  at.trombone_delay_fs = delay_fs;
  return at;
}

}  // namespace

std::size_t required_grid_n(const SpectralParams& params, const GridSpec& spec) {
  params.validate();
  std::size_t n = spec.n;
  if (!spec.auto_refine) return n;
  const double full_width = 2.0 * spec.span_sigma * params.sigma_max();
  const double max_spacing = kSumResolutionFactor * params.sum_sigma();
  while (full_width / static_cast<double>(n - 1) > max_spacing) {
    if (n >= kMaxGridN) {
      std::ostringstream msg;
      msg << "pump envelope (coherence time " << params.pump_coherence_time_fs
          << " fs) needs a grid finer than " << kMaxGridN << " points per axis";
      fail(ErrorKind::config, msg.str());
    }
    n *= 2;
  }
  return n;
}

CoincidenceEngine::CoincidenceEngine(const ExperimentConfig& config) : config_(config) {
  config_.validate();
  const std::size_t n = required_grid_n(config_.spectral, config_.grid);
  const FrequencyGrid grid = build_grid(config_.spectral, n, config_.grid.span_sigma);
  source_ = std::make_shared<const SwappableJsa>(gaussian_jsa(config_.spectral, grid));
}

CoincidenceEngine::CoincidenceEngine(const ExperimentConfig& config, JointSpectralAmplitude jsa)
    : config_(config) {
  config_.validate();
  if (jsa.values.size() != jsa.grid.size() || jsa.grid.size() < 2)
    fail(ErrorKind::contract, "JSA matrix does not match its grid");
  normalize(jsa);
  source_ = std::make_shared<const SwappableJsa>(std::move(jsa));
}

CoincidenceEngine::CoincidenceEngine(const ExperimentConfig& config,
                                     std::shared_ptr<const SwappableJsa> source)
    : config_(config), source_(std::move(source)) {
  config_.validate();
}

CoincidenceEngine CoincidenceEngine::rebind(const ExperimentConfig& config) const {
  const SpectralParams& a = config_.spectral;
  const SpectralParams& b = config.spectral;
  const bool same_spectrum =
      a.pump_center_wavelength_nm == b.pump_center_wavelength_nm &&
      a.signal_center_wavelength_nm == b.signal_center_wavelength_nm &&
      a.pump_coherence_time_fs == b.pump_coherence_time_fs &&
      a.filter_fwhm_nm == b.filter_fwhm_nm && a.filter_center_nm == b.filter_center_nm &&
      a.asymmetry_ratio == b.asymmetry_ratio && config_.grid.n == config.grid.n &&
      config_.grid.span_sigma == config.grid.span_sigma &&
      config_.grid.auto_refine == config.grid.auto_refine;
  if (!same_spectrum)
    fail(ErrorKind::contract, "rebind needs identical spectral and grid settings");
  return CoincidenceEngine(config, source_);
}

std::vector<PathAmplitude> CoincidenceEngine::paths(double delay_fs) const {
  return enumerate_paths(with_delay(config_, delay_fs));
}

double CoincidenceEngine::rate(double delay_fs) const {
  const std::vector<PathAmplitude> p = paths(delay_fs);
  return integrated_rate(p, *source_);
}

double CoincidenceEngine::incoherent_rate(double delay_fs) const {
  double sum = 0.0;
  for (const PathAmplitude& p : paths(delay_fs)) sum += std::norm(p.coefficient);
  return sum;
}

double coincidence_rate(const ExperimentConfig& config, double delay_fs) {
  return CoincidenceEngine(config).rate(delay_fs);
}

const char* to_string(ScanKind kind) noexcept {
  switch (kind) {
    case ScanKind::dip: return "dip";
    case ScanKind::peak: return "peak";
    case ScanKind::flat: return "flat";
  }
  return "flat";
}

double dip_width_estimate(const SpectralParams& params) {
  const double s1 = params.sigma1();
  const double s2 = params.sigma2();
  return std::sqrt(1.0 / (2.0 * s1 * s1) + 1.0 / (2.0 * s2 * s2));
}

ScanResult classify_scan(std::vector<double> delays, std::vector<double> rates,
                         double wing_threshold_fs, const ScanOptions& options) {
  if (delays.size() != rates.size() || delays.empty())
    fail(ErrorKind::contract, "scan delays and rates must be non-empty and equal length");

  ScanResult scan;
  scan.delays = std::move(delays);
  scan.rates = std::move(rates);
  scan.wing_threshold_fs = wing_threshold_fs;
  scan.estimator = options.estimator;

  double wing_sum = 0.0;
  std::size_t wing_count = 0;
  for (std::size_t i = 0; i < scan.delays.size(); ++i) {
    if (std::abs(scan.delays[i]) > wing_threshold_fs) {
      wing_sum += scan.rates[i];
      ++wing_count;
    }
  }
  if (wing_count == 0) {
    std::ostringstream msg;
    msg << "scan range never exceeds the wing threshold of " << wing_threshold_fs
        << " fs; no baseline";
    fail(ErrorKind::config, msg.str());
  }
  scan.baseline = wing_sum / static_cast<double>(wing_count);

  const auto [min_it, max_it] = std::minmax_element(scan.rates.begin(), scan.rates.end());
  const double up = *max_it - scan.baseline;
  const double down = scan.baseline - *min_it;
  if (scan.baseline > 0.0 && std::max(up, down) / scan.baseline < options.flat_threshold) {
    scan.kind = ScanKind::flat;
    scan.extremum = up >= down ? *max_it : *min_it;
  } else if (down >= up) {
    scan.kind = ScanKind::dip;
    scan.extremum = *min_it;
  } else {
    scan.kind = ScanKind::peak;
    scan.extremum = *max_it;
  }
  scan.visibility = visibility(scan);
  return scan;
}

double visibility(const ScanResult& scan) {
  if (!(scan.baseline > 0.0)) fail(ErrorKind::contract, "visibility undefined: zero baseline");
  if (scan.rates.empty()) fail(ErrorKind::contract, "visibility of an empty scan");
  const auto [min_it, max_it] = std::minmax_element(scan.rates.begin(), scan.rates.end());
  if (scan.estimator == VisibilityEstimator::michelson)
    return (*max_it - *min_it) / (*max_it + *min_it);
  switch (scan.kind) {
    case ScanKind::dip: return (scan.baseline - *min_it) / scan.baseline;
    case ScanKind::peak: return (*max_it - scan.baseline) / scan.baseline;
    case ScanKind::flat: break;
  }
  return std::max(*max_it - scan.baseline, scan.baseline - *min_it) / scan.baseline;
}

ScanResult scan_delay(const CoincidenceEngine& engine, double d_min, double d_max,
                      std::size_t steps, const ScanOptions& options) {
  if (!(d_min < d_max) || !std::isfinite(d_min) || !std::isfinite(d_max))
    fail(ErrorKind::config, "scan range needs finite d_min < d_max");
  if (steps < 3) fail(ErrorKind::config, "scan needs at least 3 steps");

  const double step = (d_max - d_min) / static_cast<double>(steps - 1);
  std::vector<double> delays(steps), rates(steps);
  for (std::size_t i = 0; i < steps; ++i) delays[i] = d_min + static_cast<double>(i) * step;
  delays.back() = d_max;

  detail::parallel_for(steps, options.threads, [&](std::size_t i) { rates[i] = engine.rate(delays[i]); });

  const double wings = options.wing_factor * dip_width_estimate(engine.config().spectral);
  return classify_scan(std::move(delays), std::move(rates), wings, options);
}

ScanResult scan_delay(const ExperimentConfig& config, double d_min, double d_max,
                      std::size_t steps, const ScanOptions& options) {
  return scan_delay(CoincidenceEngine(config), d_min, d_max, steps, options);
}

TimeJointDensity arrival_time_joint(const CoincidenceEngine& engine, double delay_fs) {
  const FrequencyGrid& grid = engine.grid();
  const std::size_t n = grid.size();
  if (n < 128)
    fail(ErrorKind::config, "arrival-time density needs a grid of at least 128 points");

  TimeJointDensity out;
  out.time_step = 2.0 * std::numbers::pi / (static_cast<double>(n) * grid.weight);
  out.times.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    out.times[j] = (static_cast<double>(j) - static_cast<double>(n / 2)) * out.time_step;

  const std::vector<PathAmplitude> paths = engine.paths(delay_fs);
  Fft2d fft(n);

  double incoherent_total = 0.0;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const auto single = std::span<const PathAmplitude>(paths).subspan(p, 1);
    PathTimeDensity path;
    path.label = paths[p].label;
    path.density = fft.density(assemble_amplitude(single, engine.jsa(), grid).values, grid.weight);
    const Moments m = moments(path.density, out.times, out.time_step);
    path.total = m.total;
    path.mean_t_a = m.mean_a;
    path.mean_t_b = m.mean_b;
    incoherent_total += m.total;
    out.paths.push_back(std::move(path));
  }

  out.density = fft.density(assemble_amplitude(paths, engine.jsa(), grid).values, grid.weight);
  const Moments m = moments(out.density, out.times, out.time_step);
  out.total = m.total;
  const bool resolvable = m.total > 1e-12 * incoherent_total;
  out.mean_t_a = resolvable ? m.mean_a : std::numeric_limits<double>::quiet_NaN();
  out.mean_t_b = resolvable ? m.mean_b : std::numeric_limits<double>::quiet_NaN();
  return out;
}

TimeJointDensity arrival_time_joint(const ExperimentConfig& config, double delay_fs) {
  return arrival_time_joint(CoincidenceEngine(config), delay_fs);
}

double refine_check(const ExperimentConfig& config, double delay_fs) {
  const CoincidenceEngine coarse(config);
  ExperimentConfig fine_config = config;
  fine_config.grid.n = 2 * coarse.grid().size();
  fine_config.grid.auto_refine = false;
  const CoincidenceEngine fine(fine_config);

  const double r_n = coarse.rate(delay_fs);
  const double r_2n = fine.rate(delay_fs);
  const double eps = 1e-6 * coarse.incoherent_rate(delay_fs);
  return std::abs(r_n - r_2n) / std::max(r_2n, eps);
}

}  // namespace biphoton
