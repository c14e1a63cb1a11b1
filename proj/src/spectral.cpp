#include "biphoton/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "biphoton/error.hpp"

namespace biphoton {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be positive and finite (got " << value << ")";
    fail(ErrorKind::domain, msg.str());
  }
}

}  // namespace

bool same_grid(const FrequencyGrid& a, const FrequencyGrid& b) noexcept {
  return a.points == b.points && a.weight == b.weight;
}

void SpectralParams::validate() const {
  require_positive(pump_center_wavelength_nm, "pump_center_wavelength_nm");
  require_positive(signal_center_wavelength_nm, "signal_center_wavelength_nm");
  require_positive(pump_coherence_time_fs, "pump_coherence_time_fs");
  require_positive(filter_fwhm_nm, "filter_fwhm_nm");
  require_positive(filter_center_nm, "filter_center_nm");
  require_positive(asymmetry_ratio, "asymmetry_ratio");
}

double SpectralParams::filter_coherence_time_fs() const {
  return coherence_time_from_filter(filter_fwhm_nm, filter_center_nm);
}

double SpectralParams::filter_sigma() const {
  return sigma_from_coherence_time(filter_coherence_time_fs());
}

double SpectralParams::sigma1() const { return asymmetry_ratio * filter_sigma(); }
double SpectralParams::sigma2() const { return filter_sigma() / asymmetry_ratio; }

double SpectralParams::sum_sigma() const {
  // |exp(−S²τ²/2)|² = exp(−S²τ²) has standard deviation 1/(√2 τ).
  return 1.0 / (std::numbers::sqrt2 * pump_coherence_time_fs);
}

double SpectralParams::sigma_max() const {
  return std::max({sigma1(), sigma2(), sum_sigma()});
}

double SpectralParams::signal_center_frequency() const {
  return 2.0 * std::numbers::pi * kSpeedOfLight / signal_center_wavelength_nm;
}

double JointSpectralAmplitude::norm_squared() const {
  double sum = 0.0;
  for (const Complex& v : values.data()) sum += std::norm(v);
  return sum * grid.weight * grid.weight;
}

double coherence_time_from_filter(double fwhm_nm, double center_nm) {
  require_positive(fwhm_nm, "filter FWHM");
  require_positive(center_nm, "filter center wavelength");
  return center_nm * center_nm / (kSpeedOfLight * fwhm_nm);
}

double sigma_from_coherence_time(double coherence_time_fs) {
  require_positive(coherence_time_fs, "coherence time");
  return 1.0 / coherence_time_fs;
}

FrequencyGrid build_grid(const SpectralParams& params, std::size_t n, double span_sigma) {
  params.validate();
  if (n < 64 || !std::has_single_bit(n)) {
    fail(ErrorKind::config,
         "grid size must be a power of two >= 64 (got " + std::to_string(n) + ")");
  }
  if (!(span_sigma >= 4.0) || !std::isfinite(span_sigma)) {
    std::ostringstream msg;
    msg << "grid span must be at least 4 sigma (got " << span_sigma << ")";
    fail(ErrorKind::config, msg.str());
  }

  FrequencyGrid grid;
  grid.center = params.signal_center_frequency();
  grid.span_sigma = span_sigma;
  grid.sigma_max = params.sigma_max();
  const double half = span_sigma * grid.sigma_max;
  grid.weight = 2.0 * half / static_cast<double>(n - 1);
  grid.points.resize(n);
  // Half-integer offsets keep the grid exactly antisymmetric: ν[n−1−i] = −ν[i].
  const double mid = 0.5 * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    grid.points[i] = (static_cast<double>(i) - mid) * grid.weight;
  return grid;
}

JointSpectralAmplitude gaussian_jsa(const SpectralParams& params, const FrequencyGrid& grid) {
  params.validate();
  const std::size_t n = grid.size();
  if (n < 2) fail(ErrorKind::config, "frequency grid is empty");
  const double required = 4.0 * params.sigma_max();
  if (grid.half_width() < required * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "frequency grid half-width " << grid.half_width()
        << " rad/fs does not cover 4 sigma (" << required << " rad/fs)";
    fail(ErrorKind::config, msg.str());
  }

  const double tau = params.pump_coherence_time_fs;
  const double s1 = params.sigma1();
  const double s2 = params.sigma2();

  // ν₁+ν₂ on the lattice is (k − (n−1))·w for k = i+j.
  std::vector<double> pump(2 * n - 1);
  for (std::size_t k = 0; k < pump.size(); ++k) {
    const double sum = (static_cast<double>(k) - static_cast<double>(n - 1)) * grid.weight;
    pump[k] = std::exp(-0.5 * sum * sum * tau * tau);
  }
  std::vector<double> filter1(n), filter2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double nu = grid.points[i];
    filter1[i] = std::exp(-nu * nu / (4.0 * s1 * s1));
    filter2[i] = std::exp(-nu * nu / (4.0 * s2 * s2));
  }

  JointSpectralAmplitude jsa{grid, ComplexMatrix(n), JsaModel::double_gaussian};
  for (std::size_t i = 0; i < n; ++i) {
    Complex* row = jsa.values.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = pump[i + j] * filter1[i] * filter2[j];
  }
  normalize(jsa);
  return jsa;
}

void normalize(JointSpectralAmplitude& jsa) {
  const double norm2 = jsa.norm_squared();
  if (!(norm2 > 0.0) || !std::isfinite(norm2))
    fail(ErrorKind::contract, "cannot normalize a zero or non-finite amplitude");
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& v : jsa.values.data()) v *= scale;
}

double jsa_swap_distance(const JointSpectralAmplitude& jsa) {
  const double norm2 = jsa.norm_squared();
  if (std::abs(norm2 - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "swap distance needs a normalized amplitude (norm² = " << norm2 << ")";
    fail(ErrorKind::contract, msg.str());
  }
  const std::size_t n = jsa.values.size();
  Complex overlap{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      overlap += std::conj(jsa.values(i, j)) * jsa.values(j, i);
  double self = 0.0;
  for (const Complex& v : jsa.values.data()) self += std::norm(v);
  // Ratio form: identical f and f_swapped give exactly zero.
  return std::max(0.0, 1.0 - std::abs(overlap) / self);
}

}  // namespace biphoton
