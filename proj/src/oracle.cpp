#include "biphoton/oracle.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "biphoton/error.hpp"

namespace biphoton {
namespace {

// Symmetric 2×2 quadratic form [[a, b], [b, c]].
struct Form2 {
  double a, b, c;
  double det() const { return a * c - b * b; }
  // xᵀ Q⁻¹ x
  double inverse_quadratic(double x, double y) const {
    return (c * x * x - 2.0 * b * x * y + a * y * y) / det();
  }
};

// u = 1/(2σ²): |filter|² = exp(−u·ν²).
struct FilterRates {
  double u1, u2;
};

FilterRates filter_rates(const SpectralParams& p) {
  const double s1 = p.sigma1();
  const double s2 = p.sigma2();
  return {1.0 / (2.0 * s1 * s1), 1.0 / (2.0 * s2 * s2)};
}

// Rate along the port-A axis for a path: photon 1's filter unless swapped.
double rate_a(const FilterRates& r, const PathAmplitude& p) { return p.swapped ? r.u2 : r.u1; }
double rate_b(const FilterRates& r, const PathAmplitude& p) { return p.swapped ? r.u1 : r.u2; }

std::pair<const PathAmplitude*, const PathAmplitude*> split(const std::vector<PathAmplitude>& paths) {
  const PathAmplitude* rr = nullptr;
  const PathAmplitude* tt = nullptr;
  for (const PathAmplitude& p : paths) (p.label == PathLabel::rr ? rr : tt) = &p;
  return {rr, tt};
}

double log_cross_integral(const SpectralParams& params, const PathAmplitude& first,
                          const PathAmplitude& second) {
  params.validate();
  const double tau2 = params.pump_coherence_time_fs * params.pump_coherence_time_fs;
  const FilterRates r = filter_rates(params);

  // |f|² = N²·exp(−xᵀQₙx) and f₁·f₂ = N²·exp(−xᵀQx), x = (ν_a, ν_b).
  const Form2 norm_form{tau2 + r.u1, tau2, tau2 + r.u2};
  const Form2 cross_form{tau2 + 0.5 * (rate_a(r, first) + rate_a(r, second)), tau2,
                         tau2 + 0.5 * (rate_b(r, first) + rate_b(r, second))};
  const double ka = first.delay_a_fs - second.delay_a_fs;
  const double kb = first.delay_b_fs - second.delay_b_fs;

  // ∫exp(−xᵀQx + ikᵀx)d²x = π/√det Q · exp(−kᵀQ⁻¹k/4), with N² = √det Qₙ/π.
  return 0.5 * std::log(norm_form.det() / cross_form.det()) -
         0.25 * cross_form.inverse_quadratic(ka, kb);
}

}  // namespace

double gaussian_cross_integral(const SpectralParams& params, const PathAmplitude& first,
                               const PathAmplitude& second) {
  return std::exp(log_cross_integral(params, first, second));
}

OracleTerms oracle_terms(const ExperimentConfig& config, double delay_fs) {
  ExperimentConfig at = config;
  at.trombone_delay_fs = delay_fs;
  const std::vector<PathAmplitude> paths = enumerate_paths(at);

  OracleTerms terms;
  const auto [rr, tt] = split(paths);
  if (rr) terms.rr_weight = std::norm(rr->coefficient);
  if (tt) terms.tt_weight = std::norm(tt->coefficient);
  if (!rr || !tt) return terms;

  terms.overlap = gaussian_cross_integral(config.spectral, *rr, *tt);
  terms.cross = 2.0 * (rr->coefficient * std::conj(tt->coefficient)).real() * terms.overlap;
  const double sum_shift = (rr->delay_a_fs - tt->delay_a_fs) + (rr->delay_b_fs - tt->delay_b_fs);
  const double scale = std::abs(rr->delay_a_fs) + std::abs(tt->delay_a_fs) +
                       std::abs(rr->delay_b_fs) + std::abs(tt->delay_b_fs) + 1.0;
  terms.geometry = rr->swapped != tt->swapped && std::abs(sum_shift) <= 1e-9 * scale
                       ? OracleGeometry::difference_frequency
                       : OracleGeometry::sum_frequency;
  return terms;
}

double oracle_rate(const ExperimentConfig& config, double delay_fs) {
  return oracle_terms(config, delay_fs).rate();
}

double oracle_rate(const ExperimentConfig& config, const JointSpectralAmplitude& jsa,
                   double delay_fs) {
  if (jsa.model != JsaModel::double_gaussian)
    fail(ErrorKind::unsupported, "the closed-form oracle only covers the double-Gaussian JSA");
  return oracle_rate(config, delay_fs);
}

double oracle_visibility(const ExperimentConfig& config) {
  // The exponent of G is quadratic in d; locate its maximum from three samples.
  const OracleTerms base_terms = oracle_terms(config, 0.0);
  const double baseline = base_terms.rr_weight + base_terms.tt_weight;
  if (!(baseline > 0.0)) fail(ErrorKind::contract, "visibility undefined: zero baseline");
  if (base_terms.geometry == OracleGeometry::single_path) return 0.0;

  const auto log_overlap = [&](double d) {
    ExperimentConfig at = config;
    at.trombone_delay_fs = d;
    const std::vector<PathAmplitude> paths = enumerate_paths(at);
    const auto [rr, tt] = split(paths);
    return log_cross_integral(config.spectral, *rr, *tt);
  };
  constexpr double kStep = 100.0;
  const double lm = log_overlap(-kStep);
  const double l0 = log_overlap(0.0);
  const double lp = log_overlap(kStep);
  const double curvature = lp - 2.0 * l0 + lm;
  double best = 0.0;
  if (curvature < 0.0) best = -0.5 * kStep * (lp - lm) / curvature;
  return std::abs(oracle_terms(config, best).cross) / baseline;
}

}  // namespace biphoton
