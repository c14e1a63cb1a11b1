#pragma once

#include "biphoton/config.hpp"
#include "biphoton/pathsum.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

/// Where the two paths' relative phase lives in the double-Gaussian JSA:
/// along ν_a−ν_b only (QR1 ∥ QR2), or also along ν_a+ν_b where the pump
/// envelope suppresses it (QR1 ⟂ QR2).
enum class OracleGeometry { single_path, difference_frequency, sum_frequency };

struct OracleTerms {
  double rr_weight = 0.0;  // |c_rr|²
  double tt_weight = 0.0;  // |c_tt|²
  double cross = 0.0;      // 2·Re[c_rr·conj(c_tt)·G]
  double overlap = 0.0;    // G, the normalized Gaussian cross-integral
  OracleGeometry geometry = OracleGeometry::single_path;

  double rate() const { return rr_weight + tt_weight + cross; }
};

/// G for two paths over the continuous double-Gaussian JSA of `params`.
double gaussian_cross_integral(const SpectralParams& params, const PathAmplitude& first,
                               const PathAmplitude& second);

OracleTerms oracle_terms(const ExperimentConfig& config, double delay_fs);

/// Closed-form coincidence rate. The overload taking a JSA refuses anything
/// other than the double-Gaussian model.
double oracle_rate(const ExperimentConfig& config, double delay_fs);
double oracle_rate(const ExperimentConfig& config, const JointSpectralAmplitude& jsa,
                   double delay_fs);

/// |R(d*) − baseline|/baseline at the delay d* where |G| peaks; the baseline
/// is the non-interfering |c_rr|² + |c_tt|².
double oracle_visibility(const ExperimentConfig& config);

}  // namespace biphoton
