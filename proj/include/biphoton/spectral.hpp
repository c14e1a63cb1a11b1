#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

namespace biphoton {

using Complex = std::complex<double>;

/// Speed of light in nm/fs.
inline constexpr double kSpeedOfLight = 299.792458;

/// Square row-major matrix. Axis 0 (row) is the first frequency argument.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const {
    return data_[row * n_ + col];
  }

  T* row(std::size_t r) { return data_.data() + r * n_; }
  const T* row(std::size_t r) const { return data_.data() + r * n_; }

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  SquareMatrix transposed() const;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = SquareMatrix<Complex>;
using RealMatrix = SquareMatrix<double>;

template <typename T>
SquareMatrix<T> SquareMatrix<T>::transposed() const {
  SquareMatrix<T> out(n_);
  constexpr std::size_t kBlock = 32;
  for (std::size_t i0 = 0; i0 < n_; i0 += kBlock)
    for (std::size_t j0 = 0; j0 < n_; j0 += kBlock)
      for (std::size_t i = i0; i < std::min(i0 + kBlock, n_); ++i)
        for (std::size_t j = j0; j < std::min(j0 + kBlock, n_); ++j)
          out(j, i) = (*this)(i, j);
  return out;
}

/// Uniform detuning grid ν = ω − ω₀ shared by both photon axes.
struct FrequencyGrid {
  double center = 0.0;      // ω₀, rad/fs
  double span_sigma = 0.0;  // half-width in units of the widest spectral sigma
  double sigma_max = 0.0;   // rad/fs
  std::vector<double> points;
  double weight = 0.0;  // uniform spacing, rad/fs

  std::size_t size() const noexcept { return points.size(); }
  double half_width() const noexcept { return points.empty() ? 0.0 : points.back(); }
};

bool same_grid(const FrequencyGrid& a, const FrequencyGrid& b) noexcept;

/// Source and filter parameters. Wavelengths in nm, times in fs.
struct SpectralParams {
  double pump_center_wavelength_nm = 390.0;
  double signal_center_wavelength_nm = 780.0;
  double pump_coherence_time_fs = 120.0;
  double filter_fwhm_nm = 20.0;
  double filter_center_nm = 780.0;
  // Ratio of the photon-1 to photon-2 marginal sigma (e/o spectral asymmetry).
  double asymmetry_ratio = 1.0;

  void validate() const;

  double filter_coherence_time_fs() const;
  double filter_sigma() const;  // σ_f, rad/fs
  double sigma1() const;        // ρ·σ_f
  double sigma2() const;        // σ_f/ρ
  // Standard deviation of |pump envelope|² along ν₁+ν₂.
  double sum_sigma() const;
  double sigma_max() const;
  double signal_center_frequency() const;  // rad/fs
};

enum class JsaModel { double_gaussian, tabulated };

/// Biphoton amplitude f(ν₁, ν₂): slot 1 is the photon entering arm 1.
struct JointSpectralAmplitude {
  FrequencyGrid grid;
  ComplexMatrix values;
  JsaModel model = JsaModel::tabulated;

  double norm_squared() const;  // Σ|f|² w²
};

/// λ²/(c·Δλ) in fs.
double coherence_time_from_filter(double fwhm_nm, double center_nm);

/// σ = 1/t_c for a Gaussian amplitude spectrum exp(−ν²/(4σ²)), whose
/// amplitude autocorrelation is exp(−τ²/(2 t_c²)).
double sigma_from_coherence_time(double coherence_time_fs);

FrequencyGrid build_grid(const SpectralParams& params, std::size_t n, double span_sigma);

JointSpectralAmplitude gaussian_jsa(const SpectralParams& params, const FrequencyGrid& grid);

/// Rescales to unit L2 norm. Throws a contract error on a zero amplitude.
void normalize(JointSpectralAmplitude& jsa);

/// 1 − |⟨f|f_swapped⟩| for a normalized amplitude.
double jsa_swap_distance(const JointSpectralAmplitude& jsa);

}  // namespace biphoton
