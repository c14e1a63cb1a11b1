#pragma once

#include <array>
#include <span>
#include <vector>

#include "biphoton/config.hpp"
#include "biphoton/elements.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {

enum class Ray { ordinary, extraordinary };

struct PairTerm {
  Polarization photon1;
  Ray ray1;
  Polarization photon2;
  Ray ray2;
  Complex amplitude;
};

/// (|H_o⟩₁|V_e⟩₂ + e^{iφ}|V_e⟩₁|H_o⟩₂)/√2. An H-polarized e-ray photon never occurs.
struct PairState {
  double relative_phase_rad = 0.0;

  std::array<PairTerm, 2> terms() const;
};

enum class PathLabel { rr, tt };
const char* to_string(PathLabel label) noexcept;

/// One two-photon Feynman path. The amplitude it contributes at output
/// detunings (ν_a, ν_b) is
///   coefficient · f(ν_a, ν_b) · exp(i[ν_a·delay_a + ν_b·delay_b]),
/// with the JSA arguments exchanged when `swapped` (photon 1 left via port B).
struct PathAmplitude {
  PathLabel label = PathLabel::rr;
  Complex coefficient{0.0, 0.0};
  double delay_a_fs = 0.0;
  double delay_b_fs = 0.0;
  bool swapped = false;
};

/// A(ν_a, ν_b): axis 0 is the port-A photon, axis 1 the port-B photon.
struct CoincidenceAmplitude {
  FrequencyGrid grid;
  ComplexMatrix values;
};

/// Paths for the configuration's trombone delay. Terms whose photons leave
/// through the same PBS port are dropped; an empty result means no
/// coincidences are possible.
std::vector<PathAmplitude> enumerate_paths(const ExperimentConfig& config);
std::vector<PathAmplitude> enumerate_paths(const ElementChain& chain, const PairState& pair);

CoincidenceAmplitude assemble_amplitude(std::span<const PathAmplitude> paths,
                                        const JointSpectralAmplitude& jsa,
                                        const FrequencyGrid& grid);

/// Σ|A|²w² of an assembled amplitude.
double integrate_amplitude(const CoincidenceAmplitude& amplitude);

/// ⟨A₀|A₁⟩/(‖A₀‖‖A₁‖) for exactly two paths.
Complex path_overlap(std::span<const PathAmplitude> paths, const JointSpectralAmplitude& jsa,
                     const FrequencyGrid& grid);

/// A JSA together with its transpose so both f(ν_a, ν_b) and f(ν_b, ν_a)
/// are read with unit stride.
class SwappableJsa {
 public:
  explicit SwappableJsa(JointSpectralAmplitude jsa);

  const JointSpectralAmplitude& jsa() const noexcept { return jsa_; }
  const FrequencyGrid& grid() const noexcept { return jsa_.grid; }
  const Complex* row(std::size_t i, bool swapped) const {
    return swapped ? transposed_.row(i) : jsa_.values.row(i);
  }

 private:
  JointSpectralAmplitude jsa_;
  ComplexMatrix transposed_;
};

/// Σ|A|²w² evaluated row by row without materializing A. Same value as
/// `integrate_amplitude(assemble_amplitude(...))` up to rounding.
double integrated_rate(std::span<const PathAmplitude> paths, const SwappableJsa& source);

}  // namespace biphoton
