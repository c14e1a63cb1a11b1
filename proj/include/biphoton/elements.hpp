#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace biphoton {

enum class Polarization { H, V };

/// Orientation of a quartz rod's optic axis. A vertical axis makes H the
/// fast polarization; a horizontal axis makes V fast.
enum class RodAxis { vertical, horizontal };

/// Group-index difference that gives a 630 fs delay for 20 mm of quartz.
inline constexpr double kQuartzCalibrationLengthMm = 20.0;
inline constexpr double kQuartzCalibrationDelayFs = 630.0;
double calibrated_group_index_difference();

struct QuartzRod {
  RodAxis axis = RodAxis::vertical;
  double length_mm = kQuartzCalibrationLengthMm;
  // Unset means calibrated: the delay scales 630 fs per 20 mm exactly.
  std::optional<double> group_index_difference;

  double effective_group_index_difference() const {
    return group_index_difference.value_or(calibrated_group_index_difference());
  }
};

struct RodDelays {
  double h_fs = 0.0;
  double v_fs = 0.0;
  double of(Polarization pol) const { return pol == Polarization::H ? h_fs : v_fs; }
};

struct TromboneDelay {
  double delay_fs = 0.0;
};

struct HalfWavePlate {
  double angle_deg = 45.0;
};

struct Analyzer {
  double angle_deg = 45.0;
};

enum class Arm { one = 1, two = 2 };
enum class Port { A, B };

/// Single-photon polarization amplitude after a half-wave plate.
struct JonesVector {
  double h = 0.0;
  double v = 0.0;
  double component(Polarization pol) const { return pol == Polarization::H ? h : v; }
};

struct PbsOutput {
  Port port;
  std::complex<double> coefficient;
};

using ArmElement = std::variant<QuartzRod, TromboneDelay, HalfWavePlate>;

/// The interferometer: two input arms feeding a PBS, one analyzer per output.
struct ElementChain {
  std::vector<ArmElement> arm1;
  std::vector<ArmElement> arm2;
  Analyzer analyzer_port_a;
  Analyzer analyzer_port_b;

  const std::vector<ArmElement>& arm(Arm which) const {
    return which == Arm::one ? arm1 : arm2;
  }
  /// Checks the fixed layout: exactly one HWP over both arms, delays finite.
  void validate() const;
};

/// cos/sin of an angle in degrees, exact at multiples of 45°.
double cos_deg(double deg);
double sin_deg(double deg);

double quartz_group_delay(const QuartzRod& rod);

/// Common-mode delay gauged to zero: only the slow polarization is delayed.
RodDelays rod_delays(const QuartzRod& rod);

/// H → cos2θ·H + sin2θ·V, V → sin2θ·H − cos2θ·V.
JonesVector hwp_action(Polarization pol, double angle_deg);

/// H transmits (coefficient 1), V reflects (coefficient i).
PbsOutput pbs_action(Arm input, Polarization pol);

/// H → cos θ, V → sin θ for θ in [−90°, 90°].
double analyzer_projection(Polarization pol, double angle_deg);

}  // namespace biphoton
