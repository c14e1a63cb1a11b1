#include "biphoton/elements.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "biphoton/error.hpp"
#include "biphoton/spectral.hpp"

namespace biphoton {
namespace {

// Returns k when deg is an exact multiple of 45°, otherwise -1.
int octant(double deg) {
  const double k = deg / 45.0;
  if (std::isfinite(k) && k == std::round(k)) {
    const long m = static_cast<long>(std::round(k)) % 8;
    return static_cast<int>(m < 0 ? m + 8 : m);
  }
  return -1;
}

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kCosOctant[8] = {1.0, kHalfSqrt2, 0.0, -kHalfSqrt2,
                                  -1.0, -kHalfSqrt2, 0.0, kHalfSqrt2};

}  // namespace

double calibrated_group_index_difference() {
  return kQuartzCalibrationDelayFs * kSpeedOfLight / (kQuartzCalibrationLengthMm * 1e6);
}

double cos_deg(double deg) {
  if (const int k = octant(deg); k >= 0) return kCosOctant[k];
  return std::cos(deg * std::numbers::pi / 180.0);
}

double sin_deg(double deg) {
  if (const int k = octant(deg); k >= 0) return kCosOctant[(k + 6) % 8];
  return std::sin(deg * std::numbers::pi / 180.0);
}

double quartz_group_delay(const QuartzRod& rod) {
  if (!(rod.length_mm > 0.0) || !std::isfinite(rod.length_mm)) {
    std::ostringstream msg;
    msg << "quartz rod length must be positive (got " << rod.length_mm << " mm)";
    fail(ErrorKind::domain, msg.str());
  }
  if (!rod.group_index_difference)
    return kQuartzCalibrationDelayFs * (rod.length_mm / kQuartzCalibrationLengthMm);
  const double dn = *rod.group_index_difference;
  if (!(dn > 0.0) || !std::isfinite(dn))
    fail(ErrorKind::domain, "quartz group-index difference must be positive");
  return rod.length_mm * 1e6 * dn / kSpeedOfLight;
}

RodDelays rod_delays(const QuartzRod& rod) {
  const double t = quartz_group_delay(rod);
  return rod.axis == RodAxis::vertical ? RodDelays{0.0, t} : RodDelays{t, 0.0};
}

JonesVector hwp_action(Polarization pol, double angle_deg) {
  const double c = cos_deg(2.0 * angle_deg);
  const double s = sin_deg(2.0 * angle_deg);
  return pol == Polarization::H ? JonesVector{c, s} : JonesVector{s, -c};
}

PbsOutput pbs_action(Arm input, Polarization pol) {
  if (pol == Polarization::H)
    return {input == Arm::one ? Port::B : Port::A, {1.0, 0.0}};
  return {input == Arm::one ? Port::A : Port::B, {0.0, 1.0}};
}

double analyzer_projection(Polarization pol, double angle_deg) {
  if (!(angle_deg >= -90.0 && angle_deg <= 90.0)) {
    std::ostringstream msg;
    msg << "analyzer angle must lie in [-90, 90] degrees (got " << angle_deg << ")";
    fail(ErrorKind::domain, msg.str());
  }
  return pol == Polarization::H ? cos_deg(angle_deg) : sin_deg(angle_deg);
}

void ElementChain::validate() const {
  int plates = 0;
  for (const auto* arm : {&arm1, &arm2}) {
    for (const ArmElement& element : *arm) {
      if (std::holds_alternative<HalfWavePlate>(element)) {
        ++plates;
        if (!std::isfinite(std::get<HalfWavePlate>(element).angle_deg))
          fail(ErrorKind::config, "half-wave plate angle must be finite");
      } else if (const auto* delay = std::get_if<TromboneDelay>(&element)) {
        if (!std::isfinite(delay->delay_fs))
          fail(ErrorKind::config, "trombone delay must be finite");
      }
    }
  }
  if (plates != 1)
    fail(ErrorKind::config, "element chain must hold exactly one half-wave plate");
  // Analyzer ranges are checked on projection.
  analyzer_projection(Polarization::H, analyzer_port_a.angle_deg);
  analyzer_projection(Polarization::H, analyzer_port_b.angle_deg);
}

}  // namespace biphoton
