#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "biphoton/elements.hpp"
#include "biphoton/error.hpp"

using namespace biphoton;

namespace {

using Complex = std::complex<double>;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

QuartzRod rod(RodAxis axis, double length_mm) { return QuartzRod{axis, length_mm, std::nullopt}; }

}  // namespace

TEST(Quartz, CalibratedDelay) {
  EXPECT_EQ(quartz_group_delay(rod(RodAxis::vertical, 20.0)), 630.0);
  EXPECT_EQ(quartz_group_delay(rod(RodAxis::vertical, 10.0)), 315.0);
  EXPECT_NEAR(calibrated_group_index_difference(), 9.44e-3, 1e-5);
}

TEST(Quartz, ExplicitGroupIndexDifference) {
  const QuartzRod r{RodAxis::vertical, 20.0, calibrated_group_index_difference()};
  EXPECT_NEAR(quartz_group_delay(r), 630.0, 1e-9);
  const QuartzRod doubled{RodAxis::vertical, 20.0, 2.0 * calibrated_group_index_difference()};
  EXPECT_NEAR(quartz_group_delay(doubled), 1260.0, 1e-9);
}

TEST(Quartz, RejectsNonPositiveLength) {
  EXPECT_THROW(quartz_group_delay(rod(RodAxis::vertical, 0.0)), Error);
  try {
    quartz_group_delay(rod(RodAxis::vertical, -1.0));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(Quartz, AxisSelectsSlowPolarization) {
  const RodDelays v = rod_delays(rod(RodAxis::vertical, 20.0));
  EXPECT_EQ(v.h_fs, 0.0);
  EXPECT_EQ(v.v_fs, 630.0);
  const RodDelays h = rod_delays(rod(RodAxis::horizontal, 20.0));
  EXPECT_EQ(h.h_fs, 630.0);
  EXPECT_EQ(h.v_fs, 0.0);
  EXPECT_EQ(v.of(Polarization::H), h.of(Polarization::V));
}

TEST(HalfWavePlate, FlipsAt45) {
  const JonesVector h = hwp_action(Polarization::H, 45.0);
  EXPECT_EQ(h.h, 0.0);
  EXPECT_EQ(h.v, 1.0);
  const JonesVector v = hwp_action(Polarization::V, 45.0);
  EXPECT_EQ(v.h, 1.0);
  EXPECT_EQ(v.v, 0.0);
}

TEST(HalfWavePlate, IdentityAtZeroAndGeneralAngle) {
  const JonesVector h = hwp_action(Polarization::H, 0.0);
  EXPECT_EQ(h.h, 1.0);
  EXPECT_EQ(h.v, 0.0);
  const double t = 22.5;
  const JonesVector a = hwp_action(Polarization::H, t);
  const JonesVector b = hwp_action(Polarization::V, t);
  EXPECT_NEAR(a.h, std::cos(2 * t * std::numbers::pi / 180), 1e-15);
  EXPECT_NEAR(a.v, std::sin(2 * t * std::numbers::pi / 180), 1e-15);
  EXPECT_NEAR(b.h, a.v, 1e-15);
  EXPECT_NEAR(b.v, -a.h, 1e-15);
  EXPECT_NEAR(a.h * b.h + a.v * b.v, 0.0, 1e-15);
}

TEST(Pbs, RoutingAndPhases) {
  PbsOutput o = pbs_action(Arm::one, Polarization::V);
  EXPECT_EQ(o.port, Port::A);
  EXPECT_EQ(o.coefficient, Complex(0.0, 1.0));
  o = pbs_action(Arm::one, Polarization::H);
  EXPECT_EQ(o.port, Port::B);
  EXPECT_EQ(o.coefficient, Complex(1.0, 0.0));
  o = pbs_action(Arm::two, Polarization::V);
  EXPECT_EQ(o.port, Port::B);
  EXPECT_EQ(o.coefficient, Complex(0.0, 1.0));
  o = pbs_action(Arm::two, Polarization::H);
  EXPECT_EQ(o.port, Port::A);
  EXPECT_EQ(o.coefficient, Complex(1.0, 0.0));
}

TEST(Pbs, UnitaryPerInput) {
  for (Arm arm : {Arm::one, Arm::two}) {
    for (Polarization pol : {Polarization::H, Polarization::V}) {
      double total = 0.0;
      for (Port port : {Port::A, Port::B}) {
        const PbsOutput o = pbs_action(arm, pol);
        if (o.port == port) total += std::norm(o.coefficient);
      }
      EXPECT_DOUBLE_EQ(total, 1.0);
    }
  }
}

TEST(Analyzer, Projections) {
  EXPECT_DOUBLE_EQ(analyzer_projection(Polarization::V, 45.0), kInvSqrt2);
  EXPECT_DOUBLE_EQ(analyzer_projection(Polarization::V, -45.0), -kInvSqrt2);
  EXPECT_EQ(analyzer_projection(Polarization::H, 0.0), 1.0);
  EXPECT_EQ(analyzer_projection(Polarization::V, 0.0), 0.0);
}

TEST(Analyzer, CompleteBasis) {
  for (double t : {-90.0, -60.0, -45.0, 0.0, 13.0, 45.0}) {
    for (Polarization pol : {Polarization::H, Polarization::V}) {
      const double a = analyzer_projection(pol, t);
      const double b = analyzer_projection(pol, t > 0.0 ? t - 90.0 : t + 90.0);
      EXPECT_NEAR(a * a + b * b, 1.0, 1e-15);
    }
  }
}

TEST(Analyzer, RejectsOutOfRange) {
  EXPECT_THROW(analyzer_projection(Polarization::H, 91.0), Error);
  EXPECT_THROW(analyzer_projection(Polarization::H, -90.5), Error);
  EXPECT_THROW(analyzer_projection(Polarization::H, std::nan("")), Error);
}

TEST(Chain, NeedsExactlyOneHalfWavePlate) {
  ElementChain chain;
  chain.arm1 = {QuartzRod{}, TromboneDelay{0.0}};
  chain.arm2 = {QuartzRod{}};
  EXPECT_THROW(chain.validate(), Error);
  chain.arm1.push_back(HalfWavePlate{});
  EXPECT_NO_THROW(chain.validate());
  chain.arm2.push_back(HalfWavePlate{});
  EXPECT_THROW(chain.validate(), Error);
}

TEST(Trig, ExactAtOctants) {
  EXPECT_EQ(cos_deg(90.0), 0.0);
  EXPECT_EQ(sin_deg(180.0), 0.0);
  EXPECT_EQ(cos_deg(45.0), sin_deg(45.0));
  EXPECT_EQ(sin_deg(-45.0), -cos_deg(45.0));
  EXPECT_EQ(sin_deg(135.0), cos_deg(-45.0));
  EXPECT_DOUBLE_EQ(cos_deg(45.0), kInvSqrt2);
}
