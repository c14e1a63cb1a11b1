#include <gtest/gtest.h>

#include "biphoton/error.hpp"
#include "biphoton/verify.hpp"

using namespace biphoton;

TEST(Verify, CheckNamesInOrder) {
  const auto& names = verification_check_names();
  ASSERT_EQ(names.size(), 12u);
  EXPECT_EQ(names.front(), "calibration");
  EXPECT_EQ(names[1], "grid_refinement");
}

TEST(Verify, CheapChecksPass) {
  for (const char* name : {"calibration", "outcome_completeness", "dip_peak_complementarity", "parseval",
                           "rod_axis_swap", "firing_order"}) {
    const CheckResult r = run_check(name);
    EXPECT_TRUE(r.passed) << name << ": " << r.detail;
    ASSERT_TRUE(r.metric.has_value()) << name;
    EXPECT_LE(*r.metric, r.threshold) << name;
  }
}

TEST(Verify, UnknownCheckIsLookupError) {
  try {
    run_check("nope");
    ADD_FAILURE() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::lookup);
  }
}

TEST(Verify, UnderResolvedGridFailsFirstGridCheck) {
  VerifyOptions o;
  o.grid_n = 16;
  VerifyReport report;
  report.grid_n = o.grid_n;
  for (const char* name : {"calibration", "grid_refinement", "parseval"}) report.checks.push_back(run_check(name, o));
  EXPECT_FALSE(report.passed());
  ASSERT_NE(report.first_failure(), nullptr);
  EXPECT_EQ(report.first_failure()->name, "grid_refinement");
}

TEST(Verify, JsonIsDeterministic) {
  VerifyReport a, b;
  for (const char* name : {"calibration", "rod_axis_swap"}) {
    a.checks.push_back(run_check(name));
    b.checks.push_back(run_check(name));
  }
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_NE(a.to_json().find("\"rod_axis_swap\""), std::string::npos);
  EXPECT_EQ(a.to_json().back(), '\n');
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.first_failure(), nullptr);
}
