#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "groupcalc/diagnostics.hpp"

using namespace groupcalc;

TEST(Diagnostics, RelativeError) {
  EXPECT_EQ(relative_error(1.0, 1.0), 0.0);
  EXPECT_NEAR(relative_error(1.1, 1.0), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(relative_error(1e-3, 0.0, 2.0), 5e-4);
}

TEST(Diagnostics, SampleRange) {
  const auto bg = sample_range(GroupClass::bg());
  EXPECT_EQ(bg.lo, -5.0);
  EXPECT_EQ(bg.hi, 5.0);
  const auto k = sample_range(GroupClass::kaniadakis(100.0));
  EXPECT_NEAR(k.hi, 0.05, 1e-15);
  const auto s = GroupClass::series({0.5});
  const auto r = sample_range(s);
  EXPECT_GT(r.lo, s.t_domain().lo);
  EXPECT_LT(r.hi, s.t_domain().hi);
}

TEST(Diagnostics, OracleResiduals) {
  const auto res = oracle_residuals(GroupClass::tsallis(0.5), 500);
  EXPECT_EQ(res.size(), 10u);
  for (const auto& r : res) {
    EXPECT_LE(r.max_relative_error, 1e-11) << r.operation;
    EXPECT_GT(r.samples, 0u) << r.operation;
  }
  EXPECT_TRUE(oracle_residuals(GroupClass::abe(1.0, -0.5), 10).empty());
  EXPECT_EQ(oracle_residuals(GroupClass::tsallis(0.5), 50, 7)[0].max_relative_error,
            oracle_residuals(GroupClass::tsallis(0.5), 50, 7)[0].max_relative_error);
}

TEST(Diagnostics, AllSuitesPass) {
  for (const char* spec : {"bg", "tsallis:q=0.5", "tsallis:q=-0.5", "tsallis:q=1.5", "tsallis:q=-99",
                           "kaniadakis:k=2", "kaniadakis:k=100", "abe:a=1,b=-0.5"}) {
    const auto report = run_checks(GroupClass::parse(spec), 100);
    EXPECT_TRUE(report.ok()) << spec << ": " << (report.first_failure() ? report.first_failure()->name : "");
    EXPECT_FALSE(report.restricted);
    EXPECT_FALSE(report.results.empty());
  }
}

TEST(Diagnostics, SeriesIsRestricted) {
  const auto report = run_checks(GroupClass::parse("series:a1=0.5,a2=0.1"), 100);
  EXPECT_TRUE(report.restricted);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(std::none_of(report.results.begin(), report.results.end(),
                           [](const CheckResult& r) { return r.suite == "well" || r.suite == "oracle"; }));
}

TEST(Diagnostics, FirstFailure) {
  CheckReport r;
  EXPECT_EQ(r.first_failure(), nullptr);
  r.results.push_back({"a", "x", 0.0, 1.0, true});
  r.results.push_back({"b", "y", 2.0, 1.0, false});
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.first_failure()->suite, "b");
}
