#include <gtest/gtest.h>

#include "cumdiff/coverage.hpp"
#include "cumdiff/error.hpp"

using namespace cumdiff;

namespace {

synth::Spec null_spec() {
  synth::Spec s;
  s.n = 300;
  s.m = 100;
  s.profile = synth::Profile::null;
  return s;
}

}  // namespace

TEST(Coverage, SingleTrialIsZeroOrOne) {
  const auto r = coverage(1, null_spec(), 9);
  EXPECT_TRUE(r.fraction == 0.0 || r.fraction == 1.0);
  EXPECT_EQ(r.trials, 1u);
}

TEST(Coverage, IndependentOfThreadCount) {
  const auto one = run_trials(500, null_spec(), 77, 1);
  for (unsigned threads : {2u, 3u, 8u, 0u}) {
    const auto many = run_trials(500, null_spec(), 77, threads);
    ASSERT_EQ(many.size(), one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      EXPECT_EQ(many[i].average_difference, one[i].average_difference);
      EXPECT_EQ(many[i].sigma, one[i].sigma);
    }
    EXPECT_EQ(coverage(500, null_spec(), 77, threads).covered, coverage(500, null_spec(), 77, 1).covered);
  }
}

TEST(Coverage, SeedsDiffer) {
  const auto a = run_trials(3, null_spec(), 1, 1);
  EXPECT_NE(a[0].average_difference, a[1].average_difference);
  const auto b = run_trials(3, null_spec(), 2, 1);
  EXPECT_NE(a[0].average_difference, b[0].average_difference);
}

TEST(Coverage, RoughlyNinetyFivePercent) {
  const auto r = coverage(2000, null_spec(), 5);
  EXPECT_GT(r.fraction, 0.92);
  EXPECT_LT(r.fraction, 0.98);
}

TEST(Coverage, ZeroTrialsRejected) {
  EXPECT_THROW(coverage(0, null_spec(), 1), Error);
}
