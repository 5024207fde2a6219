#include <gtest/gtest.h>

#include <cmath>

#include "cumdiff/cumulative.hpp"
#include "cumdiff/error.hpp"
#include "test_support.hpp"

using namespace cumdiff;
using cumdiff::oracle::brute_force_kuiper;
using cumdiff::oracle::close_rel;

namespace {

// Groups with the given differences q - r (r = 0) and weights.
AggregatedSamples groups(std::vector<double> diffs, std::vector<double> weights) {
  std::vector<double> scores, zeros(diffs.size(), 0.0);
  for (std::size_t j = 0; j < diffs.size(); ++j) scores.push_back(static_cast<double>(j));
  return AggregatedSamples::make(scores, diffs, zeros, weights);
}

}  // namespace

TEST(CumulativeCurve, TwoOpposingGroups) {
  const auto curve = cumulative_curve(groups({1, -1}, {1, 1}));
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_DOUBLE_EQ(curve.abscissae[0], 0.5);
  EXPECT_DOUBLE_EQ(curve.abscissae[1], 1.0);
  EXPECT_DOUBLE_EQ(curve.ordinates[0], 0.5);
  EXPECT_DOUBLE_EQ(curve.ordinates[1], 0.0);
}

TEST(CumulativeCurve, NullDataGivesZeroCurve) {
  const auto agg = AggregatedSamples::make({1, 2, 3}, {0.2, 0.5, 0.9}, {0.2, 0.5, 0.9}, {1, 3, 0.5});
  for (double c : cumulative_curve(agg).ordinates) EXPECT_EQ(c, 0.0);
}

TEST(CumulativeCurve, SingleGroup) {
  const auto curve = cumulative_curve(groups({-0.3}, {17}));
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_EQ(curve.abscissae[0], 1.0);
  EXPECT_DOUBLE_EQ(curve.ordinates[0], -0.3);
}

TEST(CumulativeCurve, MatchesDirectSumsAndEndsAtOne) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto agg = oracle::to_aggregated(oracle::random_groups(rng, 60));
    const auto curve = cumulative_curve(agg);
    const auto direct = oracle::direct_ordinates(agg);
    EXPECT_EQ(curve.abscissae.back(), 1.0);
    for (std::size_t k = 0; k < agg.size(); ++k) {
      EXPECT_NEAR(curve.ordinates[k], direct[k], 1e-14);
      if (k > 0) EXPECT_LT(curve.abscissae[k - 1], curve.abscissae[k]);
    }
  }
}

TEST(SecantSlope, Examples) {
  const auto curve = cumulative_curve(groups({1, -1}, {1, 1}));
  EXPECT_DOUBLE_EQ(secant_slope(curve, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(secant_slope(curve, 0, 2), 0.0);
  EXPECT_DOUBLE_EQ(secant_slope(curve, 1, 2), -1.0);

  const auto flat = cumulative_curve(groups({0, 0, 0}, {1, 2, 3}));
  for (std::size_t lo = 0; lo < 3; ++lo) {
    for (std::size_t hi = lo + 1; hi <= 3; ++hi) EXPECT_EQ(secant_slope(flat, lo, hi), 0.0);
  }
}

TEST(SecantSlope, BadIndicesThrow) {
  const auto curve = cumulative_curve(groups({1, -1}, {1, 1}));
  for (auto [lo, hi] : {std::pair{1, 1}, {2, 1}, {0, 3}, {3, 4}}) {
    try {
      secant_slope(curve, lo, hi);
      ADD_FAILURE() << lo << "," << hi;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::IndexError);
    }
  }
}

TEST(Kuiper, Examples) {
  EXPECT_DOUBLE_EQ(kuiper(cumulative_curve(groups({1, -1}, {1, 1}))), 0.5);
  EXPECT_EQ(kuiper(cumulative_curve(groups({0, 0}, {1, 5}))), 0.0);
  // Same sign everywhere: the whole range maximizes, D = |C_m|.
  const auto pos = groups({0.3, 0.1, 0.7}, {1, 2, 0.5});
  EXPECT_DOUBLE_EQ(kuiper(cumulative_curve(pos)), brute_force_kuiper(pos));
  EXPECT_DOUBLE_EQ(kuiper(cumulative_curve(pos)), cumulative_curve(pos).final_ordinate());
  const auto neg = groups({-0.3, -0.1, -0.7}, {1, 2, 0.5});
  EXPECT_DOUBLE_EQ(kuiper(cumulative_curve(neg)), -cumulative_curve(neg).final_ordinate());
}

TEST(Kuiper, EqualsIntervalMaximum) {
  Rng rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const auto agg = oracle::to_aggregated(oracle::random_groups(rng, 50));
    EXPECT_TRUE(close_rel(kuiper(cumulative_curve(agg)), brute_force_kuiper(agg), 1e-12));
  }
}

TEST(KolmogorovSmirnov, Examples) {
  EXPECT_DOUBLE_EQ(kolmogorov_smirnov(cumulative_curve(groups({1, -1}, {1, 1}))), 0.5);
  EXPECT_EQ(kolmogorov_smirnov(cumulative_curve(groups({0, 0}, {1, 1}))), 0.0);
  const auto flipped = cumulative_curve(groups({-1, 1}, {1, 1}));
  EXPECT_DOUBLE_EQ(flipped.ordinates[0], -0.5);
  EXPECT_DOUBLE_EQ(kolmogorov_smirnov(flipped), 0.5);
}

TEST(Sigma, Examples) {
  EXPECT_DOUBLE_EQ(sigma_estimate(groups({-0.25}, {3})), 0.25);
  EXPECT_EQ(sigma_estimate(groups({0, 0, 0}, {1, 2, 3})), 0.0);
  // (1 + 1) / 4
  EXPECT_DOUBLE_EQ(sigma_estimate(groups({1, 1}, {1, 1})), 0.7071067811865476);
}

TEST(Metrics, NullDataHasUndefinedRatios) {
  const auto m = metrics(groups({0, 0}, {1, 1}));
  EXPECT_EQ(m.kuiper, 0.0);
  EXPECT_EQ(m.kolmogorov_smirnov, 0.0);
  EXPECT_EQ(m.average_difference, 0.0);
  EXPECT_EQ(m.sigma, 0.0);
  EXPECT_FALSE(m.kuiper_over_sigma.has_value());
  EXPECT_FALSE(m.ks_over_sigma.has_value());
}

TEST(Metrics, CombinedExample) {
  const auto m = metrics(groups({1, -1}, {1, 1}));
  EXPECT_DOUBLE_EQ(m.kuiper, 0.5);
  EXPECT_DOUBLE_EQ(m.kolmogorov_smirnov, 0.5);
  EXPECT_DOUBLE_EQ(m.average_difference, 0.0);
  EXPECT_DOUBLE_EQ(m.sigma, std::sqrt(2.0) / 2);
  ASSERT_TRUE(m.kuiper_over_sigma.has_value());
  EXPECT_DOUBLE_EQ(*m.kuiper_over_sigma, 0.5 / (std::sqrt(2.0) / 2));
}

TEST(Metrics, MonotonePositiveDifferencesCollapse) {
  const auto m = metrics(groups({0.2, 0.4, 0.1, 0.9}, {1, 1, 3, 0.25}));
  EXPECT_DOUBLE_EQ(m.average_difference, m.kolmogorov_smirnov);
  EXPECT_DOUBLE_EQ(m.kolmogorov_smirnov, m.kuiper);
}

TEST(CurveProperties, OrderingChainAndSecants) {
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const auto agg = oracle::to_aggregated(oracle::random_groups(rng, 50));
    const auto curve = cumulative_curve(agg);
    const auto m = metrics(agg, curve);
    EXPECT_LE(std::abs(m.average_difference), m.kolmogorov_smirnov + 1e-12);
    EXPECT_LE(m.kolmogorov_smirnov, m.kuiper + 1e-12);
    for (std::size_t j = 1; j <= agg.size(); ++j) {
      EXPECT_TRUE(close_rel(secant_slope(curve, j - 1, j), agg.difference(j - 1), 1e-10))
          << secant_slope(curve, j - 1, j) << " vs " << agg.difference(j - 1);
    }
  }
}

TEST(CurveProperties, SwapNegatesAndScalingIsInvisible) {
  Rng rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_groups(rng, 50);
    const auto base = oracle::to_aggregated(g);
    const auto c0 = cumulative_curve(base);
    const auto m0 = metrics(base);

    const auto swapped = AggregatedSamples::make(g.scores, g.r, g.q, g.w);
    const auto cs = cumulative_curve(swapped);
    const auto ms = metrics(swapped);
    for (std::size_t k = 0; k < c0.size(); ++k) EXPECT_EQ(cs.ordinates[k], -c0.ordinates[k]);
    EXPECT_EQ(ms.kuiper, m0.kuiper);
    EXPECT_EQ(ms.kolmogorov_smirnov, m0.kolmogorov_smirnov);
    EXPECT_EQ(ms.sigma, m0.sigma);

    const double c = std::exp(rng.uniform(-14, 14));
    for (auto& w : g.w) w *= c;
    const auto scaled = oracle::to_aggregated(g);
    const auto cc = cumulative_curve(scaled);
    const auto mc = metrics(scaled);
    for (std::size_t k = 0; k < c0.size(); ++k) {
      EXPECT_TRUE(close_rel(cc.abscissae[k], c0.abscissae[k], 1e-12));
      EXPECT_TRUE(close_rel(cc.ordinates[k], c0.ordinates[k], 1e-12, 1e-15));
    }
    EXPECT_TRUE(close_rel(mc.kuiper, m0.kuiper, 1e-12, 1e-15));
    EXPECT_TRUE(close_rel(mc.kolmogorov_smirnov, m0.kolmogorov_smirnov, 1e-12, 1e-15));
    EXPECT_TRUE(close_rel(mc.sigma, m0.sigma, 1e-12));
  }
}
