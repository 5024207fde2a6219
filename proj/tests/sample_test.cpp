#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cumdiff/error.hpp"
#include "cumdiff/sample.hpp"
#include "test_support.hpp"

using namespace cumdiff;
using cumdiff::oracle::close_rel;

namespace {

PairedDataset dataset(std::initializer_list<PairedRecord> recs) { return PairedDataset{recs}; }

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a cumdiff::Error";
  return ErrorKind::IoError;
}

}  // namespace

TEST(Canonicalize, SortsByScoreCarryingPayload) {
  const auto out = canonicalize(dataset({{3, 30, 300, 1}, {1, 10, 100, 2}, {2, 20, 200, 3}}));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out.records[0], (PairedRecord{1, 10, 100, 2}));
  EXPECT_EQ(out.records[1], (PairedRecord{2, 20, 200, 3}));
  EXPECT_EQ(out.records[2], (PairedRecord{3, 30, 300, 1}));
}

TEST(Canonicalize, SortedInputUnchanged) {
  const auto in = dataset({{1, 0, 0, 1}, {2, 1, 0, 1}, {5, 0, 1, 1}});
  EXPECT_EQ(canonicalize(in).records, in.records);
}

TEST(Canonicalize, TiesKeepInputOrder) {
  const auto out = canonicalize(dataset({{2, 1, 0, 1}, {1, 0, 0, 1}, {2, 2, 0, 1}, {2, 3, 0, 1}}));
  EXPECT_EQ(out.records[1].q, 1);
  EXPECT_EQ(out.records[2].q, 2);
  EXPECT_EQ(out.records[3].q, 3);
}

TEST(Canonicalize, ZeroWeightReportsIndex) {
  try {
    canonicalize(dataset({{1, 0, 0, 1}, {2, 0, 0, 0}}));
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidRecord);
    ASSERT_TRUE(e.record().has_value());
    EXPECT_EQ(*e.record(), 1u);
  }
}

TEST(Canonicalize, RejectsNonfiniteAndEmpty) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(kind_of([&] { canonicalize(dataset({{nan, 0, 0, 1}})); }), ErrorKind::InvalidRecord);
  EXPECT_EQ(kind_of([&] { canonicalize(dataset({{0, inf, 0, 1}})); }), ErrorKind::InvalidRecord);
  EXPECT_EQ(kind_of([&] { canonicalize(dataset({{0, 0, 0, -1}})); }), ErrorKind::InvalidRecord);
  EXPECT_EQ(kind_of([&] { canonicalize(PairedDataset{}); }), ErrorKind::EmptyInput);
}

TEST(Aggregate, WeightedMeansOfTiedGroup) {
  // (1*1 + 0*1 + 1*2) / 4 = 0.75
  const auto agg = aggregate(dataset({{2, 1, 0, 1}, {2, 0, 0, 1}, {2, 1, 0, 2}}));
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_DOUBLE_EQ(agg.scores()[0], 2.0);
  EXPECT_DOUBLE_EQ(agg.q_mean()[0], 0.75);
  EXPECT_DOUBLE_EQ(agg.r_mean()[0], 0.0);
  EXPECT_DOUBLE_EQ(agg.weight_total()[0], 4.0);
  EXPECT_DOUBLE_EQ(agg.grand_weight(), 4.0);
}

TEST(Aggregate, DistinctScoresPassThrough) {
  const auto in = dataset({{0.5, 3, 1, 2}, {-1, 2, 4, 0.5}, {7, 0, 0, 1}});
  const auto agg = aggregate(in);
  ASSERT_EQ(agg.size(), 3u);
  const auto sorted = canonicalize(in);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(agg.scores()[j], sorted.records[j].score);
    EXPECT_EQ(agg.q_mean()[j], sorted.records[j].q);
    EXPECT_EQ(agg.r_mean()[j], sorted.records[j].r);
    EXPECT_EQ(agg.weight_total()[j], sorted.records[j].weight);
  }
}

TEST(Aggregate, SymmetricPairAveragesToHalf) {
  const auto agg = aggregate(dataset({{1, 0, 0, 1}, {1, 1, 0, 1}}));
  EXPECT_DOUBLE_EQ(agg.q_mean()[0], 0.5);
}

TEST(Aggregate, DuplicatedRecordsCollapse) {
  const auto agg = aggregate(dataset({{1, 0.3, 0.2, 1}, {1, 0.3, 0.2, 1}, {1, 0.3, 0.2, 1}}));
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_EQ(agg.q_mean()[0], 0.3);
  EXPECT_EQ(agg.r_mean()[0], 0.2);
  EXPECT_EQ(agg.weight_total()[0], 3.0);
}

TEST(AggregatedSamples, MakeValidates) {
  EXPECT_EQ(kind_of([] { AggregatedSamples::make({}, {}, {}, {}); }), ErrorKind::EmptyInput);
  EXPECT_EQ(kind_of([] { AggregatedSamples::make({1, 1}, {0, 0}, {0, 0}, {1, 1}); }),
            ErrorKind::InvalidRecord);
  EXPECT_EQ(kind_of([] { AggregatedSamples::make({1, 2}, {0}, {0, 0}, {1, 1}); }),
            ErrorKind::InvalidRecord);
  EXPECT_EQ(kind_of([] { AggregatedSamples::make({1}, {0}, {0}, {0}); }), ErrorKind::InvalidRecord);
}

namespace {

// Random dataset with heavy ties: scores drawn from a handful of values.
PairedDataset random_tied(Rng& rng) {
  PairedDataset ds;
  const std::size_t n = 1 + rng.next_u64() % 200;
  const std::size_t distinct = 1 + rng.next_u64() % 20;
  for (std::size_t i = 0; i < n; ++i) {
    ds.records.push_back({static_cast<double>(rng.next_u64() % distinct) * 0.37,
                          rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0.01, 3.0)});
  }
  return ds;
}

}  // namespace

TEST(AggregateProperties, IdempotentExactly) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto once = aggregate(random_tied(rng));
    const auto twice = aggregate(once.as_dataset());
    ASSERT_EQ(twice.size(), once.size());
    for (std::size_t j = 0; j < once.size(); ++j) {
      EXPECT_EQ(twice.scores()[j], once.scores()[j]);
      EXPECT_EQ(twice.q_mean()[j], once.q_mean()[j]);
      EXPECT_EQ(twice.r_mean()[j], once.r_mean()[j]);
      EXPECT_EQ(twice.weight_total()[j], once.weight_total()[j]);
    }
  }
}

TEST(AggregateProperties, WeightScaleInvariantAndMassConserving) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto raw = random_tied(rng);
    const double c = std::exp(rng.uniform(-10, 10));
    auto scaled = raw;
    double raw_mass = 0;
    for (auto& rec : scaled.records) {
      raw_mass += rec.weight;
      rec.weight *= c;
    }
    const auto a = aggregate(raw);
    const auto b = aggregate(scaled);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_TRUE(close_rel(a.grand_weight(), raw_mass, 1e-12));
    for (std::size_t j = 0; j < a.size(); ++j) {
      EXPECT_TRUE(close_rel(a.q_mean()[j], b.q_mean()[j], 1e-12, 1e-14));
      EXPECT_TRUE(close_rel(a.r_mean()[j], b.r_mean()[j], 1e-12, 1e-14));
      EXPECT_TRUE(close_rel(c * a.weight_total()[j], b.weight_total()[j], 1e-12));
    }
  }
}

TEST(AggregateProperties, MeansStayInsideGroupRange) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sorted = canonicalize(random_tied(rng));
    const auto agg = aggregate(sorted);
    std::size_t k = 0;
    for (std::size_t j = 0; j < agg.size(); ++j) {
      double q_lo = INFINITY, q_hi = -INFINITY, r_lo = INFINITY, r_hi = -INFINITY;
      for (; k < sorted.size() && sorted.records[k].score == agg.scores()[j]; ++k) {
        q_lo = std::min(q_lo, sorted.records[k].q);
        q_hi = std::max(q_hi, sorted.records[k].q);
        r_lo = std::min(r_lo, sorted.records[k].r);
        r_hi = std::max(r_hi, sorted.records[k].r);
      }
      EXPECT_GE(agg.q_mean()[j], q_lo);
      EXPECT_LE(agg.q_mean()[j], q_hi);
      EXPECT_GE(agg.r_mean()[j], r_lo);
      EXPECT_LE(agg.r_mean()[j], r_hi);
    }
    EXPECT_EQ(k, sorted.size());
  }
}
