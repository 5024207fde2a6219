#include "cumdiff/reliability.hpp"

#include <algorithm>
#include <string>

#include "cumdiff/compensated.hpp"
#include "cumdiff/error.hpp"

namespace cumdiff {

std::size_t BinBoundaries::bin_of(double score) const {
  // First boundary >= score; with B_{i-1} < s <= B_i this is bin i.
  return static_cast<std::size_t>(
      std::lower_bound(interior.begin(), interior.end(), score) - interior.begin());
}

std::string_view to_string(BinStrategy strategy) {
  return strategy == BinStrategy::equispaced ? "equispaced" : "equivariance";
}

BinBoundaries bins_equispaced(const AggregatedSamples& agg, std::size_t bin_count) {
  if (bin_count < 1) {
    throw Error(ErrorKind::InvalidBinCount, "need at least one bin");
  }
  const auto scores = agg.scores();
  const double lo = scores.front();
  const double hi = scores.back();
  if (bin_count > 1 && !(lo < hi)) {
    throw Error(ErrorKind::DegenerateRange,
                "all scores equal; cannot split into " + std::to_string(bin_count) + " bins");
  }
  BinBoundaries out;
  out.interior.reserve(bin_count - 1);
  for (std::size_t i = 1; i < bin_count; ++i) {
    out.interior.push_back(lo + static_cast<double>(i) * (hi - lo) /
                                    static_cast<double>(bin_count));
  }
  return out;
}

BinBoundaries bins_equivariance(const AggregatedSamples& agg, std::size_t bin_count) {
  const std::size_t m = agg.size();
  if (bin_count < 1 || bin_count > m) {
    throw Error(ErrorKind::InvalidBinCount,
                "equal-variance binning needs 1 <= bins <= " + std::to_string(m) +
                    ", got " + std::to_string(bin_count));
  }
  const auto w = agg.weight_total();
  const auto scores = agg.scores();

  // Suffix sums of w and w^2 over the groups not yet binned.
  std::vector<double> tail_w(m + 1, 0.0), tail_w2(m + 1, 0.0);
  {
    CompensatedSum s, s2;
    for (std::size_t j = m; j-- > 0;) {
      s += w[j];
      s2 += w[j] * w[j];
      tail_w[j] = s.value();
      tail_w2[j] = s2.value();
    }
  }

  // Slack for the comparison below; with equal weights both sides are
  // mathematically equal at the intended cut.
  constexpr double kSlack = 1e-12;

  BinBoundaries out;
  std::size_t start = 0;
  for (std::size_t bins_left = bin_count; bins_left > 1; --bins_left) {
    const double rem_w = tail_w[start];
    const double rem_w2 = tail_w2[start];
    const double r = static_cast<double>(bins_left);
    // Latest end that still leaves one group for each later bin.
    const std::size_t last_allowed = m - bins_left;

    CompensatedSum bin_w, bin_w2;
    std::size_t j = start;
    for (;; ++j) {
      bin_w += w[j];
      bin_w2 += w[j] * w[j];
      if (j == last_allowed) break;
      // v <= target  <=>  bin_w2 / bin_w^2 <= r * rem_w2 / rem_w^2
      const double lhs = bin_w2.value() * rem_w * rem_w;
      const double rhs = r * rem_w2 * bin_w.value() * bin_w.value();
      if (lhs <= rhs * (1.0 + kSlack)) break;
    }
    const double mid = scores[j] + 0.5 * (scores[j + 1] - scores[j]);
    // Adjacent doubles have no midpoint; the lower score still separates them.
    out.interior.push_back(mid < scores[j + 1] ? mid : scores[j]);
    start = j + 1;
  }
  return out;
}

BinBoundaries make_bins(const AggregatedSamples& agg, std::size_t bin_count,
                        BinStrategy strategy) {
  return strategy == BinStrategy::equispaced ? bins_equispaced(agg, bin_count)
                                             : bins_equivariance(agg, bin_count);
}

ReliabilityDiagram diagram(const PairedDataset& dataset, const BinBoundaries& boundaries) {
  const std::size_t bins = boundaries.bin_count();
  std::vector<CompensatedSum> w(bins), sw(bins), qw(bins), rw(bins);
  for (std::size_t k = 0; k < dataset.size(); ++k) {
    const auto& rec = dataset.records[k];
    validate_record(rec, k);
    const std::size_t i = boundaries.bin_of(rec.score);
    w[i] += rec.weight;
    sw[i] += rec.score * rec.weight;
    qw[i] += rec.q * rec.weight;
    rw[i] += rec.r * rec.weight;
  }
  ReliabilityDiagram out;
  out.boundaries = boundaries;
  for (std::size_t i = 0; i < bins; ++i) {
    const double total = w[i].value();
    if (!(total > 0.0)) continue;
    out.s_mean.push_back(sw[i].value() / total);
    out.q_mean.push_back(qw[i].value() / total);
    out.r_mean.push_back(rw[i].value() / total);
    out.bin_weight.push_back(total);
  }
  return out;
}

}  // namespace cumdiff
