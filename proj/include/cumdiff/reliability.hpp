#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cumdiff/sample.hpp"

namespace cumdiff {

// Interior boundaries B_1 < ... < B_{l-1}; B_0 = -inf and B_l = +inf are
// implicit. A score s lands in bin i when B_{i-1} < s <= B_i.
struct BinBoundaries {
  std::vector<double> interior;

  std::size_t bin_count() const { return interior.size() + 1; }
  // 0-based bin index of a score.
  std::size_t bin_of(double score) const;
};

enum class BinStrategy { equispaced, equivariance };

std::string_view to_string(BinStrategy strategy);

struct ReliabilityDiagram {
  BinStrategy strategy = BinStrategy::equispaced;
  BinBoundaries boundaries;
  // One entry per nonempty bin, in score order.
  std::vector<double> s_mean;
  std::vector<double> q_mean;
  std::vector<double> r_mean;
  std::vector<double> bin_weight;

  std::size_t size() const { return s_mean.size(); }
};

// Equal-width bins over [S_1, S_m]. Throws InvalidBinCount for l < 1 and
// DegenerateRange when S_1 == S_m and l > 1.
BinBoundaries bins_equispaced(const AggregatedSamples& agg, std::size_t bin_count);

/*
 * Contiguous bins over the score-sorted groups chosen so that
 *
 *   v_i = (sum of squared weights in bin i) / (sum of weights in bin i)^2
 *
 * is roughly the same for every bin. v_i is the factor by which averaging
 * shrinks the variance of a bin's mean response, so equal v_i means equal
 * noise per bin.
 *
 * Single greedy pass: a bin is closed as soon as its v drops to the value
 * it would have if the not-yet-binned groups (this bin included) were split
 * evenly over the bins still to fill, i.e. r * sum(w^2) / (sum w)^2 for r
 * remaining bins. Each bin keeps at least one group and exactly l bins
 * result. Boundaries sit midway between neighbouring scores.
 *
 * Throws InvalidBinCount unless 1 <= l <= m.
 */
BinBoundaries bins_equivariance(const AggregatedSamples& agg, std::size_t bin_count);

BinBoundaries make_bins(const AggregatedSamples& agg, std::size_t bin_count,
                        BinStrategy strategy);

// Weighted means of score and both responses over the raw records in each
// bin. Empty bins are left out.
ReliabilityDiagram diagram(const PairedDataset& dataset, const BinBoundaries& boundaries);

}  // namespace cumdiff
