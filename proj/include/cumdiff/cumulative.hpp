#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cumdiff/sample.hpp"

namespace cumdiff {

/*
 * Cumulative weighted differences C_k plotted against accumulated weight
 * A_k, k = 1..m. The origin (0, 0) is implicit: index 0 in `secant_slope`
 * refers to it, but it is not stored.
 */
struct CumulativeCurve {
  std::vector<double> abscissae;
  std::vector<double> ordinates;

  std::size_t size() const { return abscissae.size(); }
  double final_ordinate() const { return ordinates.back(); }
};

struct CurveMetrics {
  double kuiper = 0.0;
  double kolmogorov_smirnov = 0.0;
  // C_m, the average treatment effect.
  double average_difference = 0.0;
  double sigma = 0.0;
  // Empty when sigma == 0.
  std::optional<double> kuiper_over_sigma;
  std::optional<double> ks_over_sigma;
};

CumulativeCurve cumulative_curve(const AggregatedSamples& agg);

// Slope of the chord between points j_lo and j_hi (0 is the origin).
// Throws IndexError unless 0 <= j_lo < j_hi <= m.
double secant_slope(const CumulativeCurve& curve, std::size_t j_lo, std::size_t j_hi);

// Range of the curve including the origin: max C_j - min C_j over 0..m.
double kuiper(const CumulativeCurve& curve);

// max |C_j| over 1..m.
double kolmogorov_smirnov(const CumulativeCurve& curve);

// Square root of the unbiased estimate of Var(C_m) under the null:
// sum_j (Q~_j - R~_j)^2 W~_j^2 / (sum_k W~_k)^2.
double sigma_estimate(const AggregatedSamples& agg);

CurveMetrics metrics(const AggregatedSamples& agg);
CurveMetrics metrics(const AggregatedSamples& agg, const CumulativeCurve& curve);

}  // namespace cumdiff
