#include "cumdiff/cumulative.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cumdiff/compensated.hpp"
#include "cumdiff/error.hpp"

namespace cumdiff {

CumulativeCurve cumulative_curve(const AggregatedSamples& agg) {
  const std::size_t m = agg.size();
  const auto weights = agg.weight_total();
  const double total = agg.grand_weight();

  CumulativeCurve curve;
  curve.abscissae.resize(m);
  curve.ordinates.resize(m);
  CompensatedSum weight_sum, diff_sum;
  for (std::size_t j = 0; j < m; ++j) {
    weight_sum += weights[j];
    diff_sum += agg.difference(j) * weights[j];
    curve.abscissae[j] = weight_sum.value() / total;
    curve.ordinates[j] = diff_sum.value() / total;
  }
  // The compensated weight sum reproduces the grand total up to the last
  // ulp; pin the endpoint so A_m == 1 exactly.
  curve.abscissae[m - 1] = 1.0;
  return curve;
}

double secant_slope(const CumulativeCurve& curve, std::size_t j_lo, std::size_t j_hi) {
  if (j_lo >= j_hi || j_hi > curve.size()) {
    throw Error(ErrorKind::IndexError,
                "secant needs 0 <= lo < hi <= " + std::to_string(curve.size()) +
                    ", got (" + std::to_string(j_lo) + ", " + std::to_string(j_hi) + ")");
  }
  const auto point = [&](std::size_t j, const std::vector<double>& values) {
    return j == 0 ? 0.0 : values[j - 1];
  };
  const double rise = point(j_hi, curve.ordinates) - point(j_lo, curve.ordinates);
  const double run = point(j_hi, curve.abscissae) - point(j_lo, curve.abscissae);
  return rise / run;
}

double kuiper(const CumulativeCurve& curve) {
  double hi = 0.0;
  double lo = 0.0;
  for (double c : curve.ordinates) {
    hi = std::max(hi, c);
    lo = std::min(lo, c);
  }
  return hi - lo;
}

double kolmogorov_smirnov(const CumulativeCurve& curve) {
  double e = 0.0;
  for (double c : curve.ordinates) e = std::max(e, std::abs(c));
  return e;
}

double sigma_estimate(const AggregatedSamples& agg) {
  const auto weights = agg.weight_total();
  const double total = agg.grand_weight();
  CompensatedSum acc;
  for (std::size_t j = 0; j < agg.size(); ++j) {
    const double term = agg.difference(j) * weights[j] / total;
    acc += term * term;
  }
  return std::sqrt(acc.value());
}

CurveMetrics metrics(const AggregatedSamples& agg, const CumulativeCurve& curve) {
  CurveMetrics out;
  out.kuiper = kuiper(curve);
  out.kolmogorov_smirnov = kolmogorov_smirnov(curve);
  out.average_difference = curve.final_ordinate();
  out.sigma = sigma_estimate(agg);
  if (out.sigma > 0.0) {
    out.kuiper_over_sigma = out.kuiper / out.sigma;
    out.ks_over_sigma = out.kolmogorov_smirnov / out.sigma;
  }
  return out;
}

CurveMetrics metrics(const AggregatedSamples& agg) {
  return metrics(agg, cumulative_curve(agg));
}

}  // namespace cumdiff
