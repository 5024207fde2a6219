#include "cumdiff/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cumdiff/compensated.hpp"
#include "cumdiff/error.hpp"

namespace cumdiff {

void validate_record(const PairedRecord& record, std::size_t index) {
  if (!std::isfinite(record.score) || !std::isfinite(record.q) ||
      !std::isfinite(record.r) || !std::isfinite(record.weight)) {
    throw Error(ErrorKind::InvalidRecord,
                "nonfinite field in record " + std::to_string(index), index);
  }
  if (!(record.weight > 0.0)) {
    throw Error(ErrorKind::InvalidRecord,
                "nonpositive weight in record " + std::to_string(index), index);
  }
}

PairedDataset canonicalize(PairedDataset dataset) {
  if (dataset.empty()) {
    throw Error(ErrorKind::EmptyInput, "dataset has no records");
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    validate_record(dataset.records[i], i);
  }
  std::stable_sort(dataset.records.begin(), dataset.records.end(),
                   [](const PairedRecord& a, const PairedRecord& b) {
                     return a.score < b.score;
                   });
  return dataset;
}

AggregatedSamples AggregatedSamples::make(std::vector<double> scores,
                                          std::vector<double> q_mean,
                                          std::vector<double> r_mean,
                                          std::vector<double> weight_total) {
  const std::size_t m = scores.size();
  if (m == 0) {
    throw Error(ErrorKind::EmptyInput, "aggregated samples need at least one group");
  }
  if (q_mean.size() != m || r_mean.size() != m || weight_total.size() != m) {
    throw Error(ErrorKind::InvalidRecord, "aggregated columns differ in length");
  }
  CompensatedSum total;
  for (std::size_t j = 0; j < m; ++j) {
    validate_record({scores[j], q_mean[j], r_mean[j], weight_total[j]}, j);
    if (j > 0 && !(scores[j - 1] < scores[j])) {
      throw Error(ErrorKind::InvalidRecord,
                  "aggregated scores must be strictly increasing", j);
    }
    total += weight_total[j];
  }
  AggregatedSamples out;
  out.scores_ = std::move(scores);
  out.q_mean_ = std::move(q_mean);
  out.r_mean_ = std::move(r_mean);
  out.weight_total_ = std::move(weight_total);
  out.grand_weight_ = total.value();
  return out;
}

PairedDataset AggregatedSamples::as_dataset() const {
  PairedDataset out;
  out.records.reserve(size());
  for (std::size_t j = 0; j < size(); ++j) {
    out.records.push_back({scores_[j], q_mean_[j], r_mean_[j], weight_total_[j]});
  }
  return out;
}

AggregatedSamples aggregate(const PairedDataset& dataset) {
  const PairedDataset sorted = canonicalize(dataset);
  const auto& recs = sorted.records;

  std::vector<double> scores, q_mean, r_mean, weight_total;
  std::size_t begin = 0;
  while (begin < recs.size()) {
    std::size_t end = begin + 1;
    while (end < recs.size() && recs[end].score == recs[begin].score) ++end;

    if (end - begin == 1) {
      // Singleton groups pass through untouched so that aggregation is
      // exactly idempotent.
      const auto& rec = recs[begin];
      scores.push_back(rec.score);
      q_mean.push_back(rec.q);
      r_mean.push_back(rec.r);
      weight_total.push_back(rec.weight);
    } else {
      CompensatedSum w, qw, rw;
      double q_lo = recs[begin].q, q_hi = q_lo;
      double r_lo = recs[begin].r, r_hi = r_lo;
      for (std::size_t k = begin; k < end; ++k) {
        w += recs[k].weight;
        qw += recs[k].q * recs[k].weight;
        rw += recs[k].r * recs[k].weight;
        q_lo = std::min(q_lo, recs[k].q);
        q_hi = std::max(q_hi, recs[k].q);
        r_lo = std::min(r_lo, recs[k].r);
        r_hi = std::max(r_hi, recs[k].r);
      }
      // Rounding must not push a mean outside the group's range.
      scores.push_back(recs[begin].score);
      q_mean.push_back(std::clamp(qw.value() / w.value(), q_lo, q_hi));
      r_mean.push_back(std::clamp(rw.value() / w.value(), r_lo, r_hi));
      weight_total.push_back(w.value());
    }
    begin = end;
  }
  return AggregatedSamples::make(std::move(scores), std::move(q_mean),
                                 std::move(r_mean), std::move(weight_total));
}

}  // namespace cumdiff
