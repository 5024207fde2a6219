#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cumdiff {

// One matched pair: the covariate score, the response from each population,
// and a strictly positive weight.
struct PairedRecord {
  double score = 0.0;
  double q = 0.0;
  double r = 0.0;
  double weight = 1.0;

  bool operator==(const PairedRecord&) const = default;
};

struct PairedDataset {
  std::vector<PairedRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

// Throws InvalidRecord (with the index) on a nonfinite field or weight <= 0.
void validate_record(const PairedRecord& record, std::size_t index);

// Checks every record and stably sorts by score. Equal scores keep their
// input order.
PairedDataset canonicalize(PairedDataset dataset);

/*
 * Per-unique-score weighted averages of both responses together with the
 * total weight at each score, sorted by score.
 *
 * Instances can only be produced through `aggregate` or `make`, both of
 * which enforce the invariants: equal lengths, m >= 1, strictly increasing
 * scores, positive finite weights.
 */
class AggregatedSamples {
 public:
  static AggregatedSamples make(std::vector<double> scores,
                                std::vector<double> q_mean,
                                std::vector<double> r_mean,
                                std::vector<double> weight_total);

  std::size_t size() const { return scores_.size(); }
  std::span<const double> scores() const { return scores_; }
  std::span<const double> q_mean() const { return q_mean_; }
  std::span<const double> r_mean() const { return r_mean_; }
  std::span<const double> weight_total() const { return weight_total_; }
  double grand_weight() const { return grand_weight_; }

  // Difference Q~_j - R~_j.
  double difference(std::size_t j) const { return q_mean_[j] - r_mean_[j]; }

  // One record per group, usable as input to `aggregate` again.
  PairedDataset as_dataset() const;

 private:
  AggregatedSamples() = default;

  std::vector<double> scores_;
  std::vector<double> q_mean_;
  std::vector<double> r_mean_;
  std::vector<double> weight_total_;
  double grand_weight_ = 0.0;
};

// Collapses records with exactly equal scores into one weighted group.
// Canonicalizes its input first, so unsorted data is accepted.
AggregatedSamples aggregate(const PairedDataset& dataset);

}  // namespace cumdiff
