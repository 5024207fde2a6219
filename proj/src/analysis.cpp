#include "cumdiff/analysis.hpp"

#include <algorithm>
#include <string>

#include "cumdiff/error.hpp"

namespace cumdiff {

namespace {

hilbert::Config hilbert_config(std::size_t dims, const AnalysisConfig& config) {
  hilbert::Config h = hilbert::Config::for_dims(dims);
  if (config.bits_per_dim != 0) h.bits_per_dim = config.bits_per_dim;
  h.tie_mode = config.tie_mode;
  h.seed = config.seed;
  h.perturb_scale = config.perturb_scale;
  h.validate();
  return h;
}

}  // namespace

std::vector<double> covariate_scores(const hilbert::CovariateMatrix& covariates,
                                     const AnalysisConfig& config) {
  const auto normalized = hilbert::normalize_covariates(covariates);
  if (normalized.cols == 1) return hilbert::normalize_scores(normalized.values);
  const auto h = hilbert_config(normalized.cols, config);
  return hilbert::normalize_scores(hilbert::score_rows(normalized, h));
}

std::vector<DiagramEntry> reliability_diagrams(const PairedDataset& scored,
                                               const AggregatedSamples& agg,
                                               const std::vector<std::size_t>& bins,
                                               const std::vector<BinStrategy>& strategies) {
  std::vector<DiagramEntry> out;
  for (std::size_t requested : bins) {
    if (requested < 1) throw Error(ErrorKind::InvalidBinCount, "bin count must be >= 1");
    for (BinStrategy strategy : strategies) {
      std::size_t count = requested;
      if (agg.size() == 1) count = 1;
      if (strategy == BinStrategy::equivariance) count = std::min(count, agg.size());
      DiagramEntry entry;
      entry.requested_bins = requested;
      entry.diagram = diagram(scored, make_bins(agg, count, strategy));
      entry.diagram.strategy = strategy;
      out.push_back(std::move(entry));
    }
  }
  return out;
}

PlotBundle analyze(const PairedDataset& dataset, const hilbert::CovariateMatrix& covariates,
                   const AnalysisConfig& config, std::size_t dropped) {
  if (dataset.empty()) throw Error(ErrorKind::EmptyInput, "dataset has no records");
  if (covariates.rows != dataset.size()) {
    throw Error(ErrorKind::SchemaError, "covariate rows do not match the record count");
  }
  const auto h = hilbert_config(covariates.cols, config);

  std::vector<double> scores = covariate_scores(covariates, config);
  scores = hilbert::break_ties(scores, h);

  PairedDataset scored = dataset;
  for (std::size_t i = 0; i < scored.size(); ++i) scored.records[i].score = scores[i];
  scored = canonicalize(std::move(scored));
  const AggregatedSamples agg = aggregate(scored);

  PlotBundle bundle;
  bundle.curve = cumulative_curve(agg);
  bundle.metrics = metrics(agg, bundle.curve);
  bundle.diagrams = reliability_diagrams(scored, agg, config.bins, config.strategies);

  auto& p = bundle.provenance;
  p.covariates = config.covariate_names;
  p.tie_mode = config.tie_mode;
  p.seed = config.seed;
  p.bits_per_dim = covariates.cols == 1 ? 0 : h.bits_per_dim;
  p.perturb_scale = config.perturb_scale;
  p.bins = config.bins;
  p.strategies = config.strategies;
  p.records = dataset.size();
  p.unique_scores = agg.size();
  p.dropped = dropped;

  if (covariates.cols == 2) {
    const auto normalized = hilbert::normalize_covariates(covariates);
    Scatter scatter;
    for (std::size_t i = 0; i < normalized.rows; ++i) {
      scatter.x.push_back(normalized(i, 0));
      scatter.y.push_back(normalized(i, 1));
      scatter.score.push_back(scores[i]);
    }
    bundle.scatter = std::move(scatter);
  }
  return bundle;
}

}  // namespace cumdiff
