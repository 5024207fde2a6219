#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cumdiff/cumulative.hpp"
#include "cumdiff/hilbert.hpp"
#include "cumdiff/reliability.hpp"
#include "cumdiff/sample.hpp"

namespace cumdiff {

struct AnalysisConfig {
  std::vector<std::string> covariate_names;
  hilbert::TieMode tie_mode = hilbert::TieMode::aggregate;
  std::uint64_t seed = 0;
  // 0 selects floor(64 / p).
  unsigned bits_per_dim = 0;
  double perturb_scale = 1e-8;
  std::vector<std::size_t> bins = {10, 100};
  std::vector<BinStrategy> strategies = {BinStrategy::equispaced, BinStrategy::equivariance};
};

// Echo of everything that determines the outputs for a given input file.
struct Provenance {
  std::vector<std::string> covariates;
  hilbert::TieMode tie_mode = hilbert::TieMode::aggregate;
  std::uint64_t seed = 0;
  unsigned bits_per_dim = 0;
  double perturb_scale = 0.0;
  std::vector<std::size_t> bins;
  std::vector<BinStrategy> strategies;
  std::size_t records = 0;
  std::size_t unique_scores = 0;
  std::size_t dropped = 0;
};

struct DiagramEntry {
  std::size_t requested_bins = 0;
  ReliabilityDiagram diagram;
};

// Normalized covariates with their scores; kept for two covariates only.
struct Scatter {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> score;
};

struct PlotBundle {
  CumulativeCurve curve;
  CurveMetrics metrics;
  std::vector<DiagramEntry> diagrams;
  Provenance provenance;
  std::optional<Scatter> scatter;
};

// Scalar score in [0, 1] per row: min-max normalized covariates, mapped
// through the Hilbert curve when there is more than one (a single
// covariate is its own score), then normalized again.
std::vector<double> covariate_scores(const hilbert::CovariateMatrix& covariates,
                                     const AnalysisConfig& config);

/*
 * Full pipeline: scores from covariates, tie handling, aggregation,
 * cumulative curve and metrics, and one reliability diagram per
 * (bin count, strategy) pair.
 *
 * Bin counts above the number of unique scores are capped for the
 * equal-variance strategy, and a single unique score gets one bin.
 */
PlotBundle analyze(const PairedDataset& dataset, const hilbert::CovariateMatrix& covariates,
                   const AnalysisConfig& config, std::size_t dropped = 0);

// Reliability diagrams alone, for already-scored data.
std::vector<DiagramEntry> reliability_diagrams(const PairedDataset& scored,
                                               const AggregatedSamples& agg,
                                               const std::vector<std::size_t>& bins,
                                               const std::vector<BinStrategy>& strategies);

}  // namespace cumdiff
