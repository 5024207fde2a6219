#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cumdiff::hilbert {

enum class TieMode { aggregate, perturb };

std::string_view to_string(TieMode mode);

struct Config {
  // Number of covariates.
  std::size_t dims = 1;
  // Lattice resolution per covariate; dims * bits_per_dim <= 64.
  unsigned bits_per_dim = 64;
  TieMode tie_mode = TieMode::aggregate;
  std::uint64_t seed = 0;
  // Half-width of the perturbation, relative to the score range.
  double perturb_scale = 1e-8;

  // bits_per_dim = floor(64 / dims), the largest lattice whose index fits
  // in 64 bits.
  static Config for_dims(std::size_t dims);

  unsigned index_bits() const { return static_cast<unsigned>(dims) * bits_per_dim; }
  std::uint64_t max_coordinate() const;
  // Throws InvalidSpec if the configuration cannot be used.
  void validate() const;
};

using LatticePoint = std::vector<std::uint64_t>;

// Position of a lattice point along the Hilbert curve. Throws
// InvalidLattice on a wrong dimension count or out-of-range coordinate.
std::uint64_t encode(std::span<const std::uint64_t> point, const Config& config);

// Inverse of encode. Throws InvalidIndex when index >= 2^(dims*bits).
LatticePoint decode(std::uint64_t index, const Config& config);

// Lattice cell of a covariate vector in [0, 1]^dims; round to nearest.
// Throws OutOfRange outside the unit cube.
LatticePoint quantize(std::span<const double> covariates, const Config& config);

// Hilbert index of the covariate vector, scaled to [0, 1).
double score(std::span<const double> covariates, const Config& config);

// Row-major n x p matrix.
struct CovariateMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * cols, cols);
  }
};

// Per-column min-max map onto [0, 1]; constant columns become 0.5.
// Throws EmptyInput for zero rows and InvalidRecord on a nonfinite entry.
CovariateMatrix normalize_covariates(CovariateMatrix matrix);

// Affine map sending the minimum to 0 and the maximum to 1. If every value
// is equal the result is all 0.5.
std::vector<double> normalize_scores(std::span<const double> scores);

std::vector<double> score_rows(const CovariateMatrix& normalized, const Config& config);

// In perturb mode, adds a seeded offset uniform in +-perturb_scale * range
// to every score, redrawing until all outputs are distinct. In aggregate
// mode returns the input unchanged.
std::vector<double> break_ties(std::span<const double> scores, const Config& config);

}  // namespace cumdiff::hilbert
