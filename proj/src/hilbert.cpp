#include "cumdiff/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cumdiff/error.hpp"
#include "cumdiff/random.hpp"

namespace cumdiff::hilbert {

namespace {

// Skilling's in-place transform between lattice coordinates and the
// "transposed" Hilbert index (bit k of the index at level l lives in bit l
// of coordinate k). Programming the Hilbert curve, AIP Conf. Proc. 707
// (2004).
void axes_to_transpose(std::vector<std::uint64_t>& x, unsigned bits) {
  const std::size_t n = x.size();
  const std::uint64_t top = std::uint64_t{1} << (bits - 1);
  for (std::uint64_t q = top; q > 1; q >>= 1) {
    const std::uint64_t p = q - 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] & q) {
        x[0] ^= p;
      } else {
        const std::uint64_t t = (x[0] ^ x[i]) & p;
        x[0] ^= t;
        x[i] ^= t;
      }
    }
  }
  for (std::size_t i = 1; i < n; ++i) x[i] ^= x[i - 1];
  std::uint64_t t = 0;
  for (std::uint64_t q = top; q > 1; q >>= 1) {
    if (x[n - 1] & q) t ^= q - 1;
  }
  for (auto& v : x) v ^= t;
}

void transpose_to_axes(std::vector<std::uint64_t>& x, unsigned bits) {
  const std::size_t n = x.size();
  // 2^bits, wrapping to 0 when bits == 64; the loop below stops on the wrap.
  const std::uint64_t end = bits == 64 ? 0 : (std::uint64_t{1} << bits);
  std::uint64_t t = x[n - 1] >> 1;
  for (std::size_t i = n - 1; i > 0; --i) x[i] ^= x[i - 1];
  x[0] ^= t;
  for (std::uint64_t q = 2; q != end; q <<= 1) {
    const std::uint64_t p = q - 1;
    for (std::size_t i = n; i-- > 0;) {
      if (x[i] & q) {
        x[0] ^= p;
      } else {
        t = (x[0] ^ x[i]) & p;
        x[0] ^= t;
        x[i] ^= t;
      }
    }
  }
}

std::uint64_t interleave(const std::vector<std::uint64_t>& x, unsigned bits) {
  std::uint64_t index = 0;
  for (unsigned level = bits; level-- > 0;) {
    for (auto v : x) index = (index << 1) | ((v >> level) & 1U);
  }
  return index;
}

std::vector<std::uint64_t> deinterleave(std::uint64_t index, std::size_t dims, unsigned bits) {
  std::vector<std::uint64_t> x(dims, 0);
  unsigned shift = static_cast<unsigned>(dims) * bits;
  for (unsigned level = bits; level-- > 0;) {
    for (auto& v : x) {
      --shift;
      v |= ((index >> shift) & 1U) << level;
    }
  }
  return x;
}

}  // namespace

std::string_view to_string(TieMode mode) {
  return mode == TieMode::aggregate ? "aggregate" : "perturb";
}

Config Config::for_dims(std::size_t dims) {
  Config c;
  c.dims = dims;
  c.bits_per_dim = dims == 0 || dims > 64 ? 1 : static_cast<unsigned>(64 / dims);
  return c;
}

std::uint64_t Config::max_coordinate() const {
  return bits_per_dim >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits_per_dim) - 1;
}

void Config::validate() const {
  if (dims < 1 || dims > 64) {
    throw Error(ErrorKind::InvalidSpec, "Hilbert dimension must be in [1, 64]");
  }
  if (bits_per_dim < 1 || dims * bits_per_dim > 64) {
    throw Error(ErrorKind::InvalidSpec,
                "bits per dimension must be >= 1 with dims * bits <= 64, got " +
                    std::to_string(dims) + " * " + std::to_string(bits_per_dim));
  }
  if (!(perturb_scale >= 0.0) || !std::isfinite(perturb_scale)) {
    throw Error(ErrorKind::InvalidSpec, "perturbation scale must be finite and >= 0");
  }
}

std::uint64_t encode(std::span<const std::uint64_t> point, const Config& config) {
  config.validate();
  if (point.size() != config.dims) {
    throw Error(ErrorKind::InvalidLattice,
                "expected " + std::to_string(config.dims) + " coordinates, got " +
                    std::to_string(point.size()));
  }
  const std::uint64_t max = config.max_coordinate();
  for (auto v : point) {
    if (v > max) {
      throw Error(ErrorKind::InvalidLattice,
                  "coordinate " + std::to_string(v) + " exceeds " + std::to_string(max));
    }
  }
  if (config.dims == 1) return point[0];
  std::vector<std::uint64_t> x(point.begin(), point.end());
  axes_to_transpose(x, config.bits_per_dim);
  return interleave(x, config.bits_per_dim);
}

LatticePoint decode(std::uint64_t index, const Config& config) {
  config.validate();
  const unsigned total = config.index_bits();
  if (total < 64 && index >> total != 0) {
    throw Error(ErrorKind::InvalidIndex,
                "index " + std::to_string(index) + " needs more than " +
                    std::to_string(total) + " bits");
  }
  if (config.dims == 1) return {index};
  auto x = deinterleave(index, config.dims, config.bits_per_dim);
  transpose_to_axes(x, config.bits_per_dim);
  return x;
}

LatticePoint quantize(std::span<const double> covariates, const Config& config) {
  config.validate();
  if (covariates.size() != config.dims) {
    throw Error(ErrorKind::OutOfRange,
                "expected " + std::to_string(config.dims) + " covariates, got " +
                    std::to_string(covariates.size()));
  }
  const std::uint64_t max = config.max_coordinate();
  // long double keeps 2^64 - 1 exact on the platforms we build for; the
  // clamp guards the ones where it is a plain double.
  const long double scale = static_cast<long double>(max);
  LatticePoint out(config.dims);
  for (std::size_t i = 0; i < covariates.size(); ++i) {
    const double u = covariates[i];
    if (!(u >= 0.0 && u <= 1.0)) {
      throw Error(ErrorKind::OutOfRange,
                  "covariate " + std::to_string(i) + " is outside [0, 1]");
    }
    const long double cell = std::floor(static_cast<long double>(u) * scale + 0.5L);
    out[i] = cell >= scale ? max : static_cast<std::uint64_t>(cell);
  }
  return out;
}

double score(std::span<const double> covariates, const Config& config) {
  const std::uint64_t index = encode(quantize(covariates, config), config);
  const double s = std::ldexp(static_cast<double>(index), -static_cast<int>(config.index_bits()));
  // Indices near 2^64 round up to 1.0 in double precision.
  return s < 1.0 ? s : std::nextafter(1.0, 0.0);
}

CovariateMatrix normalize_covariates(CovariateMatrix matrix) {
  if (matrix.rows == 0 || matrix.cols == 0) {
    throw Error(ErrorKind::EmptyInput, "covariate matrix is empty");
  }
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    for (std::size_t j = 0; j < matrix.cols; ++j) {
      if (!std::isfinite(matrix(i, j))) {
        throw Error(ErrorKind::InvalidRecord,
                    "nonfinite covariate in row " + std::to_string(i), i);
      }
    }
  }
  for (std::size_t j = 0; j < matrix.cols; ++j) {
    double lo = matrix(0, j), hi = lo;
    for (std::size_t i = 1; i < matrix.rows; ++i) {
      lo = std::min(lo, matrix(i, j));
      hi = std::max(hi, matrix(i, j));
    }
    for (std::size_t i = 0; i < matrix.rows; ++i) {
      double& v = matrix(i, j);
      v = lo < hi ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.5;
    }
  }
  return matrix;
}

std::vector<double> normalize_scores(std::span<const double> scores) {
  std::vector<double> out(scores.begin(), scores.end());
  if (out.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(out.begin(), out.end());
  const double lo = *lo_it, hi = *hi_it;
  for (auto& v : out) v = lo < hi ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.5;
  return out;
}

std::vector<double> score_rows(const CovariateMatrix& normalized, const Config& config) {
  std::vector<double> out(normalized.rows);
  for (std::size_t i = 0; i < normalized.rows; ++i) out[i] = score(normalized.row(i), config);
  return out;
}

std::vector<double> break_ties(std::span<const double> scores, const Config& config) {
  std::vector<double> out(scores.begin(), scores.end());
  if (config.tie_mode == TieMode::aggregate || out.empty()) return out;
  config.validate();

  const auto [lo_it, hi_it] = std::minmax_element(out.begin(), out.end());
  // With no spread at all, perturb on the unit scale.
  const double range = *lo_it < *hi_it ? *hi_it - *lo_it : 1.0;
  double half_width = config.perturb_scale * range;
  // Offsets below the spacing of doubles near the scores could never
  // separate a tie.
  const double magnitude = std::max(std::abs(*lo_it), std::abs(*hi_it));
  const double spacing = std::nextafter(magnitude, HUGE_VAL) - magnitude;
  half_width = std::max(half_width, 64.0 * spacing);

  Rng rng(config.seed);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = scores[i] + rng.uniform(-half_width, half_width);
  }

  std::vector<std::size_t> order(out.size());
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out[a] < out[b]; });
    bool collided = false;
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (out[order[k]] == out[order[k - 1]]) {
        const std::size_t i = order[k];
        out[i] = scores[i] + rng.uniform(-half_width, half_width);
        collided = true;
      }
    }
    if (!collided) return out;
  }
}

}  // namespace cumdiff::hilbert
