#include "cumdiff/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cumdiff/error.hpp"
#include "cumdiff/random.hpp"

namespace cumdiff::synth {

void Spec::validate() const {
  if (n == 0) throw Error(ErrorKind::InvalidSpec, "sample size must be positive");
  if (m == 0 || m > n) {
    throw Error(ErrorKind::InvalidSpec, "need 1 <= m <= n, got m = " + std::to_string(m) +
                                            ", n = " + std::to_string(n));
  }
  if (!(sigma_noise >= 0.0) || !std::isfinite(sigma_noise)) {
    throw Error(ErrorKind::InvalidSpec, "noise level must be finite and >= 0");
  }
}

std::string_view to_string(Profile profile) {
  switch (profile) {
    case Profile::null: return "null";
    case Profile::flat_middle: return "flat_middle";
    case Profile::jump: return "jump";
    case Profile::oscillating: return "oscillating";
  }
  return "null";
}

std::string_view to_string(Noise noise) {
  return noise == Noise::gaussian ? "gaussian" : "bernoulli";
}

Profile parse_profile(std::string_view name) {
  for (auto p : {Profile::null, Profile::flat_middle, Profile::jump, Profile::oscillating}) {
    if (name == to_string(p)) return p;
  }
  throw Error(ErrorKind::InvalidSpec, "unknown profile '" + std::string(name) + "'");
}

Noise parse_noise(std::string_view name) {
  if (name == "gaussian") return Noise::gaussian;
  if (name == "bernoulli") return Noise::bernoulli;
  throw Error(ErrorKind::InvalidSpec, "unknown noise '" + std::string(name) + "'");
}

double expected_r(double score) { return 0.25 + 0.5 * score; }

double expected_q(double score, Profile profile) {
  const double base = expected_r(score);
  switch (profile) {
    case Profile::null:
      return base;
    case Profile::flat_middle:
      if (score < kFlatLo) return base + kFlatStep;
      if (score > kFlatHi) return base - kFlatStep;
      return base;
    case Profile::jump:
      return score > kJumpAt ? base + kJumpHeight : base;
    case Profile::oscillating:
      return base + kOscAmplitude * std::exp(-kOscDecay * score) *
                        std::sin(kOscCycles * 2.0 * std::numbers::pi * score);
  }
  return base;
}

double grid_score(std::size_t k, std::size_t n, std::size_t m) {
  const std::size_t j = ((2 * k + 1) * m) / (2 * n);
  return (static_cast<double>(j) + 0.5) / static_cast<double>(m);
}

Sample generate(const Spec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  PairedDataset dataset;
  dataset.records.reserve(spec.n);
  std::vector<double> scores, q_exp, r_exp, weights;
  scores.reserve(spec.m);
  for (std::size_t k = 0; k < spec.n; ++k) {
    const double s = grid_score(k, spec.n, spec.m);
    const double eq = expected_q(s, spec.profile);
    const double er = expected_r(s);
    double q = eq, r = er;
    if (spec.noise == Noise::gaussian) {
      q += spec.sigma_noise * rng.normal();
      r += spec.sigma_noise * rng.normal();
    } else {
      q = rng.bernoulli(eq) ? 1.0 : 0.0;
      r = rng.bernoulli(er) ? 1.0 : 0.0;
    }
    dataset.records.push_back({s, q, r, 1.0});

    if (scores.empty() || scores.back() != s) {
      scores.push_back(s);
      q_exp.push_back(eq);
      r_exp.push_back(er);
      weights.push_back(0.0);
    }
    weights.back() += 1.0;
  }
  auto expected = AggregatedSamples::make(std::move(scores), std::move(q_exp),
                                          std::move(r_exp), std::move(weights));
  return {std::move(dataset), std::move(expected)};
}

CumulativeCurve expected_curve(const AggregatedSamples& expected) {
  return cumulative_curve(expected);
}

}  // namespace cumdiff::synth
