#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "cumdiff/cumulative.hpp"
#include "cumdiff/sample.hpp"

namespace cumdiff::synth {

// Shapes of the expected response difference E[Q] - E[R] over the score
// range [0, 1].
enum class Profile {
  // No difference anywhere.
  null,
  // +kFlatStep below 0.35, zero on [0.35, 0.65], -kFlatStep above.
  flat_middle,
  // Zero up to kJumpAt, then a constant kJumpHeight.
  jump,
  // Damped sinusoid kOscAmplitude * exp(-kOscDecay s) * sin(kOscCycles 2 pi s).
  oscillating,
};

enum class Noise { gaussian, bernoulli };

inline constexpr double kFlatStep = 0.1;
inline constexpr double kFlatLo = 0.35;
inline constexpr double kFlatHi = 0.65;
inline constexpr double kJumpAt = 0.6;
inline constexpr double kJumpHeight = 0.1;
inline constexpr double kOscAmplitude = 0.15;
inline constexpr double kOscDecay = 3.0;
inline constexpr double kOscCycles = 4.0;

struct Spec {
  std::size_t n = 4000;
  std::size_t m = 1000;
  Profile profile = Profile::null;
  Noise noise = Noise::gaussian;
  double sigma_noise = 0.1;
  std::uint64_t seed = 0;

  // Throws InvalidSpec.
  void validate() const;
};

std::string_view to_string(Profile profile);
std::string_view to_string(Noise noise);
Profile parse_profile(std::string_view name);
Noise parse_noise(std::string_view name);

// Expected responses at a score in [0, 1]. Both lie in [0, 1] so the same
// profile drives Bernoulli noise.
double expected_r(double score);
double expected_q(double score, Profile profile);

// Score of record k: the k-th point of a uniform grid on (0, 1), rounded
// down onto m evenly spaced values so that exactly m distinct scores occur.
double grid_score(std::size_t k, std::size_t n, std::size_t m);

struct Sample {
  PairedDataset dataset;
  // Group means replaced by their expectations; same scores and weights as
  // aggregate(dataset).
  AggregatedSamples expected;
};

// Deterministic in the spec, seed included. Unit weights.
Sample generate(const Spec& spec);

// Ground-truth curve: the cumulative curve of the expected aggregate.
CumulativeCurve expected_curve(const AggregatedSamples& expected);

}  // namespace cumdiff::synth
