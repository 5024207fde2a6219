#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cumdiff/synthgen.hpp"

namespace cumdiff {

struct TrialOutcome {
  double average_difference = 0.0;
  double sigma = 0.0;
};

/*
 * Runs `trials` independent synthetic experiments. Trial i uses seed
 * derive_seed(master_seed, i) in place of spec.seed, so the outcomes do
 * not depend on `threads` (0 means hardware concurrency).
 */
std::vector<TrialOutcome> run_trials(std::size_t trials, const synth::Spec& spec,
                                     std::uint64_t master_seed, unsigned threads = 0);

struct CoverageResult {
  std::size_t trials = 0;
  std::size_t covered = 0;
  double fraction = 0.0;
};

// Fraction of trials with |C_m| <= 2 sigma. Throws InvalidSpec for zero
// trials.
CoverageResult coverage(std::size_t trials, const synth::Spec& spec, std::uint64_t master_seed,
                        unsigned threads = 0);

}  // namespace cumdiff
