#include "cumdiff/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "cumdiff/cumulative.hpp"
#include "cumdiff/error.hpp"
#include "cumdiff/random.hpp"

namespace cumdiff {

std::vector<TrialOutcome> run_trials(std::size_t trials, const synth::Spec& spec,
                                     std::uint64_t master_seed, unsigned threads) {
  spec.validate();
  std::vector<TrialOutcome> outcomes(trials);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    synth::Spec local = spec;
    for (std::size_t i = begin; i < end; ++i) {
      local.seed = derive_seed(master_seed, i);
      const auto sample = synth::generate(local);
      const auto agg = aggregate(sample.dataset);
      const auto curve = cumulative_curve(agg);
      outcomes[i] = {curve.final_ordinate(), sigma_estimate(agg)};
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));
  if (threads <= 1) {
    run_range(0, trials);
    return outcomes;
  }
  {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (trials + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(trials, t * chunk);
      const std::size_t end = std::min(trials, begin + chunk);
      if (begin < end) workers.emplace_back(run_range, begin, end);
    }
  }
  return outcomes;
}

CoverageResult coverage(std::size_t trials, const synth::Spec& spec, std::uint64_t master_seed,
                        unsigned threads) {
  if (trials == 0) throw Error(ErrorKind::InvalidSpec, "coverage needs at least one trial");
  const auto outcomes = run_trials(trials, spec, master_seed, threads);
  CoverageResult result;
  result.trials = trials;
  for (const auto& o : outcomes) {
    if (std::abs(o.average_difference) <= 2.0 * o.sigma) ++result.covered;
  }
  result.fraction = static_cast<double>(result.covered) / static_cast<double>(trials);
  return result;
}

}  // namespace cumdiff
