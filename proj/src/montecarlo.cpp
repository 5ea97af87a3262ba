#include "unilab/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "unilab/util.hpp"

namespace unilab {

TrajectoryResult run_trajectory(const UnitationFitness& fitness, double q, std::uint64_t seed,
                                std::uint64_t cap, std::uint64_t run_index) {
  validate_fitness(fitness);
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");

  const int n = fitness.n;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  int ones = 0;
  {
    StepRng rng(seed, run_index, 0);
    for (int i = 0; i < n; ++i) {
      bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng.next() & 1u);
      ones += bits[static_cast<std::size_t>(i)];
    }
  }
  if (ones == fitness.optimum_level) return {0, true};

  std::vector<int> flipped;
  flipped.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t step = 1; step <= cap; ++step) {
    StepRng rng(seed, run_index, step);
    flipped.clear();
    int delta = 0;
    for (int i = 0; i < n; ++i) {
      if (rng.next_unit() < q) {
        flipped.push_back(i);
        delta += bits[static_cast<std::size_t>(i)] ? -1 : 1;
      }
    }
    const int candidate = ones + delta;
    if (fitness.at(candidate) >= fitness.at(ones)) {
      for (int i : flipped) bits[static_cast<std::size_t>(i)] ^= 1u;
      ones = candidate;
      if (ones == fitness.optimum_level) return {step, true};
    }
  }
  return {cap, false};
}

TrajectoryStats estimate_runtime(const UnitationFitness& fitness, double q, std::uint64_t runs,
                                 std::uint64_t cap, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");

  std::vector<TrajectoryResult> results(runs);
  parallel_for(runs, [&](std::size_t r) {
    results[r] = run_trajectory(fitness, q, seed, cap, static_cast<std::uint64_t>(r));
  });

  TrajectoryStats stats;
  stats.runs = runs;
  stats.cap = cap;
  stats.seed = seed;

  double sum = 0.0;
  for (const auto& r : results) {
    if (r.hit) {
      ++stats.hits;
      sum += static_cast<double>(r.steps);
    }
  }
  stats.censored = runs - stats.hits;
  stats.estimate_available = stats.hits >= 1;
  if (!stats.estimate_available) {
    stats.mean_steps = std::nan("");
    stats.standard_error = std::nan("");
    return stats;
  }

  stats.mean_steps = sum / static_cast<double>(stats.hits);
  if (stats.hits >= 2) {
    double ss = 0.0;
    for (const auto& r : results) {
      if (!r.hit) continue;
      const double d = static_cast<double>(r.steps) - stats.mean_steps;
      ss += d * d;
    }
    const double variance = ss / static_cast<double>(stats.hits - 1);
    stats.standard_error = std::sqrt(variance / static_cast<double>(stats.hits));
    stats.se_valid = true;
  } else {
    stats.standard_error = std::nan("");
    stats.se_valid = false;
  }
  return stats;
}

}  // namespace unilab
