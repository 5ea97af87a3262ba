#pragma once

#include <cstdint>

#include "unilab/fitness.hpp"

namespace unilab {

/// Counter-based generator: the stream for one mutation step is keyed by
/// (seed, run, step), so runs are reproducible bit for bit in any
/// execution order.
struct StepRng {
  std::uint64_t state;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
  }

  StepRng(std::uint64_t seed, std::uint64_t run, std::uint64_t step) {
    std::uint64_t k = mix(seed + 0x9e3779b97f4a7c15ULL);
    k = mix(k ^ (run + 0xbf58476d1ce4e5b9ULL));
    k = mix(k ^ (step + 0x94d049bb133111ebULL));
    state = k;
  }

  std::uint64_t next() {  // splitmix64 stream
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct TrajectoryResult {
  std::uint64_t steps = 0;
  bool hit = false;
};

/// Aggregate over a batch of runs. mean_steps and standard_error cover
/// hitting runs only; censored counts the cap-exceeded runs excluded from
/// them.
struct TrajectoryStats {
  std::uint64_t runs = 0;
  std::uint64_t hits = 0;
  std::uint64_t censored = 0;
  double mean_steps = 0.0;
  double standard_error = 0.0;
  bool se_valid = false;            // needs at least two hitting runs
  bool estimate_available = false;  // false when every run was censored
  std::uint64_t cap = 0;
  std::uint64_t seed = 0;
};

/// One (1+1) EA run on real length-n bitstrings: uniform random start,
/// each step flips every bit independently with probability q, offspring
/// kept iff its fitness is at least the parent's. Returns the number of
/// steps until the unitation first equals the optimum level (0 when the
/// start is already optimal), or hit = false once cap steps pass.
TrajectoryResult run_trajectory(const UnitationFitness& fitness, double q, std::uint64_t seed,
                                std::uint64_t cap, std::uint64_t run_index = 0);

/// Runs `runs` independent trajectories (run r keyed by (seed, r)) and
/// aggregates them in run order.
TrajectoryStats estimate_runtime(const UnitationFitness& fitness, double q, std::uint64_t runs,
                                 std::uint64_t cap, std::uint64_t seed);

}  // namespace unilab
