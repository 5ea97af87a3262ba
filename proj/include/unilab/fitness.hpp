#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unilab/rational.hpp"

namespace unilab {

/// Fitness table over unitation classes 0..n: values[i] is the fitness of
/// any bitstring with exactly i ones. The table always has a strict unique
/// maximum at optimum_level.
struct UnitationFitness {
  int n = 0;
  std::vector<double> values;
  int optimum_level = 0;
  std::string label;

  double at(int level) const { return values[static_cast<std::size_t>(level)]; }
};

/// Construction record for DistantSteppingStones: the rate p it was built
/// from, the deduplicated level sequence floor(n*s_k), and the index N of
/// the last stone. levels[0] == n is the optimum; levels[1..N] are the
/// stone plateaus, ending at floor(n/2).
struct SteppingStoneProfile {
  Rational p;
  int n = 0;
  std::vector<int> levels;
  int num_stones = 0;  // N
};

/// k-th iterate of f_p(x) = p(1-x) + (1-p)x starting from 1, in closed
/// form: (1-2p)^k / 2 + 1/2. Requires p in (0,1), k >= 0.
double closed_form_s(double p, int k);
Rational closed_form_s_exact(const Rational& p, int k);

/// Iteration budget before build_dss reports a construction error.
int dss_iteration_cap(int n);

/// Builds DistantSteppingStones_p on length-n bitstrings. Levels are
/// floored exactly in rational arithmetic; duplicate levels keep their
/// first (highest-fitness) occurrence and stone indices are re-packed
/// densely. Throws construction_error if floor(n*s_k) does not reach
/// floor(n/2) within dss_iteration_cap(n) iterations (only possible for
/// rates extremely close to 0 or 1).
std::pair<UnitationFitness, SteppingStoneProfile> build_dss(const Rational& p, int n);
std::pair<UnitationFitness, SteppingStoneProfile> build_dss(double p, int n);

UnitationFitness build_onemax(int n);
UnitationFitness build_needle(int n);

/// Droste-Jansen-Wegener Jump: m + i for i <= n-m or i == n, else n - i.
UnitationFitness build_jump(int n, int m);

/// 1 / (p^p (1-p)^(1-p)), the base of the minimal exponential runtime
/// scale. Lies in (1, 2] for p in (0, 1).
double alpha(double p);

/// Throws std::invalid_argument unless the table has n+1 entries and a
/// strict unique maximum at optimum_level.
void validate_fitness(const UnitationFitness& f);

}  // namespace unilab
