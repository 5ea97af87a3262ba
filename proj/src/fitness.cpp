#include "unilab/fitness.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "unilab/util.hpp"

namespace unilab {

namespace {

void require_interior(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("rate must lie in (0, 1)");
}

void require_interior(const Rational& p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("rate must lie in (0, 1)");
}

std::string rate_tag(const Rational& p) { return to_fraction_string(p); }

}  // namespace

double closed_form_s(double p, int k) {
  require_interior(p);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  return std::pow(1.0 - 2.0 * p, k) * 0.5 + 0.5;
}

Rational closed_form_s_exact(const Rational& p, int k) {
  require_interior(p);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  return rational_pow(1 - 2 * p, k) / 2 + Rational(1, 2);
}

int dss_iteration_cap(int n) {
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;  // ceil(log2 n)
  return 64 * (1 + log2n);
}

std::pair<UnitationFitness, SteppingStoneProfile> build_dss(const Rational& p, int n) {
  require_interior(p);
  if (n < 2) throw std::invalid_argument("dss requires n >= 2");

  const int target = n / 2;
  const int cap = dss_iteration_cap(n);
  const Rational shrink = 1 - 2 * p;

  // Raw sequence floor(n * s_k) until it reaches floor(n/2).
  std::vector<int> raw{n};
  Rational pw = 1;  // (1-2p)^k
  bool reached = false;
  for (int k = 1; k <= cap; ++k) {
    pw *= shrink;
    Rational level_value = Rational(n) * (pw + 1) / 2;
    int level = static_cast<int>(floor_rational(level_value));
    raw.push_back(level);
    if (level == target) {
      reached = true;
      break;
    }
  }
  if (!reached)
    throw construction_error("level iteration did not reach floor(n/2) within " +
                             std::to_string(cap) + " iterations (rate too extreme)");

  // Keep the first occurrence of each level; a repeat would otherwise
  // overwrite higher fitness with lower.
  std::vector<int> levels;
  std::unordered_set<int> seen;
  for (int level : raw) {
    if (level == n && !levels.empty()) continue;
    if (seen.insert(level).second) levels.push_back(level);
  }

  SteppingStoneProfile profile;
  profile.p = p;
  profile.n = n;
  profile.levels = levels;
  profile.num_stones = static_cast<int>(levels.size()) - 1;

  UnitationFitness fitness;
  fitness.n = n;
  fitness.values.assign(static_cast<std::size_t>(n) + 1, 0.0);
  const int big_n = profile.num_stones;
  for (int k = 0; k <= big_n; ++k)
    fitness.values[static_cast<std::size_t>(levels[static_cast<std::size_t>(k)])] =
        static_cast<double>(big_n + 1 - k);
  fitness.optimum_level = n;
  fitness.label = "dss(p=" + rate_tag(p) + ",n=" + std::to_string(n) + ")";
  validate_fitness(fitness);
  return {std::move(fitness), std::move(profile)};
}

std::pair<UnitationFitness, SteppingStoneProfile> build_dss(double p, int n) {
  require_interior(p);
  return build_dss(Rational(p), n);  // the double converts exactly
}

UnitationFitness build_onemax(int n) {
  if (n < 1) throw std::invalid_argument("onemax requires n >= 1");
  UnitationFitness f;
  f.n = n;
  f.values.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) f.values[static_cast<std::size_t>(i)] = i;
  f.optimum_level = n;
  f.label = "onemax(n=" + std::to_string(n) + ")";
  return f;
}

UnitationFitness build_needle(int n) {
  if (n < 1) throw std::invalid_argument("needle requires n >= 1");
  UnitationFitness f;
  f.n = n;
  f.values.assign(static_cast<std::size_t>(n) + 1, 1.0);
  f.values[static_cast<std::size_t>(n)] = 2.0;
  f.optimum_level = n;
  f.label = "needle(n=" + std::to_string(n) + ")";
  return f;
}

UnitationFitness build_jump(int n, int m) {
  if (n < 1) throw std::invalid_argument("jump requires n >= 1");
  if (m < 1 || m >= n) throw std::invalid_argument("jump requires 1 <= m < n");
  UnitationFitness f;
  f.n = n;
  f.values.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    f.values[static_cast<std::size_t>(i)] =
        (i <= n - m || i == n) ? static_cast<double>(m + i) : static_cast<double>(n - i);
  f.optimum_level = n;
  f.label = "jump(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
  return f;
}

double alpha(double p) {
  require_interior(p);
  return std::exp(-(p * std::log(p) + (1.0 - p) * std::log1p(-p)));
}

void validate_fitness(const UnitationFitness& f) {
  if (f.n < 1) throw std::invalid_argument("fitness: n must be positive");
  if (f.values.size() != static_cast<std::size_t>(f.n) + 1)
    throw std::invalid_argument("fitness: values must have n+1 entries");
  if (f.optimum_level < 0 || f.optimum_level > f.n)
    throw std::invalid_argument("fitness: optimum level out of range");
  const double best = f.values[static_cast<std::size_t>(f.optimum_level)];
  for (int i = 0; i <= f.n; ++i)
    if (i != f.optimum_level && !(f.values[static_cast<std::size_t>(i)] < best))
      throw std::invalid_argument("fitness: maximum at optimum level is not strict");
}

}  // namespace unilab
