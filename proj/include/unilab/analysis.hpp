#pragma once

#include <array>
#include <string>
#include <vector>

#include "unilab/chain.hpp"
#include "unilab/fitness.hpp"
#include "unilab/rational.hpp"

namespace unilab {

/// E[T(q)] sampled over a q grid. Float-backend values may be +infinity
/// where the solve overflowed.
template <class T>
struct RuntimeCurve {
  std::string fitness_label;
  std::string backend;
  std::vector<T> grid;
  std::vector<T> values;
};

RuntimeCurve<double> runtime_curve(const UnitationFitness& fitness,
                                   const std::vector<double>& grid);
RuntimeCurve<Rational> runtime_curve(const UnitationFitness& fitness,
                                     const std::vector<Rational>& grid);

struct SearchOptions {
  double q_min = 1e-3;
  double q_max = 1.0 - 1e-3;
  int coarse_points = 256;
  double tol = 1e-4;
};

struct OptRateResult {
  double q_star = 0.0;
  double t_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int refinement_iterations = 0;
  bool boundary_flag = false;
};

/// Locates the q minimizing E[T(q)] (float backend): a dense coarse scan
/// followed by golden-section refinement inside the neighboring bracket.
/// Ties break toward smaller q; boundary_flag reports a coarse minimum at
/// the domain clamp. The search domain is clamped to [1e-3, 1 - 1e-3].
/// Throws no_minimum_error when every sampled value is infinite. Pass
/// coarse_out to receive the coarse curve.
OptRateResult optimal_rate(const UnitationFitness& fitness, const SearchOptions& opts = {},
                           RuntimeCurve<double>* coarse_out = nullptr);

struct ConvergenceRow {
  int n = 0;
  bool ok = false;
  std::string error;
  OptRateResult result;
  double normalized = 0.0;  // t_star / (alpha(p)^n * (1 + ln n))
};

struct ConvergenceReport {
  Rational p;
  std::vector<ConvergenceRow> rows;
};

/// One optimal-rate row per n for DistantSteppingStones_p. Per-row
/// failures are recorded in the row and the study continues.
ConvergenceReport convergence_study(const Rational& p, const std::vector<int>& n_list,
                                    const SearchOptions& opts = {});

/// sum_{j=1}^n C(n,j) / (1 - (1-2p)^j): the exact Needle expected runtime
/// under the free-initialization convention.
double needle_closed_form(int n, double p);
Rational needle_closed_form(int n, const Rational& p);

/// Exact kernel probability of the one-step move from stone k to the next
/// plateau up, level l_k -> level l_(k-1). Requires 1 <= k <= N.
Rational stone_step_probability(const SteppingStoneProfile& profile, int k, const Rational& q);
double stone_step_probability(const SteppingStoneProfile& profile, int k, double q);

/// Probability of the canonical sufficient flip pattern for the same
/// move: a specific set of a ones and b = a + (l_(k-1) - l_k) zeros flips
/// and everything else stays, with a chosen so the total flip count is as
/// close as possible to p*n. Evaluated at rate q this is
/// q^(a+b) (1-q)^(n-a-b); at q = p it is within a constant factor of
/// alpha(p)^-n for every consecutive stone pair.
Rational stone_step_pattern_probability(const SteppingStoneProfile& profile, int k,
                                        const Rational& q);
double stone_step_pattern_probability(const SteppingStoneProfile& profile, int k, double q);

/// Expected steps for the always-accept chain to first reach any stone
/// plateau, from a uniform random start.
double always_accept_stone_hitting_time(const UnitationFitness& fitness,
                                        const SteppingStoneProfile& profile, double q);

struct LemmaCheck {
  std::string id;
  bool pass = false;
  double worst_margin = 0.0;
  std::array<double, 2> worst_point{0.0, 0.0};
  std::string note;
};

/// Grid verification of the analytic inequalities used by the runtime
/// bounds:
///   - sqrt(x(1-x)) <= x^x (1-x)^(1-x), equality only at x = 1/2;
///   - argmax of g1(x) = (1-x)^(1-a) x^a is a (and 1-a for the mirrored
///     g2), located within 1/grid_density;
///   - q^(1-beta) (1-q)^beta < (1-p)^(1-p) p^p with beta = (1-p)^2 + p^2.
/// Requires grid_density >= 100.
std::vector<LemmaCheck> verify_analytic_lemmas(int grid_density = 1000);

}  // namespace unilab
