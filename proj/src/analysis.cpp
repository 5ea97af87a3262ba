#include "unilab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "unilab/util.hpp"

namespace unilab {

namespace {

void check_grid_interior(double lo, double hi) {
  if (!(lo > 0.0 && hi < 1.0 && lo < hi))
    throw std::invalid_argument("q range must satisfy 0 < q_min < q_max < 1");
}

template <class T>
void check_grid(const std::vector<T>& grid) {
  if (grid.empty()) throw std::invalid_argument("q grid must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > T(0) && grid[i] < T(1)))
      throw std::invalid_argument("q grid must lie inside (0, 1)");
    if (i > 0 && !(grid[i - 1] < grid[i]))
      throw std::invalid_argument("q grid must be strictly increasing");
  }
}

}  // namespace

RuntimeCurve<double> runtime_curve(const UnitationFitness& fitness,
                                   const std::vector<double>& grid) {
  check_grid(grid);
  validate_fitness(fitness);
  RuntimeCurve<double> curve;
  curve.fitness_label = fitness.label;
  curve.backend = "float";
  curve.grid = grid;
  curve.values.assign(grid.size(), 0.0);
  const auto start = binomial_half_start(fitness.n);
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto chain = build_ea_chain(fitness, grid[i], Acceptance::kElitistGE);
    curve.values[i] = expected_hitting_time(chain, start);
  });
  return curve;
}

RuntimeCurve<Rational> runtime_curve(const UnitationFitness& fitness,
                                     const std::vector<Rational>& grid) {
  check_grid(grid);
  validate_fitness(fitness);
  RuntimeCurve<Rational> curve;
  curve.fitness_label = fitness.label;
  curve.backend = "rational";
  curve.grid = grid;
  curve.values.assign(grid.size(), Rational(0));
  const auto start = binomial_half_start_exact(fitness.n);
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto chain = build_ea_chain(fitness, grid[i], Acceptance::kElitistGE);
    curve.values[i] = expected_hitting_time(chain, start);
  });
  return curve;
}

OptRateResult optimal_rate(const UnitationFitness& fitness, const SearchOptions& opts,
                           RuntimeCurve<double>* coarse_out) {
  check_grid_interior(opts.q_min, opts.q_max);
  if (opts.coarse_points < 16) throw std::invalid_argument("coarse_points must be >= 16");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  const double lo_clamp = std::max(opts.q_min, 1e-3);
  const double hi_clamp = std::min(opts.q_max, 1.0 - 1e-3);
  if (!(lo_clamp < hi_clamp)) throw std::invalid_argument("empty search interval after clamping");

  const int points = opts.coarse_points;
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] =
        lo_clamp + (hi_clamp - lo_clamp) * static_cast<double>(i) / (points - 1);

  auto curve = runtime_curve(fitness, grid);
  if (coarse_out) *coarse_out = curve;

  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < curve.values.size(); ++i)
    if (curve.values[i] < curve.values[best_idx]) best_idx = i;  // ties keep the smaller q
  if (std::isinf(curve.values[best_idx]))
    throw no_minimum_error("every sampled runtime is infinite");

  OptRateResult out;
  out.boundary_flag = best_idx == 0 || best_idx + 1 == curve.values.size();

  double best_q = grid[best_idx];
  double best_t = curve.values[best_idx];
  auto consider = [&](double q, double t) {
    if (t < best_t || (t == best_t && q < best_q)) {
      best_t = t;
      best_q = q;
    }
  };

  const auto start = binomial_half_start(fitness.n);
  auto eval = [&](double q) {
    const auto chain = build_ea_chain(fitness, q, Acceptance::kElitistGE);
    const double t = expected_hitting_time(chain, start);
    consider(q, t);
    return t;
  };

  double lo = grid[best_idx == 0 ? 0 : best_idx - 1];
  double hi = grid[best_idx + 1 >= grid.size() ? grid.size() - 1 : best_idx + 1];

  constexpr double kInvPhi = 0.6180339887498949;
  int iterations = 0;
  if (hi - lo > opts.tol) {
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = eval(c);
    double fd = eval(d);
    while (hi - lo > opts.tol && iterations < 200) {
      if (fc <= fd) {  // ties move toward smaller q
        hi = d;
        d = c;
        fd = fc;
        c = hi - kInvPhi * (hi - lo);
        fc = eval(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + kInvPhi * (hi - lo);
        fd = eval(d);
      }
      ++iterations;
    }
  }

  out.q_star = best_q;
  out.t_star = best_t;
  out.refinement_iterations = iterations;
  out.bracket_lo = std::min(lo, best_q);
  out.bracket_hi = std::max(hi, best_q);
  return out;
}

ConvergenceReport convergence_study(const Rational& p, const std::vector<int>& n_list,
                                    const SearchOptions& opts) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0, 1)");
  if (n_list.empty()) throw std::invalid_argument("n list must be nonempty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 4) throw std::invalid_argument("each n must be >= 4");
    if (i > 0 && n_list[i - 1] >= n_list[i])
      throw std::invalid_argument("n list must be strictly increasing");
  }

  ConvergenceReport report;
  report.p = p;
  report.rows.resize(n_list.size());
  const double a = alpha(to_double(p));
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    ConvergenceRow row;
    row.n = n_list[i];
    try {
      const auto [fitness, profile] = build_dss(p, row.n);
      (void)profile;
      row.result = optimal_rate(fitness, opts);
      row.normalized = row.result.t_star / (std::pow(a, row.n) * (1.0 + std::log(row.n)));
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    report.rows[i] = std::move(row);
  }
  return report;
}

double needle_closed_form(int n, double p) {
  if (n < 1) throw std::invalid_argument("needle requires n >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
  double sum = 0.0;
  const double base = 1.0 - 2.0 * p;
  for (int j = 1; j <= n; ++j)
    sum += to_double(Rational(binomial_coefficient(n, j))) / (1.0 - std::pow(base, j));
  return sum;
}

Rational needle_closed_form(int n, const Rational& p) {
  if (n < 1) throw std::invalid_argument("needle requires n >= 1");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0, 1)");
  Rational sum = 0;
  const Rational base = 1 - 2 * p;
  for (int j = 1; j <= n; ++j)
    sum += Rational(binomial_coefficient(n, j)) / (1 - rational_pow(base, j));
  return sum;
}

namespace {

void check_stone_index(const SteppingStoneProfile& profile, int k) {
  if (k < 1 || k > profile.num_stones)
    throw std::invalid_argument("stone index must satisfy 1 <= k <= N");
}

// Flip counts (a ones, b zeros) realizing the move level -> level + d with
// total flip count nearest p*n; ties take fewer flips of ones.
std::pair<int, int> pattern_counts(const SteppingStoneProfile& profile, int k) {
  const int from = profile.levels[static_cast<std::size_t>(k)];
  const int to = profile.levels[static_cast<std::size_t>(k - 1)];
  const int n = profile.n;
  const int d = to - from;
  const int a_lo = std::max(0, -d);
  const int a_hi = std::min(from, n - from - d);
  if (a_lo > a_hi) throw std::logic_error("no feasible flip pattern between stone levels");

  const Rational target = profile.p * n;  // ideal total flips
  auto deviation = [&](int a) {
    Rational dev = Rational(2 * a + d) - target;
    return dev < 0 ? Rational(-dev) : dev;
  };
  int best = a_lo;
  Rational best_dev = deviation(a_lo);
  for (int a = a_lo + 1; a <= a_hi; ++a) {
    const Rational dev = deviation(a);
    if (dev < best_dev) {
      best = a;
      best_dev = dev;
    }
  }
  return {best, best + d};
}

}  // namespace

Rational stone_step_probability(const SteppingStoneProfile& profile, int k, const Rational& q) {
  check_stone_index(profile, k);
  const auto row =
      transition_pmf(profile.n, profile.levels[static_cast<std::size_t>(k)], q);
  return row[static_cast<std::size_t>(profile.levels[static_cast<std::size_t>(k - 1)])];
}

double stone_step_probability(const SteppingStoneProfile& profile, int k, double q) {
  check_stone_index(profile, k);
  const auto row = transition_pmf(profile.n, profile.levels[static_cast<std::size_t>(k)], q);
  return row[static_cast<std::size_t>(profile.levels[static_cast<std::size_t>(k - 1)])];
}

Rational stone_step_pattern_probability(const SteppingStoneProfile& profile, int k,
                                        const Rational& q) {
  check_stone_index(profile, k);
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  const auto [a, b] = pattern_counts(profile, k);
  return rational_pow(q, a + b) * rational_pow(1 - q, profile.n - a - b);
}

double stone_step_pattern_probability(const SteppingStoneProfile& profile, int k, double q) {
  check_stone_index(profile, k);
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
  const auto [a, b] = pattern_counts(profile, k);
  return std::exp((a + b) * std::log(q) + (profile.n - a - b) * std::log1p(-q));
}

double always_accept_stone_hitting_time(const UnitationFitness& fitness,
                                        const SteppingStoneProfile& profile, double q) {
  const auto chain = build_ea_chain(fitness, q, Acceptance::kAlwaysAccept, /*absorbing=*/false);
  std::vector<int> stones(profile.levels.begin() + 1, profile.levels.end());
  const auto times = hitting_times(chain, stones);
  const auto start = binomial_half_start(fitness.n);
  double acc = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) acc += start.weights[i] * times[i];
  return acc;
}

namespace {

double entropy_side(double x) { return std::exp(x * std::log(x) + (1.0 - x) * std::log1p(-x)); }

}  // namespace

std::vector<LemmaCheck> verify_analytic_lemmas(int grid_density) {
  if (grid_density < 100) throw std::invalid_argument("grid_density must be >= 100");
  const int g = grid_density;
  auto grid_point = [&](int i) { return static_cast<double>(i) / (g + 1); };

  std::vector<LemmaCheck> checks;

  {  // sqrt(x(1-x)) <= x^x (1-x)^(1-x), equality only at 1/2
    LemmaCheck c;
    c.id = "sqrt-entropy-inequality";
    c.pass = true;
    c.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= g; ++i) {
      const double x = grid_point(i);
      const double margin = entropy_side(x) - std::sqrt(x * (1.0 - x));
      if (margin < c.worst_margin) {
        c.worst_margin = margin;
        c.worst_point = {x, 0.0};
      }
      const bool away = std::abs(x - 0.5) >= 0.01;
      if (margin < -1e-12 || (away && !(margin > 0.0))) c.pass = false;
    }
    c.note = "margin = x^x(1-x)^(1-x) - sqrt(x(1-x))";
    checks.push_back(std::move(c));
  }

  {  // argmax of g1(x) = (1-x)^(1-a) x^a is a; mirrored version peaks at 1-a
    LemmaCheck c1, c2;
    c1.id = "g1-argmax";
    c2.id = "g2-argmax";
    c1.pass = c2.pass = true;
    c1.worst_margin = c2.worst_margin = 0.0;  // worst |argmax - expected|
    const double tol = 1.0 / g + 1e-12;
    for (int ia = 1; ia <= g; ++ia) {
      const double a = grid_point(ia);
      double best1 = -1.0, best1_val = -1.0, best2 = -1.0, best2_val = -1.0;
      for (int i = 1; i <= g; ++i) {
        const double x = grid_point(i);
        const double v1 = std::exp((1.0 - a) * std::log1p(-x) + a * std::log(x));
        const double v2 = std::exp((1.0 - a) * std::log(x) + a * std::log1p(-x));
        if (v1 > best1_val) {
          best1_val = v1;
          best1 = x;
        }
        if (v2 > best2_val) {
          best2_val = v2;
          best2 = x;
        }
      }
      const double dev1 = std::abs(best1 - a);
      const double dev2 = std::abs(best2 - (1.0 - a));
      if (dev1 > c1.worst_margin) {
        c1.worst_margin = dev1;
        c1.worst_point = {a, best1};
      }
      if (dev2 > c2.worst_margin) {
        c2.worst_margin = dev2;
        c2.worst_point = {a, best2};
      }
      if (dev1 > tol) c1.pass = false;
      if (dev2 > tol) c2.pass = false;
    }
    c1.note = "worst |grid argmax - a| (tolerance 1/grid_density)";
    c2.note = "worst |grid argmax - (1-a)| (tolerance 1/grid_density)";
    checks.push_back(std::move(c1));
    checks.push_back(std::move(c2));
  }

  {  // q^(1-beta) (1-q)^beta < (1-p)^(1-p) p^p, beta = (1-p)^2 + p^2
    LemmaCheck c;
    c.id = "beta-rate-inequality";
    c.pass = true;
    c.worst_margin = std::numeric_limits<double>::infinity();
    for (int ip = 1; ip <= g; ++ip) {
      const double p = grid_point(ip);
      const double beta = (1.0 - p) * (1.0 - p) + p * p;
      const double rhs = std::exp((1.0 - p) * std::log1p(-p) + p * std::log(p));
      for (int iq = 1; iq <= g; ++iq) {
        const double q = grid_point(iq);
        const double lhs = std::exp((1.0 - beta) * std::log(q) + beta * std::log1p(-q));
        const double margin = rhs - lhs;
        if (margin < c.worst_margin) {
          c.worst_margin = margin;
          c.worst_point = {p, q};
        }
        if (!(margin > 0.0)) c.pass = false;
      }
    }
    c.note = "margin = (1-p)^(1-p) p^p - q^(1-beta) (1-q)^beta";
    checks.push_back(std::move(c));
  }

  return checks;
}

}  // namespace unilab
