#include <doctest.h>

#include <cmath>

#include "unilab/analysis.hpp"
#include "unilab/fitness.hpp"

using namespace unilab;

TEST_SUITE("analysis") {

TEST_CASE("runtime curve on onemax n=1 is 1/(2q)") {
  const auto curve = runtime_curve(build_onemax(1), std::vector<double>{0.25, 0.5, 0.75});
  CHECK(curve.values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(curve.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve.values[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const auto exact = runtime_curve(
      build_onemax(1), std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(3, 4)});
  CHECK(exact.values == std::vector<Rational>{Rational(2), Rational(1), Rational(2, 3)});
}

TEST_CASE("rational needle curve equals the closed form at each grid point") {
  const auto needle = build_needle(6);
  const std::vector<Rational> grid{Rational(3, 10), Rational(1, 2), Rational(7, 10)};
  const auto curve = runtime_curve(needle, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(curve.values[i] == needle_closed_form(6, grid[i]));
}

TEST_CASE("curve grid validation") {
  const auto onemax = build_onemax(2);
  CHECK_THROWS_AS(runtime_curve(onemax, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(runtime_curve(onemax, std::vector<double>{0.5, 0.25}), std::invalid_argument);
  CHECK_THROWS_AS(runtime_curve(onemax, std::vector<double>{0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(runtime_curve(onemax, std::vector<double>{0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("optimal rate on onemax n=1 clamps at the right edge") {
  SearchOptions so;
  so.q_min = 0.01;
  so.q_max = 0.99;
  const auto res = optimal_rate(build_onemax(1), so);
  CHECK(res.boundary_flag);
  CHECK(res.q_star > 0.98);
  CHECK(res.q_star <= 0.99);
}

TEST_CASE("optimal rate on onemax n=20 sits near 1/n") {
  SearchOptions so;
  so.q_min = 0.005;
  so.q_max = 0.5;
  RuntimeCurve<double> coarse;
  const auto res = optimal_rate(build_onemax(20), so, &coarse);
  CHECK(res.q_star > 0.5 / 20);
  CHECK(res.q_star < 2.0 / 20);
  CHECK(!res.boundary_flag);
  CHECK(res.q_star >= res.bracket_lo);
  CHECK(res.q_star <= res.bracket_hi);
  for (double v : coarse.values) CHECK(res.t_star <= v);
}

TEST_CASE("optimal rate on jump(20, 3) sits near m/n") {
  SearchOptions so;
  so.q_min = 0.01;
  so.q_max = 0.6;
  const auto res = optimal_rate(build_jump(20, 3), so);
  CHECK(res.q_star > 0.5 * 3.0 / 20);
  CHECK(res.q_star < 2.0 * 3.0 / 20);
}

TEST_CASE("optimal rate on dss(1/2, 10) is close to 1/2") {
  SearchOptions so;
  so.q_min = 0.05;
  so.q_max = 0.95;
  const auto [fitness, profile] = build_dss(Rational(1, 2), 10);
  const auto res = optimal_rate(fitness, so);
  CHECK(std::abs(res.q_star - 0.5) <= 0.02);
}

TEST_CASE("optimal rate search validation") {
  const auto onemax = build_onemax(4);
  SearchOptions bad;
  bad.coarse_points = 8;
  CHECK_THROWS_AS(optimal_rate(onemax, bad), std::invalid_argument);
  bad = SearchOptions{};
  bad.tol = 0.0;
  CHECK_THROWS_AS(optimal_rate(onemax, bad), std::invalid_argument);
  bad = SearchOptions{};
  bad.q_min = 0.5;
  bad.q_max = 0.2;
  CHECK_THROWS_AS(optimal_rate(onemax, bad), std::invalid_argument);
}

TEST_CASE("optimal rate is invariant under monotone rescaling") {
  const auto [fitness, profile] = build_dss(Rational(3, 10), 12);
  UnitationFitness rescaled = fitness;
  for (auto& v : rescaled.values) v = 3.0 * v + 2.0;  // strictly increasing map

  const auto a = build_ea_chain(fitness, 0.31, Acceptance::kElitistGE);
  const auto b = build_ea_chain(rescaled, 0.31, Acceptance::kElitistGE);
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j)
      CHECK(a.rows(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) ==
            b.rows(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));

  SearchOptions so;
  so.coarse_points = 64;
  const auto ra = optimal_rate(fitness, so);
  const auto rb = optimal_rate(rescaled, so);
  CHECK(ra.q_star == rb.q_star);
  CHECK(ra.t_star == rb.t_star);

  UnitationFitness squared = build_onemax(10);
  for (auto& v : squared.values) v = v * v;  // increasing on 0..n
  const auto r1 = optimal_rate(build_onemax(10), so);
  const auto r2 = optimal_rate(squared, so);
  CHECK(r1.q_star == r2.q_star);
}

TEST_CASE("needle closed form: fixed points") {
  CHECK(needle_closed_form(2, Rational(1, 2)) == 3);
  CHECK(needle_closed_form(1, Rational(1, 4)) == 2);
  CHECK(needle_closed_form(1, 0.25) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("needle closed form equals the exact chain for n <= 12") {
  for (int n = 1; n <= 12; ++n) {
    const auto needle = build_needle(n);
    const auto start = binomial_half_start_exact(n);
    for (const auto& q :
         {Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(4, 5)}) {
      const auto chain = build_ea_chain(needle, q, Acceptance::kElitistGE);
      CHECK(expected_hitting_time(chain, start) == needle_closed_form(n, q));
    }
  }
}

TEST_CASE("stone-step probability: dss(1/2, 8) k=1 is the single-mask move") {
  const auto [fitness, profile] = build_dss(Rational(1, 2), 8);
  const auto oracle = transition_pmf(8, 4, Rational(1, 2));
  CHECK(stone_step_probability(profile, 1, Rational(1, 2)) == oracle[8]);
  CHECK(stone_step_probability(profile, 1, Rational(1, 2)) == Rational(1, 256));
  CHECK(stone_step_pattern_probability(profile, 1, Rational(1, 2)) == Rational(1, 256));
  CHECK_THROWS_AS(stone_step_probability(profile, 0, Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(stone_step_probability(profile, 2, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("stone-step pattern probability stays in the alpha band at q = p") {
  const double a = alpha(0.3);
  const auto [fitness, profile] = build_dss(Rational(3, 10), 20);
  const double scale = std::pow(a, 20);
  const double k3 = to_double(stone_step_pattern_probability(profile, 3, Rational(3, 10)));
  CHECK(k3 * scale >= 1e-3);
  CHECK(k3 * scale <= 1e3);
  for (int k = 1; k <= profile.num_stones; ++k) {
    const auto pattern = stone_step_pattern_probability(profile, k, Rational(3, 10));
    const auto kernel_entry = stone_step_probability(profile, k, Rational(3, 10));
    CHECK(kernel_entry >= pattern);  // the pattern is one way to make the move
  }
}

TEST_CASE("kernel stone-step entries dominate alpha^-n / poly(n) at q = p") {
  for (int n : {10, 20, 30, 40}) {
    const auto [fitness, profile] = build_dss(Rational(3, 10), n);
    const double scale = std::pow(alpha(0.3), n);
    for (int k = 1; k <= profile.num_stones; ++k) {
      const double v = to_double(stone_step_probability(profile, k, Rational(3, 10)));
      CHECK(v * scale >= 1.0 / (n * n));
    }
  }
}

TEST_CASE("escape probabilities never exceed the stated bounds") {
  for (const auto& p : {Rational(3, 10), Rational(7, 10)}) {
    for (int n : {12, 20}) {
      const auto [fitness, profile] = build_dss(p, n);
      const Rational beta = rational_pow(1 - p, 2) + rational_pow(p, 2);
      for (int num = 1; num <= 9; ++num) {
        const Rational q(num, 10);
        Rational worst = 0;
        for (int k = 1; k <= profile.num_stones; ++k) {
          const int level = profile.levels[static_cast<std::size_t>(k)];
          const Rational prob =
              rational_pow(q, n - level) * rational_pow(1 - q, level);
          if (prob > worst) worst = prob;
        }
        Rational bound;
        if (p > Rational(1, 2)) {
          if (q >= Rational(1, 2)) {
            const long e = static_cast<long>(ceil_rational(p * n).convert_to<long long>());
            const long f =
                static_cast<long>(floor_rational((1 - p) * n).convert_to<long long>());
            bound = rational_pow(q, e) * rational_pow(1 - q, f);
          } else {
            const long e =
                static_cast<long>(ceil_rational((1 - beta) * n).convert_to<long long>());
            const long f = static_cast<long>(floor_rational(beta * n).convert_to<long long>());
            bound = rational_pow(q, e) * rational_pow(1 - q, f);
          }
        } else {
          if (q <= Rational(1, 2)) {
            const long e = static_cast<long>(ceil_rational(p * n).convert_to<long long>());
            const long f =
                static_cast<long>(floor_rational((1 - p) * n).convert_to<long long>());
            bound = rational_pow(q, e) * rational_pow(1 - q, f);
          } else {
            bound = rational_pow(q * (1 - q), n / 2);  // gamma^n, n even
          }
        }
        CHECK(worst <= bound);
      }
    }
  }
}

TEST_CASE("always-accept chain reaches a stone quickly at rate p") {
  for (int n : {10, 20, 30}) {
    const auto [fitness, profile] = build_dss(Rational(3, 10), n);
    const double t = always_accept_stone_hitting_time(fitness, profile, 0.3);
    CHECK(t > 0.0);
    CHECK(t <= std::pow(alpha(0.3), n));
  }
}

TEST_CASE("convergence study approaches 1/2 for p = 1/2") {
  SearchOptions so;
  so.q_min = 0.05;
  so.q_max = 0.95;
  const auto report = convergence_study(Rational(1, 2), {6, 8, 10}, so);
  for (const auto& row : report.rows) {
    REQUIRE(row.ok);
    CHECK(std::abs(row.result.q_star - 0.5) <= 0.02);
  }
}

TEST_CASE("convergence study: deviation shrinks from smallest to largest n") {
  for (const auto& p : {Rational(1, 5), Rational(3, 10), Rational(7, 10), Rational(4, 5)}) {
    const auto report = convergence_study(p, {10, 30});
    REQUIRE(report.rows.size() == 2);
    REQUIRE(report.rows[0].ok);
    REQUIRE(report.rows[1].ok);
    const double target = to_double(p);
    CHECK(std::abs(report.rows[1].result.q_star - target) <=
          std::abs(report.rows[0].result.q_star - target));
  }
}

TEST_CASE("convergence study validation") {
  CHECK_THROWS_AS(convergence_study(Rational(0), {10, 20}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(Rational(1, 2), {20, 10}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(Rational(1, 2), {2, 10}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(Rational(1, 2), {}), std::invalid_argument);
}

TEST_CASE("runtime at the built rate stays under a fitted alpha^n log n envelope") {
  const Rational p(3, 10);
  const double a = alpha(0.3);
  double fitted = 0.0;
  for (int n : {10, 20, 30, 40}) {
    const auto [fitness, profile] = build_dss(p, n);
    const double e =
        expected_hitting_time(build_ea_chain(fitness, 0.3, Acceptance::kElitistGE),
                              binomial_half_start(n));
    fitted = std::max(fitted, e / (std::pow(a, n) * (1.0 + std::log(n))));
  }
  for (int n : {50, 60}) {
    const auto [fitness, profile] = build_dss(p, n);
    const double e =
        expected_hitting_time(build_ea_chain(fitness, 0.3, Acceptance::kElitistGE),
                              binomial_half_start(n));
    CHECK(e <= fitted * std::pow(a, n) * (1.0 + std::log(n)));
  }
}

TEST_CASE("off-rate runtimes grow relative to the built rate") {
  const Rational p(3, 10);
  for (double q : {0.15, 0.5}) {
    double prev_ratio = 0.0;
    for (int n : {10, 20}) {
      const auto [fitness, profile] = build_dss(p, n);
      const auto start = binomial_half_start(n);
      const double ep = expected_hitting_time(
          build_ea_chain(fitness, 0.3, Acceptance::kElitistGE), start);
      const double eq =
          expected_hitting_time(build_ea_chain(fitness, q, Acceptance::kElitistGE), start);
      CHECK(eq / ep > prev_ratio);
      prev_ratio = eq / ep;
    }
  }
}

TEST_CASE("analytic lemma suite passes on a coarse grid") {
  const auto checks = verify_analytic_lemmas(300);
  REQUIRE(checks.size() == 4);
  for (const auto& c : checks) CHECK(c.pass);
  CHECK(checks[0].worst_margin >= 0.0);
  CHECK(checks[3].worst_margin > 0.0);
  CHECK_THROWS_AS(verify_analytic_lemmas(50), std::invalid_argument);
}

}  // TEST_SUITE
