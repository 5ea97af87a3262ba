#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <vector>

#include "unilab/chain.hpp"
#include "unilab/fitness.hpp"
#include "unilab/montecarlo.hpp"

using namespace unilab;

TEST_SUITE("montecarlo") {

TEST_CASE("identical inputs reproduce identical statistics") {
  const auto [fitness, profile] = build_dss(Rational(3, 10), 8);
  const auto a = estimate_runtime(fitness, 0.3, 500, 100000, 42);
  const auto b = estimate_runtime(fitness, 0.3, 500, 100000, 42);
  CHECK(a.mean_steps == b.mean_steps);
  CHECK(a.standard_error == b.standard_error);
  CHECK(a.hits == b.hits);
  const auto c = estimate_runtime(fitness, 0.3, 500, 100000, 43);
  CHECK(a.mean_steps != c.mean_steps);
}

TEST_CASE("single-bit needle: half the runs start on the optimum") {
  int zero_step = 0;
  const auto needle = build_needle(1);
  for (std::uint64_t r = 0; r < 2000; ++r) {
    const auto res = run_trajectory(needle, 0.5, 7, 1000, r);
    REQUIRE(res.hit);
    if (res.steps == 0) ++zero_step;
  }
  CHECK(zero_step > 2000 * 0.42);
  CHECK(zero_step < 2000 * 0.58);
}

TEST_CASE("onemax n=8 sample mean matches the exact chain value") {
  const auto onemax = build_onemax(8);
  const double exact = expected_hitting_time(
      build_ea_chain(onemax, 0.125, Acceptance::kElitistGE), binomial_half_start(8));
  const auto stats = estimate_runtime(onemax, 0.125, 10000, 1000000, 1234);
  REQUIRE(stats.se_valid);
  CHECK(std::abs(stats.mean_steps - exact) <= 4.0 * stats.standard_error);
}

TEST_CASE("dss(1/2, 10) sample mean matches the uniform-sampling value") {
  const auto [fitness, profile] = build_dss(Rational(1, 2), 10);
  const double exact = (1.0 - std::pow(2.0, -10)) * std::pow(2.0, 10);  // 1023
  const auto stats = estimate_runtime(fitness, 0.5, 10000, 1000000, 99);
  REQUIRE(stats.se_valid);
  CHECK(std::abs(stats.mean_steps - exact) <= 4.0 * stats.standard_error);
}

TEST_CASE("a single run reports no standard error") {
  const auto stats = estimate_runtime(build_onemax(4), 0.25, 1, 100000, 5);
  CHECK(stats.runs == 1);
  CHECK(!stats.se_valid);
  CHECK(stats.estimate_available);
}

TEST_CASE("censoring is surfaced and censored runs stay out of the mean") {
  const auto needle = build_needle(10);
  const auto stats = estimate_runtime(needle, 0.5, 300, 1, 11);
  CHECK(stats.hits + stats.censored == 300);
  CHECK(stats.censored > 0);
  if (stats.estimate_available) CHECK(stats.mean_steps <= 1.0);

  // With one step allowed from a uniform start, hitting dss(1/2, 20) is a
  // ~1e-5 event: all 40 runs censor under this seed.
  const auto [hard, hp] = build_dss(Rational(1, 2), 20);
  const auto censored = estimate_runtime(hard, 0.5, 40, 1, 2);
  CHECK(censored.hits == 0);
  CHECK(!censored.estimate_available);
  CHECK(std::isnan(censored.mean_steps));
}

TEST_CASE("input validation") {
  const auto onemax = build_onemax(3);
  CHECK_THROWS_AS(run_trajectory(onemax, 1.0, 1, 100), std::invalid_argument);
  CHECK_THROWS_AS(run_trajectory(onemax, 0.0, 1, 100), std::invalid_argument);
  CHECK_THROWS_AS(run_trajectory(onemax, 0.5, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_runtime(onemax, 0.5, 0, 100, 1), std::invalid_argument);
}

TEST_CASE("one mutation step from a fixed start matches the kernel row") {
  // Chi-square goodness of fit at significance 1e-3, mirroring the flip
  // procedure run_trajectory uses (same generator, same step keying).
  const std::uint64_t samples = 100000;
  for (const auto& [n, level] : std::vector<std::pair<int, int>>{{3, 1}, {7, 3}, {10, 4}}) {
    const double q = 0.3;
    const auto expected = transition_pmf(n, level, q);

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint64_t s = 0; s < samples; ++s) {
      StepRng rng(2024, s, 1);
      int ones = level;
      for (int b = 0; b < n; ++b) {
        const bool bit = b < level;
        if (rng.next_unit() < q) ones += bit ? -1 : 1;
      }
      ++counts[static_cast<std::size_t>(ones)];
    }

    // Merge bins whose expected count is below 5.
    double chi2 = 0.0;
    int bins = 0;
    double tail_obs = 0.0, tail_exp = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double e = expected[static_cast<std::size_t>(j)] * static_cast<double>(samples);
      const double o = static_cast<double>(counts[static_cast<std::size_t>(j)]);
      if (e < 5.0) {
        tail_obs += o;
        tail_exp += e;
        continue;
      }
      chi2 += (o - e) * (o - e) / e;
      ++bins;
    }
    if (tail_exp > 0.0) {
      chi2 += (tail_obs - tail_exp) * (tail_obs - tail_exp) / tail_exp;
      ++bins;
    }
    REQUIRE(bins >= 2);
    boost::math::chi_squared_distribution<double> dist(bins - 1);
    CHECK(chi2 < boost::math::quantile(dist, 1.0 - 1e-3));
  }
}

}  // TEST_SUITE
