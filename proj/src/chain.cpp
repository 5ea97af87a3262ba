#include "unilab/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "unilab/solve.hpp"

namespace unilab {

namespace {

template <class T>
EAChain<T> assemble(const UnitationFitness& fitness, MutationKernel<T> kernel, Acceptance mode,
                    bool absorbing) {
  validate_fitness(fitness);
  if (mode == Acceptance::kElitistGE && !absorbing)
    throw std::invalid_argument("elitist chain is absorbing at the optimum by construction");

  const int n = fitness.n;
  EAChain<T> chain;
  chain.fitness = fitness;
  chain.mode = mode;
  chain.absorbing = absorbing;
  chain.optimum = fitness.optimum_level;
  chain.n = n;
  chain.rows = Matrix<T>(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1, T(0));

  for (int i = 0; i <= n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    if (absorbing && i == chain.optimum) {
      chain.rows(si, si) = T(1);
      continue;
    }
    if (mode == Acceptance::kAlwaysAccept) {
      for (int j = 0; j <= n; ++j)
        chain.rows(si, static_cast<std::size_t>(j)) =
            kernel.rows(si, static_cast<std::size_t>(j));
      continue;
    }
    // Elitist: rejected offspring leave the parent in place.
    T stay = kernel.rows(si, si);
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      const auto sj = static_cast<std::size_t>(j);
      if (fitness.at(j) >= fitness.at(i))
        chain.rows(si, sj) = kernel.rows(si, sj);
      else
        stay += kernel.rows(si, sj);
    }
    chain.rows(si, si) = stay;
  }
  chain.kernel = std::move(kernel);
  return chain;
}

template <class T>
void check_targets(const EAChain<T>& chain, const std::vector<int>& targets) {
  if (targets.empty()) throw std::invalid_argument("hitting_times: empty target set");
  for (int t : targets)
    if (t < 0 || t > chain.n) throw std::invalid_argument("hitting_times: target out of range");
}

template <class T>
std::vector<char> target_mask(int n, const std::vector<int>& targets) {
  std::vector<char> mask(static_cast<std::size_t>(n) + 1, 0);
  for (int t : targets) mask[static_cast<std::size_t>(t)] = 1;
  return mask;
}

template <class T>
T dot_start(const EAChain<T>& chain, const StartDistribution<T>& start,
            const std::vector<T>& times) {
  if (start.weights.size() != static_cast<std::size_t>(chain.n) + 1)
    throw std::invalid_argument("start distribution has wrong length");
  T acc(0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (start.weights[i] == T(0)) continue;  // keeps 0 * inf out of float sums
    acc += start.weights[i] * times[i];
  }
  return acc;
}

}  // namespace

StartDistribution<Rational> binomial_half_start_exact(int n) {
  if (n < 1) throw std::invalid_argument("start: n must be positive");
  StartDistribution<Rational> s;
  s.weights.resize(static_cast<std::size_t>(n) + 1);
  const Rational scale = rational_pow(Rational(1, 2), n);
  for (int i = 0; i <= n; ++i)
    s.weights[static_cast<std::size_t>(i)] = Rational(binomial_coefficient(n, i)) * scale;
  return s;
}

StartDistribution<double> binomial_half_start(int n) {
  auto exact = binomial_half_start_exact(n);
  StartDistribution<double> s;
  s.weights.resize(exact.weights.size());
  for (std::size_t i = 0; i < exact.weights.size(); ++i)
    s.weights[i] = to_double(exact.weights[i]);
  return s;
}

EAChain<Rational> build_ea_chain(const UnitationFitness& fitness, const Rational& q,
                                 Acceptance mode, bool absorbing) {
  return assemble<Rational>(fitness, build_kernel(fitness.n, q), mode, absorbing);
}

EAChain<double> build_ea_chain(const UnitationFitness& fitness, double q, Acceptance mode,
                               bool absorbing) {
  return assemble<double>(fitness, build_kernel(fitness.n, q), mode, absorbing);
}

std::vector<Rational> hitting_times(const EAChain<Rational>& chain,
                                    const std::vector<int>& targets) {
  check_targets(chain, targets);
  const auto mask = target_mask<Rational>(chain.n, targets);

  std::vector<int> transient;
  for (int i = 0; i <= chain.n; ++i)
    if (!mask[static_cast<std::size_t>(i)]) transient.push_back(i);

  std::vector<Rational> times(static_cast<std::size_t>(chain.n) + 1, Rational(0));
  if (transient.empty()) return times;

  const std::size_t m = transient.size();
  Matrix<Rational> a(m, m);
  std::vector<Rational> b(m, Rational(1));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      const auto i = static_cast<std::size_t>(transient[r]);
      const auto j = static_cast<std::size_t>(transient[c]);
      a(r, c) = (r == c ? Rational(1) : Rational(0)) - chain.rows(i, j);
    }
  const auto x = solve_dense(a, b);
  for (std::size_t r = 0; r < m; ++r) times[static_cast<std::size_t>(transient[r])] = x[r];
  return times;
}

std::vector<double> hitting_times(const EAChain<double>& chain, const std::vector<int>& targets) {
  check_targets(chain, targets);
  return absorbing_hitting_times(chain.rows, target_mask<double>(chain.n, targets));
}

Rational expected_hitting_time(const EAChain<Rational>& chain,
                               const StartDistribution<Rational>& start) {
  return dot_start(chain, start, hitting_times(chain, {chain.optimum}));
}

double expected_hitting_time(const EAChain<double>& chain,
                             const StartDistribution<double>& start) {
  return dot_start(chain, start, hitting_times(chain, {chain.optimum}));
}

Rational one_step_optimum_prob(const EAChain<Rational>& chain, int level) {
  if (level < 0 || level > chain.n) throw std::invalid_argument("level out of range");
  return rational_pow(chain.kernel.q, chain.n - level) *
         rational_pow(1 - chain.kernel.q, level);
}

double one_step_optimum_prob(const EAChain<double>& chain, int level) {
  if (level < 0 || level > chain.n) throw std::invalid_argument("level out of range");
  return std::pow(chain.kernel.q, chain.n - level) * std::pow(1.0 - chain.kernel.q, level);
}

}  // namespace unilab
