#pragma once

#include <vector>

#include "unilab/fitness.hpp"
#include "unilab/kernel.hpp"
#include "unilab/rational.hpp"
#include "unilab/util.hpp"

namespace unilab {

enum class Acceptance {
  kElitistGE,     // keep the offspring iff fitness(offspring) >= fitness(parent)
  kAlwaysAccept,  // every offspring replaces the parent
};

/// The (1+1) EA as a Markov chain over unitation states 0..n. In elitist
/// mode the mass of rejected offspring folds into the diagonal and the
/// optimum row is the unit vector on itself. In always-accept mode rows
/// equal the kernel; the optimum row is absorbing unless the chain is
/// built with absorbing = false.
template <class T>
struct EAChain {
  UnitationFitness fitness;
  MutationKernel<T> kernel;
  Acceptance mode = Acceptance::kElitistGE;
  bool absorbing = true;
  Matrix<T> rows;
  int optimum = 0;
  int n = 0;
};

/// Start weights over unitation levels 0..n.
template <class T>
struct StartDistribution {
  std::vector<T> weights;
};

/// Unitation law of a uniform random bitstring: C(n,i) / 2^n.
StartDistribution<Rational> binomial_half_start_exact(int n);
StartDistribution<double> binomial_half_start(int n);

template <class T>
StartDistribution<T> point_mass_start(int n, int level) {
  if (level < 0 || level > n) throw std::invalid_argument("start: level out of range");
  StartDistribution<T> s;
  s.weights.assign(static_cast<std::size_t>(n) + 1, T(0));
  s.weights[static_cast<std::size_t>(level)] = T(1);
  return s;
}

EAChain<Rational> build_ea_chain(const UnitationFitness& fitness, const Rational& q,
                                 Acceptance mode, bool absorbing = true);
EAChain<double> build_ea_chain(const UnitationFitness& fitness, double q, Acceptance mode,
                               bool absorbing = true);

/// Expected steps to first reach any state in `targets`, one entry per
/// state (0 on the targets themselves), by solving (I - Q) t = 1 over the
/// complement. The float backend reports overflow as +infinity entries.
std::vector<Rational> hitting_times(const EAChain<Rational>& chain,
                                    const std::vector<int>& targets);
std::vector<double> hitting_times(const EAChain<double>& chain, const std::vector<int>& targets);

/// E[T] under the free-initialization convention: T counts
/// offspring-generation steps after the start state is drawn, so T = 0
/// when the start is already optimal.
Rational expected_hitting_time(const EAChain<Rational>& chain,
                               const StartDistribution<Rational>& start);
double expected_hitting_time(const EAChain<double>& chain, const StartDistribution<double>& start);

/// q^(n-level) (1-q)^level: the probability that one mutation of a parent
/// at `level` produces the all-ones string.
Rational one_step_optimum_prob(const EAChain<Rational>& chain, int level);
double one_step_optimum_prob(const EAChain<double>& chain, int level);

}  // namespace unilab
