#include "unilab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unilab {

namespace {

void check_args(int n, int i) {
  if (n < 1) throw std::invalid_argument("kernel: n must be positive");
  if (i < 0 || i > n) throw std::invalid_argument("kernel: level out of range");
}

template <class T, class RowFn>
MutationKernel<T> build_mirrored(int n, const T& q, RowFn&& row_fn) {
  MutationKernel<T> k;
  k.n = n;
  k.q = q;
  k.rows = Matrix<T>(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    if (i <= n - i) {
      auto row = row_fn(i);
      for (int j = 0; j <= n; ++j)
        k.rows(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
            row[static_cast<std::size_t>(j)];
    } else {
      for (int j = 0; j <= n; ++j)
        k.rows(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
            k.rows(static_cast<std::size_t>(n - i), static_cast<std::size_t>(n - j));
    }
  }
  return k;
}

}  // namespace

std::vector<Rational> transition_pmf(int n, int i, const Rational& q) {
  check_args(n, i);
  if (!(q > 0 && q < 1)) throw std::invalid_argument("kernel: q must lie in (0, 1)");

  std::vector<Rational> qpow(static_cast<std::size_t>(n) + 1), cpow(static_cast<std::size_t>(n) + 1);
  qpow[0] = 1;
  cpow[0] = 1;
  const Rational comp = 1 - q;
  for (int t = 1; t <= n; ++t) {
    qpow[static_cast<std::size_t>(t)] = qpow[static_cast<std::size_t>(t - 1)] * q;
    cpow[static_cast<std::size_t>(t)] = cpow[static_cast<std::size_t>(t - 1)] * comp;
  }

  std::vector<Rational> row(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int j = 0; j <= n; ++j) {
    Rational sum = 0;
    const int a_lo = std::max(0, i - j);
    const int a_hi = std::min(i, n - j);
    for (int a = a_lo; a <= a_hi; ++a) {
      const int b = j - i + a;
      sum += Rational(binomial_coefficient(i, a) * binomial_coefficient(n - i, b)) *
             qpow[static_cast<std::size_t>(a + b)] * cpow[static_cast<std::size_t>(n - a - b)];
    }
    row[static_cast<std::size_t>(j)] = sum;
  }
  return row;
}

std::vector<double> transition_pmf(int n, int i, double q) {
  check_args(n, i);
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("kernel: q must lie in (0, 1)");

  std::vector<double> logfact(static_cast<std::size_t>(n) + 1, 0.0);
  for (int t = 2; t <= n; ++t)
    logfact[static_cast<std::size_t>(t)] = logfact[static_cast<std::size_t>(t - 1)] + std::log(t);
  auto lchoose = [&](int m, int k) {
    return logfact[static_cast<std::size_t>(m)] - logfact[static_cast<std::size_t>(k)] -
           logfact[static_cast<std::size_t>(m - k)];
  };
  const double lq = std::log(q);
  const double lc = std::log1p(-q);

  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> terms;
  for (int j = 0; j <= n; ++j) {
    terms.clear();
    const int a_lo = std::max(0, i - j);
    const int a_hi = std::min(i, n - j);
    double peak = -HUGE_VAL;
    for (int a = a_lo; a <= a_hi; ++a) {
      const int b = j - i + a;
      const double t = lchoose(i, a) + lchoose(n - i, b) + (a + b) * lq + (n - a - b) * lc;
      terms.push_back(t);
      peak = std::max(peak, t);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - peak);
    row[static_cast<std::size_t>(j)] = std::exp(peak + std::log(sum));
  }
  return row;
}

MutationKernel<Rational> build_kernel(int n, const Rational& q) {
  return build_mirrored<Rational>(n, q, [&](int i) { return transition_pmf(n, i, q); });
}

MutationKernel<double> build_kernel(int n, double q) {
  return build_mirrored<double>(n, q, [&](int i) { return transition_pmf(n, i, q); });
}

}  // namespace unilab
