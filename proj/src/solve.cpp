#include "unilab/solve.hpp"

#include <cmath>
#include <stdexcept>

namespace unilab {

std::vector<Rational> solve_dense(const Matrix<Rational>& a, const std::vector<Rational>& b) {
  const std::size_t m = b.size();
  if (a.rows() != m || a.cols() != m) throw std::invalid_argument("solve: shape mismatch");

  // Clear denominators row by row; scaling a row by a positive integer
  // leaves the solution unchanged.
  Matrix<BigInt> w(m, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    BigInt common = boost::multiprecision::denominator(b[i]);
    for (std::size_t j = 0; j < m; ++j)
      common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(a(i, j)));
    for (std::size_t j = 0; j < m; ++j) {
      const Rational scaled = a(i, j) * common;
      w(i, j) = boost::multiprecision::numerator(scaled);
    }
    const Rational scaled_rhs = b[i] * common;
    w(i, m) = boost::multiprecision::numerator(scaled_rhs);
  }

  // Fraction-free elimination: every division below is exact.
  BigInt prev = 1;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t piv = k;
    while (piv < m && w(piv, k) == 0) ++piv;
    if (piv == m) throw singular_system_error("zero pivot column in rational solve");
    if (piv != k)
      for (std::size_t j = 0; j <= m; ++j) std::swap(w(k, j), w(piv, j));
    for (std::size_t r = k + 1; r < m; ++r) {
      for (std::size_t j = k + 1; j <= m; ++j)
        w(r, j) = (w(k, k) * w(r, j) - w(r, k) * w(k, j)) / prev;
      w(r, k) = 0;
    }
    prev = w(k, k);
  }

  std::vector<Rational> x(m);
  for (std::size_t ii = m; ii-- > 0;) {
    Rational acc = w(ii, m);
    for (std::size_t j = ii + 1; j < m; ++j) acc -= Rational(w(ii, j)) * x[j];
    x[ii] = acc / Rational(w(ii, ii));
  }
  return x;
}

std::vector<double> absorbing_hitting_times(const Matrix<double>& rows,
                                            const std::vector<char>& is_target) {
  const std::size_t states = rows.rows();
  if (rows.cols() != states || is_target.size() != states)
    throw std::invalid_argument("hitting solve: shape mismatch");

  std::vector<std::size_t> transient;
  for (std::size_t i = 0; i < states; ++i)
    if (!is_target[i]) transient.push_back(i);
  const std::size_t m = transient.size();

  std::vector<double> t(states, 0.0);
  if (m == 0) return t;

  // Working copies of the transient rows (full width) and the expected
  // one-visit time accumulated at each transient state.
  Matrix<double> p(m, states);
  std::vector<double> r(m, 1.0);
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t j = 0; j < states; ++j) p(e, j) = rows(transient[e], j);

  // Eliminate transient states from the back. The divisor is the row's
  // outflow summed directly, never formed as 1 - P(s,s).
  std::vector<double> divisor(m, 0.0);
  for (std::size_t e = m; e-- > 0;) {
    const std::size_t s = transient[e];
    double d = 0.0;
    for (std::size_t j = 0; j < states; ++j)
      if (j != s) d += p(e, j);
    if (d == 0.0) throw singular_system_error("state with no outflow: target unreachable");
    divisor[e] = d;
    for (std::size_t f = 0; f < e; ++f) {
      const double w = p(f, s) / d;
      if (w == 0.0) continue;
      r[f] += w * r[e];
      for (std::size_t j = 0; j < states; ++j) {
        if (j == s) continue;
        p(f, j) += w * p(e, j);
      }
      p(f, s) = 0.0;
    }
  }

  // Back substitution in elimination-reverse order; only positive terms.
  for (std::size_t e = 0; e < m; ++e) {
    double acc = r[e];
    for (std::size_t f = 0; f < e; ++f) acc += p(e, transient[f]) * t[transient[f]];
    t[transient[e]] = acc / divisor[e];
  }
  return t;
}

}  // namespace unilab
