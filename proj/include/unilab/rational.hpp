#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace unilab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k) as an exact big integer; 0 outside 0 <= k <= n.
BigInt binomial_coefficient(int n, int k);

BigInt floor_rational(const Rational& x);
BigInt ceil_rational(const Rational& x);

double to_double(const Rational& x);

/// Canonical "a/b", or just "a" when the denominator is 1.
std::string to_fraction_string(const Rational& x);

/// base^exp for exp >= 0.
Rational rational_pow(const Rational& base, long exp);

/// A rate parsed from text. Decimal text ("0.3") parses to the exact
/// decimal fraction 3/10; fraction text ("3/10") to the exact quotient.
/// `approx` is the nearest double in both cases.
struct ParsedRate {
  Rational exact;
  double approx = 0.0;
  bool fraction_form = false;
  std::string text;
};

/// Parses a rate in (0, 1). Throws std::invalid_argument on malformed
/// text or a value outside the open interval.
ParsedRate parse_rate(const std::string& text);

}  // namespace unilab
