#include "unilab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace unilab {

BigInt binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;  // exact: product of i+1 consecutive integers is divisible by (i+1)!
  }
  return r;
}

BigInt floor_rational(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt ceil_rational(const Rational& x) { return -floor_rational(-x); }

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string to_fraction_string(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp < 0) throw std::invalid_argument("rational_pow: negative exponent");
  using boost::multiprecision::pow;
  BigInt num = pow(boost::multiprecision::numerator(base), static_cast<unsigned>(exp));
  BigInt den = pow(boost::multiprecision::denominator(base), static_cast<unsigned>(exp));
  return Rational(num, den);
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

ParsedRate parse_rate(const std::string& text) {
  ParsedRate out;
  out.text = text;
  auto fail = [&] { throw std::invalid_argument("invalid rate '" + text + "'"); };

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    BigInt d(den);
    if (d == 0) fail();
    out.exact = Rational(BigInt(num), d);
    out.fraction_form = true;
  } else {
    auto dot = text.find('.');
    std::string ipart = dot == std::string::npos ? text : text.substr(0, dot);
    std::string fpart = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (ipart.empty()) ipart = "0";
    if (!all_digits(ipart) || (!fpart.empty() && !all_digits(fpart))) fail();
    if (dot != std::string::npos && fpart.empty()) fail();
    BigInt scale = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) scale *= 10;
    out.exact = Rational(BigInt(ipart) * scale + (fpart.empty() ? BigInt(0) : BigInt(fpart)),
                         scale);
    out.fraction_form = false;
  }

  if (!(out.exact > 0 && out.exact < 1)) fail();
  out.approx = to_double(out.exact);
  return out;
}

}  // namespace unilab
