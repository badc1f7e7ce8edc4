#ifndef STRATA_RATIONAL_HPP
#define STRATA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace strata {

using Integer = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator (the backend canonicalizes on every operation).
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& r) { return numerator(r); }
inline Integer rat_den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Prints "p" for integers and "p/q" otherwise.
inline std::string rat_to_string(const Rational& r) {
  if (is_integer(r)) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Parses "p" or "p/q" with optional leading '-'. Throws on malformed input.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

inline Rational rat_pow(const Rational& r, unsigned e) {
  Rational acc(1);
  Rational base = r;
  while (e) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1u;
  }
  return acc;
}

/// Exact comparison a^(1/m) <= b^(1/n) for nonnegative rationals,
/// via cross powers a^n <= b^m.
inline bool root_leq(const Rational& a, unsigned m, const Rational& b, unsigned n) {
  return rat_pow(a, n) <= rat_pow(b, m);
}

inline bool root_lt(const Rational& a, unsigned m, const Rational& b, unsigned n) {
  return rat_pow(a, n) < rat_pow(b, m);
}

}  // namespace strata

#endif  // STRATA_RATIONAL_HPP
