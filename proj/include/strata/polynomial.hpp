#ifndef STRATA_POLYNOMIAL_HPP
#define STRATA_POLYNOMIAL_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

struct ZeroPolynomialError : std::invalid_argument {
  ZeroPolynomialError() : std::invalid_argument("zero polynomial") {}
};

/// Dense univariate polynomial over the rationals, coefficients stored
/// lowest degree first. The zero polynomial has an empty coefficient list.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
  explicit Polynomial(const Rational& constant) {
    if (constant != 0) c_.push_back(constant);
  }

  static Polynomial variable() {
    return Polynomial(std::vector<Rational>{Rational(0), Rational(1)});
  }
  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return Polynomial(Rational(1)); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }
  bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

  Polynomial operator-() const {
    std::vector<Rational> r(c_);
    for (auto& x : r) x = -x;
    return Polynomial(std::move(r));
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(r));
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(r));
  }

  Polynomial operator*(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& x : r) x *= s;
    return Polynomial(std::move(r));
  }

  /// Euclidean division over Q; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem(c_);
    std::vector<Rational> quo;
    int dd = d.degree();
    int rd = static_cast<int>(rem.size()) - 1;
    if (rd >= dd) quo.assign(rd - dd + 1, Rational(0));
    while (rd >= dd) {
      while (rd >= 0 && rem[rd] == 0) --rd;
      if (rd < dd) break;
      Rational f = rem[rd] / d.leading();
      quo[rd - dd] = f;
      for (int i = 0; i <= dd; ++i) rem[rd - dd + i] -= f * d.c_[i];
      --rd;
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  /// Exact quotient; throws if the division leaves a remainder.
  Polynomial exact_div(const Polynomial& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(i);
    return Polynomial(std::move(r));
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial monic() const {
    if (is_zero()) return Polynomial();
    return *this * (Rational(1) / leading());
  }

  Polynomial pow(unsigned e) const {
    Polynomial acc = one();
    Polynomial base = *this;
    while (e) {
      if (e & 1u) acc = acc * base;
      base = base * base;
      e >>= 1u;
    }
    return acc;
  }

  /// Renders with explicit '*' and '^', highest degree first, e.g.
  /// "3*t^2 - 2*t + 1/4". Conforms to the expression grammar.
  std::string to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      Rational a = c_[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      bool neg = a < 0;
      Rational mag = neg ? Rational(-a) : a;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      bool unit = (mag == 1) && i > 0;
      if (!unit) out += rat_to_string(mag);
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

namespace detail {

// Integer polynomial helpers for the primitive pseudo-remainder sequence.
using IPoly = std::vector<Integer>;

inline void itrim(IPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Integer icontent(const IPoly& p) {
  Integer g(0);
  for (const auto& a : p) g = boost::multiprecision::gcd(g, a);
  return g;
}

inline void iprimitive(IPoly& p) {
  Integer g = icontent(p);
  if (g == 0) return;
  for (auto& a : p) a /= g;
  if (!p.empty() && p.back() < 0)
    for (auto& a : p) a = -a;
}

// Pseudo-remainder of lc(d)^(deg p - deg d + 1) * p by d.
inline IPoly iprem(IPoly p, const IPoly& d) {
  const Integer lc = d.back();
  int dd = static_cast<int>(d.size()) - 1;
  while (static_cast<int>(p.size()) - 1 >= dd) {
    Integer top = p.back();
    int shift = static_cast<int>(p.size()) - 1 - dd;
    for (auto& a : p) a *= lc;
    for (int i = 0; i <= dd; ++i) p[static_cast<std::size_t>(shift + i)] -= top * d[static_cast<std::size_t>(i)];
    itrim(p);
    if (p.empty()) break;
  }
  return p;
}

inline IPoly clear_denominators(const Polynomial& p) {
  Integer l(1);
  for (const auto& a : p.coeffs()) l = boost::multiprecision::lcm(l, rat_den(a));
  IPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) out.push_back(rat_num(a) * (l / rat_den(a)));
  return out;
}

}  // namespace detail

/// Monic gcd over Q via a primitive pseudo-remainder sequence over the
/// integers; gcd(p, 0) = monic(p), gcd(0, 0) = 0.
inline Polynomial poly_gcd(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  detail::IPoly a = detail::clear_denominators(p);
  detail::IPoly b = detail::clear_denominators(q);
  detail::iprimitive(a);
  detail::iprimitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    detail::IPoly r = detail::iprem(a, b);
    detail::iprimitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  std::vector<Rational> out;
  out.reserve(a.size());
  for (const auto& x : a) out.emplace_back(x);
  return Polynomial(std::move(out)).monic();
}

/// Yun's squarefree decomposition: returns (factor, multiplicity) pairs with
/// monic pairwise-coprime squarefree factors and strictly increasing
/// multiplicities; the constant content is dropped.
inline std::vector<std::pair<Polynomial, unsigned>> squarefree_decompose(const Polynomial& p) {
  if (p.is_zero()) throw ZeroPolynomialError();
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (p.degree() < 1) return out;
  Polynomial q = p.monic();
  Polynomial dq = q.derivative();
  Polynomial a0 = poly_gcd(q, dq);
  Polynomial b = q.exact_div(a0);
  Polynomial c = dq.exact_div(a0);
  Polynomial d = c - b.derivative();
  unsigned mult = 1;
  while (b.degree() > 0) {
    Polynomial ai = poly_gcd(b, d);
    if (ai.degree() > 0) out.emplace_back(ai, mult);
    b = b.exact_div(ai);
    c = d.exact_div(ai);
    d = c - b.derivative();
    ++mult;
  }
  return out;
}

}  // namespace strata

#endif  // STRATA_POLYNOMIAL_HPP
