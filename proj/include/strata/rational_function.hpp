#ifndef STRATA_RATIONAL_FUNCTION_HPP
#define STRATA_RATIONAL_FUNCTION_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strata/polynomial.hpp"

namespace strata {

struct DivisionByZeroFunction : std::domain_error {
  DivisionByZeroFunction() : std::domain_error("denominator simplifies to zero") {}
};

struct ConstantFunctionError : std::domain_error {
  ConstantFunctionError() : std::domain_error("rational function is constant") {}
};

/// A self-map of the projective line, stored reduced with monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(Polynomial::zero()), den_(Polynomial::one()) {}

  RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw DivisionByZeroFunction();
    Polynomial g = poly_gcd(num, den);
    if (g.degree() > 0) {
      num = num.exact_div(g);
      den = den.exact_div(g);
    }
    Rational lead = den.leading();
    num_ = num * (Rational(1) / lead);
    den_ = den * (Rational(1) / lead);
  }

  static RationalFunction variable() {
    return RationalFunction(Polynomial::variable(), Polynomial::one());
  }
  static RationalFunction constant(const Rational& c) {
    return RationalFunction(Polynomial(c), Polynomial::one());
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  int degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_constant() const { return degree() <= 0; }
  bool is_zero() const { return num_.is_zero(); }

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }
  RationalFunction operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
  }
  RationalFunction operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DivisionByZeroFunction();
    return RationalFunction(num_ * o.den_, den_ * o.num_);
  }

  RationalFunction pow(unsigned e) const {
    RationalFunction acc = constant(Rational(1));
    RationalFunction base = *this;
    while (e) {
      if (e & 1u) acc = acc * base;
      base = base * base;
      e >>= 1u;
    }
    return acc;
  }

  /// Substitution f(g): both numerator and denominator are homogenized to a
  /// common degree so poles of g are handled without coordinate swaps.
  RationalFunction compose(const RationalFunction& g) const {
    int d = std::max(num_.degree(), den_.degree());
    if (d < 0) return *this;
    auto homog = [&](const Polynomial& p) {
      Polynomial acc = Polynomial::zero();
      for (int i = 0; i <= d; ++i) {
        Rational a = p.coeff(static_cast<std::size_t>(i));
        if (a == 0) continue;
        acc = acc + g.num_.pow(static_cast<unsigned>(i)) *
                        g.den_.pow(static_cast<unsigned>(d - i)) * a;
      }
      return acc;
    };
    return RationalFunction(homog(num_), homog(den_));
  }

  /// Canonical printed form; parse(serialize(f)) == f.
  std::string to_string(const std::string& var) const {
    if (den_ == Polynomial::one()) {
      if (num_.is_zero()) return "0";
      return num_.to_string(var);
    }
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

enum class Cusp { Zero, One, Infinity };

inline const char* cusp_name(Cusp c) {
  switch (c) {
    case Cusp::Zero: return "0";
    case Cusp::One: return "1";
    default: return "inf";
  }
}

/// A degree-d homogeneous binary form recorded as its affine part plus the
/// multiplicity of the root at infinity. affine_part is kept monic.
struct BinaryForm {
  Polynomial affine_part;
  unsigned inf_multiplicity = 0;
  unsigned total_degree = 0;
};

/// Fiber f^{-1}(cusp) as a binary form: roots of affine_part (with
/// multiplicity) are the affine points where f attains the cusp, with local
/// degree equal to the multiplicity; the degree deficit lands at infinity.
inline BinaryForm fiber_form(const RationalFunction& f, Cusp cusp) {
  if (f.is_constant()) throw ConstantFunctionError();
  Polynomial g;
  switch (cusp) {
    case Cusp::Zero: g = f.num(); break;
    case Cusp::Infinity: g = f.den(); break;
    case Cusp::One: g = f.num() - f.den(); break;
  }
  unsigned total = static_cast<unsigned>(f.degree());
  BinaryForm out;
  out.total_degree = total;
  out.affine_part = g.monic();
  out.inf_multiplicity = total - static_cast<unsigned>(std::max(g.degree(), 0));
  return out;
}

}  // namespace strata

#endif  // STRATA_RATIONAL_FUNCTION_HPP
