#ifndef STRATA_EXPR_PARSER_HPP
#define STRATA_EXPR_PARSER_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "strata/rational_function.hpp"

namespace strata {

struct ExprSyntaxError : std::invalid_argument {
  std::size_t position;
  ExprSyntaxError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
};

namespace detail {

// Recursive descent over the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-'? base ('^' UINT)?
//   base   := RATIONAL | VAR | '(' expr ')'
// Multiplication is always explicit; exponents are nonnegative integer
// literals. Rational literals and the '/' operator coincide semantically, so
// the lexer only produces integer literals.
class ExprParser {
 public:
  ExprParser(const std::string& text, const std::string& var) : s_(text), var_(var) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ExprSyntaxError("unexpected trailing input", pos_);
    return r;
  }

 private:
  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RationalFunction d = factor();
        if (d.is_zero()) throw make_div_error(at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RationalFunction factor() {
    skip_ws();
    bool neg = accept('-');
    RationalFunction b = base();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ExprSyntaxError("expected nonnegative integer exponent", pos_);
      unsigned e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<unsigned>(s_[pos_] - '0');
        ++pos_;
      }
      b = b.pow(e);
    }
    return neg ? -b : b;
  }

  RationalFunction base() {
    skip_ws();
    if (pos_ >= s_.size()) throw ExprSyntaxError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        digits += s_[pos_];
        ++pos_;
      }
      return RationalFunction::constant(Rational(Integer(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string ident;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ident += s_[pos_];
        ++pos_;
      }
      if (ident != var_)
        throw ExprSyntaxError("unknown identifier '" + ident + "'", at);
      return RationalFunction::variable();
    }
    if (accept('(')) {
      RationalFunction r = expr();
      skip_ws();
      if (!accept(')')) throw ExprSyntaxError("expected ')'", pos_);
      return r;
    }
    throw ExprSyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  static DivisionByZeroFunction make_div_error(std::size_t) { return DivisionByZeroFunction(); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  const std::string& s_;
  const std::string& var_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression in the single declared variable into a reduced
/// rational function. All arithmetic is exact.
inline RationalFunction parse_rational_function(const std::string& text, const std::string& var) {
  return detail::ExprParser(text, var).parse();
}

}  // namespace strata

#endif  // STRATA_EXPR_PARSER_HPP
