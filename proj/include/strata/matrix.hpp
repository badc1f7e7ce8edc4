#ifndef STRATA_MATRIX_HPP
#define STRATA_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

struct NotSquareError : std::invalid_argument {
  NotSquareError() : std::invalid_argument("matrix is not square") {}
};

struct NegativeEntryError : std::invalid_argument {
  NegativeEntryError() : std::invalid_argument("matrix entry is negative") {}
};

/// Dense matrix of rationals. Rows index the target space, columns the
/// source space, acting on column vectors.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  bool is_square() const { return rows_ == cols_; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  bool all_nonnegative() const {
    for (const auto& x : data_)
      if (x < 0) return false;
    return true;
  }

  bool has_zero_row() const {
    for (std::size_t r = 0; r < rows_; ++r) {
      bool all_zero = true;
      for (std::size_t c = 0; c < cols_ && all_zero; ++c)
        if (at(r, c) != 0) all_zero = false;
      if (all_zero) return true;
    }
    return false;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    RatMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
      }
    return out;
  }

  RatMatrix operator*(const Rational& s) const {
    RatMatrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  RatMatrix power(unsigned e) const {
    if (!is_square()) throw NotSquareError();
    RatMatrix acc = identity(rows_);
    RatMatrix base = *this;
    while (e) {
      if (e & 1u) acc = acc * base;
      base = base * base;
      e >>= 1u;
    }
    return acc;
  }

  /// l-infinity induced operator norm: maximum absolute row sum.
  Rational max_row_sum() const {
    Rational best(0);
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational s(0);
      for (std::size_t c = 0; c < cols_; ++c) s += abs(at(r, c));
      if (s > best) best = s;
    }
    return best;
  }

  /// Bracket notation with ';'-separated rows, e.g. "[ 1 0 ; 0 1/2 ]".
  std::string to_string() const {
    std::string out = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r > 0) out += " ;";
      for (std::size_t c = 0; c < cols_; ++c) out += " " + rat_to_string(at(r, c));
    }
    out += " ]";
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace strata

#endif  // STRATA_MATRIX_HPP
