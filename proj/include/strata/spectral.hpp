#ifndef STRATA_SPECTRAL_HPP
#define STRATA_SPECTRAL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "strata/matrix.hpp"

namespace strata {

/// Exact rational enclosure of the Perron-Frobenius spectral radius.
struct SpectralEnclosure {
  Rational lo;
  Rational hi;
  Rational width_target;
};

namespace detail {

// Exact inverse of an integer matrix via fraction-free (Bareiss) forward
// elimination followed by rational back substitution. Returns nullopt when
// the matrix is singular.
inline std::optional<std::vector<std::vector<Rational>>> integer_inverse(
    std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  // Augment with the identity.
  for (std::size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, Integer(0));
    m[i][n + i] = 1;
  }
  Integer prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) std::swap(m[pivot], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < 2 * n; ++j)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = n; i-- > 0;) {
      Rational s(m[i][n + col]);
      for (std::size_t j = i + 1; j < n; ++j) s -= Rational(m[i][j]) * inv[j][col];
      inv[i][col] = s / Rational(m[i][i]);
    }
  }
  return inv;
}

inline void require_nonneg_square(const RatMatrix& a) {
  if (!a.is_square()) throw NotSquareError();
  if (!a.all_nonnegative()) throw NegativeEntryError();
}

}  // namespace detail

/// Exact decision of sigma(A) < theta for a nonnegative rational matrix.
/// With M := A/theta, sigma(M) < 1 holds iff I - M is a nonsingular M-matrix,
/// i.e. iff (I - M)^{-1} exists and is entrywise nonnegative.
inline bool rho_less_than(const RatMatrix& a, const Rational& theta) {
  detail::require_nonneg_square(a);
  if (theta <= 0) throw std::invalid_argument("theta must be positive");
  const std::size_t n = a.rows();
  if (n == 0) return true;
  // B := I - A/theta, cleared to integers by a common positive factor;
  // scaling does not change the sign pattern of the inverse.
  Integer l(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational b = (i == j ? Rational(1) : Rational(0)) - a.at(i, j) / theta;
      l = boost::multiprecision::lcm(l, rat_den(b));
    }
  std::vector<std::vector<Integer>> c(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational b = (i == j ? Rational(1) : Rational(0)) - a.at(i, j) / theta;
      c[i][j] = rat_num(b) * (l / rat_den(b));
    }
  auto inv = detail::integer_inverse(std::move(c));
  if (!inv) return false;
  for (const auto& row : *inv)
    for (const auto& x : row)
      if (x < 0) return false;
  return true;
}

/// Exact decision of sigma(A)^k < theta, via sigma(A^k) = sigma(A)^k.
inline bool rho_power_less_than(const RatMatrix& a, unsigned k, const Rational& theta) {
  detail::require_nonneg_square(a);
  if (k == 0) throw std::invalid_argument("k must be positive");
  return rho_less_than(a.power(k), theta);
}

/// Rational enclosure of sigma(A) by bisection on exact rho_less_than
/// queries, starting from the max-row-sum upper bound. A failed probe at a
/// threshold theta certifies sigma >= theta, so the initial probe at the row
/// sum pins sigma exactly when it is attained there.
inline SpectralEnclosure rho_enclosure(const RatMatrix& a, const Rational& width_target) {
  detail::require_nonneg_square(a);
  if (width_target <= 0) throw std::invalid_argument("width target must be positive");
  Rational hi = a.max_row_sum();
  if (hi == 0) return {Rational(0), Rational(0), width_target};
  if (!rho_less_than(a, hi)) return {hi, hi, width_target};
  Rational lo(0);
  while (hi - lo > width_target) {
    Rational mid = (lo + hi) / 2;
    if (rho_less_than(a, mid))
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi, width_target};
}

/// Exact nilpotency test: A^n == 0 for n the dimension.
inline bool is_nilpotent(const RatMatrix& a) {
  if (!a.is_square()) throw NotSquareError();
  if (a.rows() == 0) return true;
  return a.power(static_cast<unsigned>(a.rows())).is_zero();
}

}  // namespace strata

#endif  // STRATA_SPECTRAL_HPP
