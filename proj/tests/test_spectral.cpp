#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "strata/matrix.hpp"
#include "strata/spectral.hpp"

using namespace strata;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<int>> rows, int den = 1) {
  RatMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (int x : row) m.at(r, c++) = Rational(x, den);
    ++r;
  }
  return m;
}

// Floating-point spectral radius oracle: repeated squaring of (A + I)
// normalized by the max row sum; sigma(A + I) = sigma(A) + 1 for A >= 0
// keeps the iteration away from rotating eigenvalues.
double power_oracle(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = to_double(a.at(i, j)) + (i == j ? 1.0 : 0.0);
  double log_scale = 0.0;
  for (int step = 0; step < 48; ++step) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m[i][j];
      norm = std::max(norm, s);
    }
    if (norm == 0.0) return 0.0;
    std::vector<std::vector<double>> sq(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        double x = m[i][k] / norm;
        if (x == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) sq[i][j] += x * (m[k][j] / norm);
      }
    log_scale = 2.0 * (log_scale + std::log(norm));
    m = std::move(sq);
  }
  // After 48 squarings the normalized power's norm is sigma^(2^48)/scale.
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m[i][j];
    norm = std::max(norm, s);
  }
  double sigma_plus_one = std::exp((std::log(norm) + log_scale) / std::pow(2.0, 48));
  return sigma_plus_one - 1.0;
}

}  // namespace

TEST_CASE("rho_less_than on hand-checked matrices") {
  CHECK(rho_less_than(mat({{1}}, 2), Rational(1)));           // sigma = 1/2
  CHECK(!rho_less_than(mat({{1}}), Rational(1)));             // sigma = 1
  CHECK(rho_less_than(mat({{1}}), Rational(1) + Rational(1, 1024)));
  CHECK(!rho_less_than(mat({{2}}), Rational(1)));
  // Permutation matrix: sigma = 1 though every power stays bounded.
  RatMatrix perm = mat({{0, 1}, {1, 0}});
  CHECK(!rho_less_than(perm, Rational(1)));
  CHECK(rho_less_than(perm, Rational(1) + Rational(1, 1024)));
  // [[0, 2], [2, 0]] has sigma = 2.
  CHECK(!rho_less_than(mat({{0, 2}, {2, 0}}), Rational(2)));
  CHECK(rho_less_than(mat({{0, 2}, {2, 0}}), Rational(2) + Rational(1, 1024)));
  // Strictly upper triangular: nilpotent, sigma = 0.
  CHECK(rho_less_than(mat({{0, 5}, {0, 0}}), Rational(1, 1000000)));
  // 0x0 matrix (empty-vertex products): sigma = 0 < anything positive.
  CHECK(rho_less_than(RatMatrix(0, 0), Rational(1, 2)));
  CHECK_THROWS_AS(rho_less_than(mat({{1, 0}}), Rational(1)), NotSquareError);
  CHECK_THROWS_AS(rho_less_than(mat({{0}}), Rational(0)), std::invalid_argument);
  RatMatrix neg(1, 1);
  neg.at(0, 0) = -1;
  CHECK_THROWS_AS(rho_less_than(neg, Rational(1)), NegativeEntryError);
}

TEST_CASE("rho_less_than is monotone in theta and under entry growth") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> num(0, 12);
  std::uniform_int_distribution<int> den(1, 12);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(dim(rng));
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(num(rng), den(rng));
    Rational theta(num(rng) + 1, den(rng));
    bool at_theta = rho_less_than(a, theta);
    // Larger theta can only keep or gain the property.
    if (at_theta) CHECK(rho_less_than(a, theta * 2));
    // Scaling A by 1/2 halves sigma exactly.
    RatMatrix half(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) half.at(i, j) = a.at(i, j) / 2;
    CHECK(rho_less_than(half, theta / 2) == at_theta);
  }
}

TEST_CASE("rho_power_less_than agrees with powering the threshold") {
  RatMatrix a = mat({{1}}, 4);  // sigma = 1/4
  CHECK(rho_power_less_than(a, 4, Rational(1, 2)));  // (1/4)^4 = 1/256
  CHECK(!rho_power_less_than(mat({{1}}), 4, Rational(1, 2)));
  CHECK(!rho_power_less_than(mat({{1}}), 1, Rational(1)));
  // sigma(A)^k < theta iff sigma(A) < theta^(1/k): cross-check on 3/4, k=2.
  RatMatrix b = mat({{3}}, 4);
  CHECK(rho_power_less_than(b, 2, Rational(5, 8)));   // 9/16 < 5/8
  CHECK(!rho_power_less_than(b, 2, Rational(9, 16)));
  CHECK_THROWS_AS(rho_power_less_than(a, 0, Rational(1)), std::invalid_argument);
}

TEST_CASE("rho_enclosure pins exact values and respects the width") {
  // sigma attained at the row-sum bound: [1/4] returns a width-zero interval.
  SpectralEnclosure e = rho_enclosure(mat({{1}}, 4), Rational(1, 1024));
  CHECK(e.lo == Rational(1, 4));
  CHECK(e.hi == Rational(1, 4));
  // Zero matrix.
  SpectralEnclosure z = rho_enclosure(mat({{0, 0}, {0, 0}}), Rational(1, 1024));
  CHECK(z.lo == 0);
  CHECK(z.hi == 0);
  // Genuine bisection: [[1,1],[1,0]] has sigma = golden ratio.
  SpectralEnclosure g = rho_enclosure(mat({{1, 1}, {1, 0}}), Rational(1, 4096));
  CHECK(g.hi - g.lo <= Rational(1, 4096));
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(to_double(g.lo) <= phi);
  CHECK(phi <= to_double(g.hi));
  CHECK_THROWS_AS(rho_enclosure(mat({{1}}), Rational(0)), std::invalid_argument);
}

TEST_CASE("enclosure agrees with a floating-point power iteration oracle") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> num(0, 20);
  std::uniform_int_distribution<int> den(1, 20);
  const Rational width(1, 1 << 14);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = static_cast<std::size_t>(dim(rng));
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(num(rng), den(rng));
    SpectralEnclosure e = rho_enclosure(a, width);
    double oracle = power_oracle(a);
    CHECK(to_double(e.lo) - 1e-6 <= oracle);
    CHECK(oracle <= to_double(e.hi) + 1e-6);
  }
}

TEST_CASE("nilpotency detection") {
  CHECK(is_nilpotent(mat({{0, 1, 2}, {0, 0, 3}, {0, 0, 0}})));
  CHECK(!is_nilpotent(mat({{0, 1}, {1, 0}})));
  CHECK(is_nilpotent(RatMatrix(0, 0)));
  CHECK(!is_nilpotent(mat({{1}}, 1000)));
}
