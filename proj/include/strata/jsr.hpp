#ifndef STRATA_JSR_HPP
#define STRATA_JSR_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strata/scrambler.hpp"
#include "strata/spectral.hpp"

namespace strata {

struct Budget {
  unsigned max_cycle_len = 12;
  unsigned max_product_len = 16;
  std::size_t max_products = 1000000;
  Rational enclosure_width = Rational(1, 1024);
};

/// An exact value of the form base^(1/root).
struct RootBound {
  Rational base = Rational(0);
  unsigned root = 1;

  double approx() const { return std::pow(to_double(base), 1.0 / static_cast<double>(root)); }
};

/// root_leq on the represented values.
inline bool bound_leq(const RootBound& a, const RootBound& b) {
  return root_leq(a.base, a.root, b.base, b.root);
}
inline bool bound_lt(const RootBound& a, const RootBound& b) {
  return root_lt(a.base, a.root, b.base, b.root);
}

/// Exact lower/upper bounds on the joint spectral radius of the scrambler's
/// matrix family, with witnesses. Float hints are display-only.
struct JsrEstimate {
  RootBound lower;
  Cycle lower_witness;  // empty when no cycle exists
  RootBound upper;
  double float_hint_lower = 0.0;
  double float_hint_upper = 0.0;
};

struct Verdict {
  enum class Kind { Contracting, Obstructed, Undecided };
  Kind kind = Kind::Undecided;
  unsigned certificate_length = 0;  // Contracting: level of the norm certificate
  Path witness;                     // Obstructed: closed path with sigma >= 1
  unsigned level = 0;               // Obstructed: length of the witness
  JsrEstimate best;                 // Undecided: best bounds within budget
};

struct CycleSpectrum {
  Cycle cycle;
  bool sigma_lt_one;  // exact decision
  SpectralEnclosure enclosure;
};

/// Extends a path product w: R[src] -> R[dst] by zero to an endomorphism of
/// V, placing the block at the (dst, src) summand position.
inline RatMatrix embed_as_endomorphism(const Scrambler& s, const RatMatrix& w, std::size_t src,
                                       std::size_t dst) {
  std::vector<std::size_t> offset(s.vertices().size(), 0);
  for (std::size_t i = 1; i < s.vertices().size(); ++i)
    offset[i] = offset[i - 1] + s.vertex(i - 1).dim;
  RatMatrix out(s.total_dim(), s.total_dim());
  for (std::size_t r = 0; r < w.rows(); ++r)
    for (std::size_t c = 0; c < w.cols(); ++c) out.at(offset[dst] + r, offset[src] + c) = w.at(r, c);
  return out;
}

/// One entry per elementary cycle of length <= max_len: the exact
/// sigma(product) < 1 decision plus a rational enclosure.
inline std::vector<CycleSpectrum> cycle_spectra(const Scrambler& s, unsigned max_len,
                                                const Rational& width = Rational(1, 1024),
                                                std::size_t cap = 1u << 20) {
  std::vector<CycleSpectrum> out;
  for (auto& cycle : elementary_cycles(s, max_len, cap)) {
    EdgeWeight w = compose_along_path(s, cycle);
    RatMatrix m = w.zero ? RatMatrix(0, 0) : w.matrix;
    out.push_back({std::move(cycle), rho_less_than(m, Rational(1)), rho_enclosure(m, width)});
  }
  return out;
}

struct LevelRationality {
  bool all_unobstructed = true;
  Path witness;  // closed path of the requested length with sigma >= 1
};

namespace detail {

// Depth-first enumeration of composable products of nonzero edges. visit is
// called with the edge path and the exact product once depth n is reached.
template <typename Visit>
void enumerate_products(const Scrambler& s, unsigned n, std::size_t cap, std::size_t& counter,
                        Visit&& visit) {
  const auto& edges = s.edges();
  std::vector<std::vector<std::size_t>> out_edges(s.vertices().size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!edges[e].weight.zero) out_edges[edges[e].src].push_back(e);

  Path path;
  auto dfs = [&](auto&& self, std::size_t v, const RatMatrix& acc, unsigned depth) -> bool {
    if (depth == n) {
      if (++counter > cap) throw BudgetExceededError("product enumeration exceeds budget");
      return visit(path, acc);
    }
    for (std::size_t e : out_edges[v]) {
      path.push_back(e);
      bool keep_going =
          depth == 0 ? self(self, edges[e].dst, edges[e].weight.matrix, 1u)
                     : self(self, edges[e].dst, edges[e].weight.matrix * acc, depth + 1);
      path.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };
  for (std::size_t v = 0; v < s.vertices().size(); ++v) dfs(dfs, v, RatMatrix(0, 0), 0u);
}

// Max l-infinity norm over all composable nonzero products of length n;
// zero when none exists.
inline Rational level_max_norm(const Scrambler& s, unsigned n, std::size_t cap,
                               std::size_t& counter) {
  Rational best(0);
  enumerate_products(s, n, cap, counter, [&](const Path&, const RatMatrix& m) {
    Rational norm = m.max_row_sum();
    if (norm > best) best = norm;
    return true;
  });
  return best;
}

}  // namespace detail

/// Enumerates all closed edge-paths of length exactly n (repetitions of
/// shorter cycles included) and reports a witness whose product has
/// sigma >= 1, if any. Enumeration is exhaustive or throws BudgetExceeded.
inline LevelRationality rationality_by_level(const Scrambler& s, unsigned n,
                                             std::size_t max_products = 1000000) {
  if (n == 0) throw std::invalid_argument("level must be positive");
  LevelRationality result;
  std::size_t counter = 0;
  detail::enumerate_products(s, n, max_products, counter, [&](const Path& path, const RatMatrix& m) {
    if (s.edge(path.front()).src != s.edge(path.back()).dst) return true;  // not closed
    if (!rho_less_than(m, Rational(1))) {
      result.all_unobstructed = false;
      result.witness = path;
      return false;
    }
    return true;
  });
  return result;
}

/// Lower bound sigma(w)^(1/n) from elementary cycle products, upper bound
/// max ||w||^(1/n) over all length-n products; both exact rationals under
/// the root.
inline JsrEstimate jsr_bounds(const Scrambler& s, const Budget& budget = {}) {
  JsrEstimate est;
  est.lower = RootBound{Rational(0), 1};
  bool have_lower = false;
  for (auto& cs : cycle_spectra(s, budget.max_cycle_len, budget.enclosure_width,
                                budget.max_products)) {
    RootBound cand{cs.enclosure.lo, static_cast<unsigned>(cs.cycle.size())};
    if (!have_lower || bound_lt(est.lower, cand)) {
      est.lower = cand;
      est.lower_witness = cs.cycle;
      have_lower = true;
    }
  }
  bool have_upper = false;
  std::size_t counter = 0;
  for (unsigned n = 1; n <= budget.max_product_len; ++n) {
    Rational norm = detail::level_max_norm(s, n, budget.max_products, counter);
    RootBound cand{norm, n};
    if (!have_upper || bound_lt(cand, est.upper)) {
      est.upper = cand;
      have_upper = true;
    }
    if (norm == 0) break;  // all longer products vanish as well
  }
  if (!have_upper) est.upper = RootBound{Rational(0), 1};
  est.float_hint_lower = est.lower.approx();
  est.float_hint_upper = est.upper.approx();
  return est;
}

/// Three-valued contraction verdict. Obstructed when some elementary cycle
/// product has sigma >= 1 (exact); else Contracting(n) for the least n whose
/// level-n max norm certifies contraction; else Undecided with best bounds.
/// The certificate threshold is max norm < 1/2 at a single level: it implies
/// the max norm stays below 1/2 at every multiple of n by submultiplicativity
/// and hence bounds the joint spectral radius below (1/2)^(1/n) < 1.
inline Verdict decide_contraction(const Scrambler& s, const Budget& budget = {}) {
  Verdict v;
  for (auto& cycle : elementary_cycles(s, budget.max_cycle_len, budget.max_products)) {
    EdgeWeight w = compose_along_path(s, cycle);
    RatMatrix m = w.zero ? RatMatrix(0, 0) : w.matrix;
    if (!rho_less_than(m, Rational(1))) {
      v.kind = Verdict::Kind::Obstructed;
      v.witness = cycle;
      v.level = static_cast<unsigned>(cycle.size());
      return v;
    }
  }
  std::size_t counter = 0;
  for (unsigned n = 1; n <= budget.max_product_len; ++n) {
    Rational norm = detail::level_max_norm(s, n, budget.max_products, counter);
    if (norm < Rational(1, 2)) {
      v.kind = Verdict::Kind::Contracting;
      v.certificate_length = n;
      return v;
    }
  }
  v.kind = Verdict::Kind::Undecided;
  v.best = jsr_bounds(s, budget);
  return v;
}

}  // namespace strata

#endif  // STRATA_JSR_HPP
