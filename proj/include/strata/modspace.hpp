#ifndef STRATA_MODSPACE_HPP
#define STRATA_MODSPACE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "strata/rational_function.hpp"
#include "strata/scrambler.hpp"

namespace strata {

/// Dictionary from the three cusps of moduli space to scrambler vertex
/// names; the empty vertex is the implicit fourth target.
struct CuspLabelMap {
  std::string at_zero = "a";
  std::string at_one = "b";
  std::string at_infinity = "c";

  const std::string& operator[](Cusp c) const {
    switch (c) {
      case Cusp::Zero: return at_zero;
      case Cusp::One: return at_one;
      default: return at_infinity;
    }
  }
};

/// One Galois-conjugacy class of points of W in a cusp fiber of phi.
/// phi_mult is the local degree of phi there; rho_mult the local degree of
/// rho when the class maps to a cusp (target == nullopt means rho sends the
/// class off the cusp set and the pulled-back curve is trivial).
struct FiberPointClass {
  Cusp source;
  std::optional<Cusp> target;
  unsigned phi_mult = 1;
  unsigned rho_mult = 0;
  unsigned count = 1;
  std::optional<Polynomial> defining_factor;  // nullopt marks the point at infinity
};

namespace detail {

struct CuspFiber {
  std::vector<std::pair<Polynomial, unsigned>> factors;  // squarefree, multiplicity
  unsigned inf_multiplicity = 0;
};

inline CuspFiber analyze_fiber(const RationalFunction& f, Cusp c) {
  BinaryForm form = fiber_form(f, c);
  CuspFiber out;
  out.inf_multiplicity = form.inf_multiplicity;
  if (form.affine_part.degree() > 0) out.factors = squarefree_decompose(form.affine_part);
  return out;
}

}  // namespace detail

/// Classifies the cusp fibers of the correspondence (phi, rho): points are
/// identified by gcd of squarefree fiber factors, so conjugate irrational
/// cusps of W are handled exactly, and the point at infinity by degree
/// bookkeeping.
inline std::vector<FiberPointClass> cusp_fiber_table(const RationalFunction& phi,
                                                     const RationalFunction& rho) {
  if (phi.is_constant() || rho.is_constant()) throw ConstantFunctionError();
  constexpr std::array<Cusp, 3> kCusps = {Cusp::Zero, Cusp::One, Cusp::Infinity};

  std::array<detail::CuspFiber, 3> rho_fibers;
  for (std::size_t i = 0; i < 3; ++i) rho_fibers[i] = detail::analyze_fiber(rho, kCusps[i]);

  std::vector<FiberPointClass> out;
  for (Cusp t : kCusps) {
    detail::CuspFiber phi_fiber = detail::analyze_fiber(phi, t);
    for (const auto& [factor, i] : phi_fiber.factors) {
      Polynomial residual = factor;
      for (std::size_t ti = 0; ti < 3; ++ti) {
        for (const auto& [rho_factor, j] : rho_fibers[ti].factors) {
          Polynomial h = poly_gcd(factor, rho_factor);
          if (h.degree() > 0) {
            out.push_back({t, kCusps[ti], i, j, static_cast<unsigned>(h.degree()), h});
            residual = residual.exact_div(h);
          }
        }
      }
      if (residual.degree() > 0)
        out.push_back({t, std::nullopt, i, 0, static_cast<unsigned>(residual.degree()), residual});
    }
    if (phi_fiber.inf_multiplicity > 0) {
      std::optional<Cusp> target;
      unsigned j = 0;
      for (std::size_t ti = 0; ti < 3; ++ti) {
        if (rho_fibers[ti].inf_multiplicity > 0) {
          target = kCusps[ti];
          j = rho_fibers[ti].inf_multiplicity;
          break;
        }
      }
      out.push_back({t, target, phi_fiber.inf_multiplicity, j, 1, std::nullopt});
    }
  }
  return out;
}

/// Assembles the #P=4 strata scrambler from the correspondence: each fiber
/// class yields an edge from the vertex of its source cusp to the vertex of
/// its target cusp with 1x1 weight [rho_mult/phi_mult]; classes with no cusp
/// target go to the empty vertex with weight 0. Parallel edges with equal
/// weights are merged with counts accumulated.
inline Scrambler build_scrambler(const RationalFunction& phi, const RationalFunction& rho,
                                 const CuspLabelMap& labels = {}) {
  Scrambler s;
  s.add_vertex(labels.at_zero, 1);
  s.add_vertex(labels.at_one, 1);
  s.add_vertex(labels.at_infinity, 1);

  struct Pending {
    std::string src, dst;
    EdgeWeight weight;
    unsigned count;
  };
  std::vector<Pending> pending;
  for (const auto& cls : cusp_fiber_table(phi, rho)) {
    std::string src = labels[cls.source];
    std::string dst;
    EdgeWeight w;
    if (cls.target) {
      dst = labels[*cls.target];
      RatMatrix m(1, 1);
      m.at(0, 0) = Rational(cls.rho_mult, cls.phi_mult);
      w = EdgeWeight::make(std::move(m));
    } else {
      dst = Scrambler::kEmptyName;
      w = EdgeWeight::make_zero();
    }
    bool merged = false;
    for (auto& p : pending) {
      if (p.src == src && p.dst == dst && p.weight == w) {
        p.count += cls.count;
        merged = true;
        break;
      }
    }
    if (!merged) pending.push_back({std::move(src), std::move(dst), std::move(w), cls.count});
  }
  for (auto& p : pending) s.add_edge(p.src, p.dst, std::move(p.weight), p.count);
  return s;
}

}  // namespace strata

#endif  // STRATA_MODSPACE_HPP
