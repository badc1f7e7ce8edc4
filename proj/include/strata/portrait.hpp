#ifndef STRATA_PORTRAIT_HPP
#define STRATA_PORTRAIT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/matrix.hpp"
#include "strata/spectral.hpp"

namespace strata {

struct PortraitSyntaxError : std::invalid_argument {
  std::size_t line;
  PortraitSyntaxError(const std::string& what, std::size_t line_no)
      : std::invalid_argument("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct RiemannHurwitzViolation : std::invalid_argument {
  explicit RiemannHurwitzViolation(const std::string& what) : std::invalid_argument(what) {}
};

struct NonFunctionalMap : std::invalid_argument {
  explicit NonFunctionalMap(const std::string& what) : std::invalid_argument(what) {}
};

/// Critical-orbit portrait of a topological polynomial: a total self-map of
/// a finite vertex set (including the fixed critical vertex "inf" of
/// maximal degree) weighted by local degrees.
class Portrait {
 public:
  static constexpr const char* kInfName = "inf";

  Portrait(unsigned degree, std::vector<std::string> names, std::vector<std::size_t> tau,
           std::vector<unsigned> local_degree)
      : degree_(degree), names_(std::move(names)), tau_(std::move(tau)),
        local_degree_(std::move(local_degree)) {
    if (degree_ < 2) throw std::invalid_argument("degree must be at least 2");
    for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
    if (index_.size() != names_.size()) throw std::invalid_argument("duplicate vertex name");
    if (tau_.size() != names_.size() || local_degree_.size() != names_.size())
      throw NonFunctionalMap("map or degree not defined on every vertex");
    auto it = index_.find(kInfName);
    if (it == index_.end()) throw std::invalid_argument("missing vertex 'inf'");
    inf_ = it->second;
    if (tau_[inf_] != inf_) throw NonFunctionalMap("'inf' must be fixed");
    if (local_degree_[inf_] != degree_)
      throw RiemannHurwitzViolation("'inf' must have the maximal local degree");
    Integer finite_sum(0);
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (local_degree_[i] == 0) throw std::invalid_argument("local degree must be positive");
      if (i != inf_) finite_sum += local_degree_[i] - 1;
    }
    // Iterated portraits under-approximate the critical set, so the
    // constructor only rejects excess branching; parse_portrait enforces the
    // exact polynomial count.
    if (finite_sum > Integer(degree_) - 1)
      throw RiemannHurwitzViolation("sum of finite (local degree - 1) exceeds degree - 1");
  }

  unsigned degree() const { return degree_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t inf_vertex() const { return inf_; }
  std::size_t tau(std::size_t v) const { return tau_[v]; }
  unsigned local_degree(std::size_t v) const { return local_degree_[v]; }
  bool is_critical(std::size_t v) const { return local_degree_[v] >= 2; }
  std::size_t index_of(const std::string& name) const { return index_.at(name); }

  bool operator==(const Portrait& o) const {
    return degree_ == o.degree_ && names_ == o.names_ && tau_ == o.tau_ &&
           local_degree_ == o.local_degree_;
  }

  /// Postcritical vertices: every non-critical vertex, plus the critical
  /// ones lying on a forward orbit of a critical value. This keeps the set
  /// stable under iteration, matching P(f^n) = P(f); only vertices whose
  /// sole role is being critical are excluded.
  std::vector<std::size_t> postcritical() const {
    std::vector<bool> on_orbit(size(), false);
    for (std::size_t v = 0; v < size(); ++v) {
      if (!is_critical(v)) continue;
      std::size_t w = tau_[v];
      while (!on_orbit[w]) {
        on_orbit[w] = true;
        w = tau_[w];
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < size(); ++v)
      if (!is_critical(v) || on_orbit[v]) out.push_back(v);
    return out;
  }

  /// Cycles of tau, each listed in traversal order starting from its
  /// least-index vertex.
  std::vector<std::vector<std::size_t>> cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(size(), false);
    for (std::size_t v = 0; v < size(); ++v) {
      std::size_t w = v;
      std::set<std::size_t> trail;
      while (!seen[w] && !trail.count(w)) {
        trail.insert(w);
        w = tau_[w];
      }
      if (seen[w]) continue;
      // w is periodic; walk its cycle once.
      std::vector<std::size_t> cyc;
      std::size_t u = w;
      do {
        cyc.push_back(u);
        u = tau_[u];
      } while (u != w);
      std::size_t least = std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
      std::rotate(cyc.begin(), cyc.begin() + static_cast<long>(least), cyc.end());
      for (std::size_t x : cyc) seen[x] = true;
      // Mark the tail as visited too so each cycle is reported once.
      for (std::size_t x : trail) seen[x] = true;
      out.push_back(std::move(cyc));
    }
    return out;
  }

  bool cycle_is_attractor(const std::vector<std::size_t>& cyc) const {
    for (std::size_t v : cyc)
      if (is_critical(v)) return true;
    return false;
  }

 private:
  unsigned degree_;
  std::vector<std::string> names_;
  std::vector<std::size_t> tau_;
  std::vector<unsigned> local_degree_;
  std::map<std::string, std::size_t> index_;
  std::size_t inf_ = 0;
};

/// Portrait of the n-th iterate: same vertices, tau^n, local degrees
/// multiplied along orbits. Critical points of the iterate outside the
/// vertex set are not synthesized.
inline Portrait iterate(const Portrait& p, unsigned n) {
  if (n == 0) throw std::invalid_argument("iterate count must be positive");
  std::vector<std::size_t> tau(p.size());
  std::vector<unsigned> deg(p.size());
  unsigned total = 1;
  for (unsigned i = 0; i < n; ++i) total *= p.degree();
  for (std::size_t v = 0; v < p.size(); ++v) {
    std::size_t w = v;
    unsigned d = 1;
    for (unsigned i = 0; i < n; ++i) {
      d *= p.local_degree(w);
      w = p.tau(w);
    }
    tau[v] = w;
    deg[v] = d;
  }
  return Portrait(total, p.names(), std::move(tau), std::move(deg));
}

/// Classification outcome for the completely-unobstructed test.
struct PortraitCase {
  enum class Kind { Case1, Case2, Case3, Case4, NotCovered };
  Kind kind = Kind::NotCovered;
  unsigned prime = 0;      // Case4
  unsigned exponent = 0;   // Case4: cycle length prime^exponent
  std::vector<std::string> enumeration;  // Case4: witnessing cyclic order
};

namespace detail {

inline std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned n) {
  if (n < 2) return std::nullopt;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      unsigned k = 0;
      unsigned m = n;
      while (m % p == 0) {
        m /= p;
        ++k;
      }
      if (m != 1) return std::nullopt;
      return std::make_pair(p, k);
    }
  }
  return std::make_pair(n, 1u);  // n itself prime
}

}  // namespace detail

/// First matching case, in order, of the four-way completely-unobstructed
/// portrait classification; the cases may overlap and any match suffices.
inline PortraitCase classify(const Portrait& p) {
  PortraitCase out;
  auto post = p.postcritical();
  std::vector<bool> is_post(p.size(), false);
  for (std::size_t v : post) is_post[v] = true;

  if (post.size() <= 3) {
    out.kind = PortraitCase::Kind::Case1;
    return out;
  }

  auto cycles = p.cycles();
  std::vector<std::vector<std::size_t>> non_attractors;
  for (auto& c : cycles)
    if (!p.cycle_is_attractor(c)) non_attractors.push_back(c);

  if (non_attractors.empty()) {
    out.kind = PortraitCase::Kind::Case2;
    return out;
  }
  if (non_attractors.size() == 1 && non_attractors[0].size() == 1) {
    out.kind = PortraitCase::Kind::Case3;
    return out;
  }
  if (non_attractors.size() == 1) {
    const auto& cyc = non_attractors[0];
    // All finite postcritical vertices must form exactly this cycle.
    std::vector<std::size_t> finite_post;
    for (std::size_t v : post)
      if (v != p.inf_vertex()) finite_post.push_back(v);
    std::set<std::size_t> cyc_set(cyc.begin(), cyc.end());
    bool matches = finite_post.size() == cyc.size();
    for (std::size_t v : finite_post)
      if (!cyc_set.count(v)) matches = false;
    if (matches) {
      auto pk = detail::prime_power(static_cast<unsigned>(cyc.size()));
      if (pk) {
        auto [prime, k] = *pk;
        unsigned stride = 1;
        for (unsigned i = 1; i < k; ++i) stride *= prime;  // prime^(k-1)
        std::set<std::size_t> critical_values;
        for (std::size_t v = 0; v < p.size(); ++v)
          if (p.is_critical(v)) critical_values.insert(p.tau(v));
        const std::size_t len = cyc.size();
        for (std::size_t r = 0; r < len; ++r) {
          bool ok = true;
          for (std::size_t i = 0; i < len && ok; ++i)
            if (critical_values.count(cyc[(r + i) % len]) && i % stride != 0) ok = false;
          if (ok) {
            out.kind = PortraitCase::Kind::Case4;
            out.prime = prime;
            out.exponent = k;
            for (std::size_t i = 0; i < len; ++i)
              out.enumeration.push_back(p.names()[cyc[(r + i) % len]]);
            return out;
          }
        }
      }
    }
  }
  out.kind = PortraitCase::Kind::NotCovered;
  return out;
}

/// Validation report for a candidate invariant-multicurve matrix of a
/// topological polynomial with the given postcritical count.
struct InvariantMatrixReport {
  bool entry_form_ok = true;  // every entry is 0 or 1/m
  std::vector<std::string> entry_violations;
  enum class SigmaClass { LessThanOne, PossiblyOne, GreaterThanOne };
  SigmaClass sigma = SigmaClass::LessThanOne;
  bool power_bound_ok = false;  // sigma^p_count < 1/2
};

inline InvariantMatrixReport check_invariant_matrix(const RatMatrix& m, unsigned p_count,
                                                    const Rational& epsilon = Rational(1, 1024)) {
  if (!m.is_square()) throw NotSquareError();
  InvariantMatrixReport report;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& x = m.at(r, c);
      if (x == 0) continue;
      if (rat_num(x) != 1) {
        report.entry_form_ok = false;
        report.entry_violations.push_back("entry (" + std::to_string(r) + "," +
                                          std::to_string(c) + ") = " + rat_to_string(x) +
                                          " is not 0 or a reciprocal of a positive integer");
      }
    }
  if (rho_less_than(m, Rational(1)))
    report.sigma = InvariantMatrixReport::SigmaClass::LessThanOne;
  else if (rho_less_than(m, Rational(1) + epsilon))
    report.sigma = InvariantMatrixReport::SigmaClass::PossiblyOne;
  else
    report.sigma = InvariantMatrixReport::SigmaClass::GreaterThanOne;
  report.power_bound_ok = rho_power_less_than(m, p_count, Rational(1, 2));
  return report;
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

/// Parses the line-oriented portrait format; "inf" is auto-added with the
/// maximal degree when omitted.
inline Portrait parse_portrait(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  unsigned degree = 0;
  std::vector<std::string> names;
  std::map<std::string, unsigned> degs;
  std::map<std::string, std::string> maps;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (!header_seen) {
      if (toks.size() != 4 || toks[0] != "portrait" || toks[1] != "v1" || toks[2] != "degree")
        throw PortraitSyntaxError("expected header 'portrait v1 degree D'", line_no);
      try {
        degree = static_cast<unsigned>(std::stoul(toks[3]));
      } catch (const std::exception&) {
        throw PortraitSyntaxError("bad degree '" + toks[3] + "'", line_no);
      }
      header_seen = true;
      continue;
    }
    if (toks[0] == "vertex") {
      if (toks.size() != 2 && !(toks.size() == 4 && toks[2] == "deg"))
        throw PortraitSyntaxError("expected 'vertex NAME [deg K]'", line_no);
      if (degs.count(toks[1])) throw PortraitSyntaxError("duplicate vertex '" + toks[1] + "'", line_no);
      unsigned d = 1;
      if (toks.size() == 4) {
        try {
          d = static_cast<unsigned>(std::stoul(toks[3]));
        } catch (const std::exception&) {
          throw PortraitSyntaxError("bad local degree '" + toks[3] + "'", line_no);
        }
      }
      names.push_back(toks[1]);
      degs[toks[1]] = d;
    } else if (toks[0] == "map") {
      if (toks.size() != 4 || toks[2] != "->")
        throw PortraitSyntaxError("expected 'map NAME -> NAME'", line_no);
      if (maps.count(toks[1]))
        throw NonFunctionalMap("vertex '" + toks[1] + "' mapped twice");
      maps[toks[1]] = toks[3];
    } else {
      throw PortraitSyntaxError("unknown directive '" + toks[0] + "'", line_no);
    }
  }
  if (!header_seen) throw PortraitSyntaxError("missing header", 1);
  if (!degs.count(Portrait::kInfName)) {
    names.push_back(Portrait::kInfName);
    degs[Portrait::kInfName] = degree;
    maps[Portrait::kInfName] = Portrait::kInfName;
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;
  std::vector<std::size_t> tau(names.size());
  std::vector<unsigned> local_degree(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    local_degree[i] = degs[names[i]];
    auto it = maps.find(names[i]);
    if (it == maps.end()) throw NonFunctionalMap("vertex '" + names[i] + "' has no image");
    auto target = index.find(it->second);
    if (target == index.end())
      throw NonFunctionalMap("vertex '" + names[i] + "' maps to unknown vertex '" + it->second + "'");
    tau[i] = target->second;
  }
  Integer finite_sum(0);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] != Portrait::kInfName) finite_sum += local_degree[i] - 1;
  if (finite_sum != Integer(degree) - 1)
    throw RiemannHurwitzViolation("sum of finite (local degree - 1) must equal degree - 1");
  return Portrait(degree, std::move(names), std::move(tau), std::move(local_degree));
}

inline std::string serialize_portrait(const Portrait& p) {
  std::string out = "portrait v1 degree " + std::to_string(p.degree()) + "\n";
  for (std::size_t v = 0; v < p.size(); ++v) {
    out += "vertex " + p.names()[v];
    if (p.local_degree(v) != 1) out += " deg " + std::to_string(p.local_degree(v));
    out += "\n";
  }
  for (std::size_t v = 0; v < p.size(); ++v)
    out += "map " + p.names()[v] + " -> " + p.names()[p.tau(v)] + "\n";
  return out;
}

}  // namespace strata

#endif  // STRATA_PORTRAIT_HPP
