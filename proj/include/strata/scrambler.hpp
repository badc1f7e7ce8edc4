#ifndef STRATA_SCRAMBLER_HPP
#define STRATA_SCRAMBLER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/matrix.hpp"

namespace strata {

struct ScramblerSyntaxError : std::invalid_argument {
  std::size_t line;
  ScramblerSyntaxError(const std::string& what, std::size_t line_no)
      : std::invalid_argument("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct DimensionMismatchError : std::invalid_argument {
  explicit DimensionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

struct UnknownEdgeError : std::out_of_range {
  UnknownEdgeError() : std::out_of_range("edge index out of range") {}
};

struct BudgetExceededError : std::runtime_error {
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

/// Edge weight: either a nonnegative rational matrix (rows = dim of target,
/// cols = dim of source) or the symbolic Zero weight carried by edges into
/// the empty vertex.
struct EdgeWeight {
  bool zero = true;
  RatMatrix matrix;

  static EdgeWeight make_zero() { return EdgeWeight{}; }
  static EdgeWeight make(RatMatrix m) { return EdgeWeight{false, std::move(m)}; }

  bool operator==(const EdgeWeight& o) const {
    if (zero != o.zero) return false;
    return zero || matrix == o.matrix;
  }
};

struct Vertex {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> curve_names;  // optional ordered basis labels
};

struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  EdgeWeight weight;
  unsigned count = 1;  // builder census metadata; ignored by analyses
};

/// An edge path through a scrambler; a cycle additionally closes up.
using Path = std::vector<std::size_t>;
using Cycle = std::vector<std::size_t>;

struct Diagnostic {
  enum class Kind { ZeroRow, DuplicateParallelWeight, ZeroWeightOutsideEmpty, MatrixIntoEmpty };
  Kind kind;
  std::string message;
};

/// Matrix-weighted directed multigraph over multicurve-orbit vertices plus
/// the distinguished empty vertex. Immutable once built; all analyses are
/// read-only.
class Scrambler {
 public:
  static constexpr const char* kEmptyName = "empty";

  Scrambler() { add_vertex(kEmptyName, 0); }

  std::size_t add_vertex(const std::string& name, std::size_t dim,
                         std::vector<std::string> curve_names = {}) {
    if (name_index_.count(name))
      throw std::invalid_argument("duplicate vertex name '" + name + "'");
    if (name == kEmptyName && dim != 0)
      throw DimensionMismatchError("vertex 'empty' must have dim 0");
    if (!curve_names.empty() && curve_names.size() != dim)
      throw DimensionMismatchError("curve label count differs from dim for '" + name + "'");
    vertices_.push_back(Vertex{name, dim, std::move(curve_names)});
    name_index_[name] = vertices_.size() - 1;
    return vertices_.size() - 1;
  }

  std::size_t add_edge(const std::string& src, const std::string& dst, EdgeWeight w,
                       unsigned count = 1) {
    std::size_t s = vertex_index(src);
    std::size_t d = vertex_index(dst);
    if (!w.zero) {
      if (!w.matrix.all_nonnegative()) throw NegativeEntryError();
      if (w.matrix.rows() != vertices_[d].dim || w.matrix.cols() != vertices_[s].dim)
        throw DimensionMismatchError("edge " + src + " -> " + dst + ": matrix is " +
                                     std::to_string(w.matrix.rows()) + "x" +
                                     std::to_string(w.matrix.cols()) + ", expected " +
                                     std::to_string(vertices_[d].dim) + "x" +
                                     std::to_string(vertices_[s].dim));
    }
    edges_.push_back(Edge{s, d, std::move(w), count});
    return edges_.size() - 1;
  }

  std::size_t vertex_index(const std::string& name) const {
    auto it = name_index_.find(name);
    if (it == name_index_.end())
      throw std::invalid_argument("unknown vertex '" + name + "'");
    return it->second;
  }
  bool has_vertex(const std::string& name) const { return name_index_.count(name) != 0; }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
  const Edge& edge(std::size_t i) const {
    if (i >= edges_.size()) throw UnknownEdgeError();
    return edges_[i];
  }
  std::size_t empty_index() const { return vertex_index(kEmptyName); }

  /// Total dimension of V, the direct sum of the vertex summands.
  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& v : vertices_) d += v.dim;
    return d;
  }

  std::vector<Diagnostic> validate() const {
    std::vector<Diagnostic> out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      const bool into_empty = (e.dst == empty_index());
      if (e.weight.zero && !into_empty)
        out.push_back({Diagnostic::Kind::ZeroWeightOutsideEmpty,
                       "edge #" + std::to_string(i) + " (" + edge_label(i) +
                           ") has the Zero weight but does not end at 'empty'"});
      if (!e.weight.zero && into_empty)
        out.push_back({Diagnostic::Kind::MatrixIntoEmpty,
                       "edge #" + std::to_string(i) + " (" + edge_label(i) +
                           ") ends at 'empty' but carries a matrix weight"});
      if (!e.weight.zero && !into_empty && e.weight.matrix.has_zero_row())
        out.push_back({Diagnostic::Kind::ZeroRow,
                       "edge #" + std::to_string(i) + " (" + edge_label(i) + ") has a zero row"});
      for (std::size_t j = i + 1; j < edges_.size(); ++j) {
        const Edge& f = edges_[j];
        if (e.src == f.src && e.dst == f.dst && e.weight == f.weight)
          out.push_back({Diagnostic::Kind::DuplicateParallelWeight,
                         "edges #" + std::to_string(i) + " and #" + std::to_string(j) + " (" +
                             edge_label(i) + ") are parallel with equal weights"});
      }
    }
    return out;
  }

  std::string edge_label(std::size_t i) const {
    const Edge& e = edges_[i];
    return vertices_[e.src].name + " -> " + vertices_[e.dst].name;
  }

 private:
  std::vector<Vertex> vertices_;
  std::map<std::string, std::size_t> name_index_;
  std::vector<Edge> edges_;
};

/// Composes edge weights along a path: the later edge is applied after the
/// earlier one, so the result maps the source of the first edge to the
/// target of the last. A non-composable junction or a Zero factor yields
/// Zero; the empty edge list at a vertex yields the identity.
inline EdgeWeight compose_along_path(const Scrambler& s, const Path& edges,
                                     std::optional<std::size_t> at_vertex = std::nullopt) {
  if (edges.empty()) {
    if (!at_vertex) throw std::invalid_argument("empty path needs a base vertex");
    return EdgeWeight::make(RatMatrix::identity(s.vertex(*at_vertex).dim));
  }
  const Edge* prev = &s.edge(edges.front());
  if (prev->weight.zero) return EdgeWeight::make_zero();
  RatMatrix acc = prev->weight.matrix;
  for (std::size_t k = 1; k < edges.size(); ++k) {
    const Edge& e = s.edge(edges[k]);
    if (e.src != prev->dst || e.weight.zero) return EdgeWeight::make_zero();
    acc = e.weight.matrix * acc;
    prev = &e;
  }
  return EdgeWeight::make(std::move(acc));
}

inline bool path_is_composable(const Scrambler& s, const Path& edges) {
  for (std::size_t k = 1; k < edges.size(); ++k)
    if (s.edge(edges[k]).src != s.edge(edges[k - 1]).dst) return false;
  return true;
}

/// All elementary (vertex-simple) directed cycles of length <= max_len,
/// each reported once with canonical start at its lexicographically least
/// vertex name. Parallel edges yield distinct cycles.
inline std::vector<Cycle> elementary_cycles(const Scrambler& s, unsigned max_len,
                                            std::size_t cap = 1u << 20) {
  if (max_len == 0) throw std::invalid_argument("max_len must be positive");
  const auto& verts = s.vertices();
  std::vector<std::size_t> order(verts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return verts[a].name < verts[b].name; });
  std::vector<std::size_t> rank(verts.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  std::vector<std::vector<std::size_t>> out_edges(verts.size());
  for (std::size_t e = 0; e < s.edges().size(); ++e) out_edges[s.edges()[e].src].push_back(e);

  std::vector<Cycle> cycles;
  std::vector<bool> on_path(verts.size(), false);
  Path path;

  // Cycles are attributed to their least-ranked vertex; the DFS from a start
  // vertex may only visit strictly higher-ranked vertices.
  auto dfs = [&](auto&& self, std::size_t start, std::size_t v) -> void {
    for (std::size_t e : out_edges[v]) {
      std::size_t w = s.edges()[e].dst;
      if (w == start) {
        if (cycles.size() >= cap)
          throw BudgetExceededError("elementary cycle count exceeds cap");
        path.push_back(e);
        cycles.push_back(path);
        path.pop_back();
        continue;
      }
      if (rank[w] <= rank[start] || on_path[w] || path.size() + 1 >= max_len) continue;
      on_path[w] = true;
      path.push_back(e);
      self(self, start, w);
      path.pop_back();
      on_path[w] = false;
    }
  };

  for (std::size_t start : order) {
    path.clear();
    dfs(dfs, start, start);
  }
  return cycles;
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> tokenize_line(std::string line) {
  auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '[' || c == ']' || c == ';' || c == ':') {
      line.replace(i, 1, std::string(" ") + c + " ");
      i += 2;
    }
  }
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace detail

/// Parses the line-oriented scrambler file format. The implicit "empty"
/// vertex is added when absent.
inline Scrambler parse_scrambler(const std::string& text) {
  struct PendingEdge {
    std::string src, dst;
    bool zero;
    std::vector<std::vector<Rational>> rows;
    unsigned count;
    std::size_t line;
  };
  std::vector<std::tuple<std::string, std::size_t, std::vector<std::string>, std::size_t>> pending_vertices;
  std::vector<PendingEdge> pending_edges;
  std::map<std::string, std::vector<std::string>> curve_lines;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::tokenize_line(line);
    if (toks.empty()) continue;
    if (!header_seen) {
      if (toks.size() != 2 || toks[0] != "scrambler" || toks[1] != "v1")
        throw ScramblerSyntaxError("expected header 'scrambler v1'", line_no);
      header_seen = true;
      continue;
    }
    if (toks[0] == "vertex") {
      if (toks.size() != 4 || toks[2] != "dim")
        throw ScramblerSyntaxError("expected 'vertex NAME dim K'", line_no);
      std::size_t dim;
      try {
        dim = static_cast<std::size_t>(std::stoul(toks[3]));
      } catch (const std::exception&) {
        throw ScramblerSyntaxError("bad dimension '" + toks[3] + "'", line_no);
      }
      pending_vertices.emplace_back(toks[1], dim, std::vector<std::string>{}, line_no);
    } else if (toks[0] == "curves") {
      if (toks.size() < 3 || toks[2] != ":")
        throw ScramblerSyntaxError("expected 'curves NAME: C1 ... CK'", line_no);
      curve_lines[toks[1]] = std::vector<std::string>(toks.begin() + 3, toks.end());
    } else if (toks[0] == "edge") {
      if (toks.size() < 5 || toks[2] != "->")
        throw ScramblerSyntaxError("expected 'edge SRC -> DST WEIGHT'", line_no);
      PendingEdge pe{toks[1], toks[3], false, {}, 1, line_no};
      std::size_t i = 4;
      if (toks[i] == "0") {
        pe.zero = true;
        ++i;
      } else if (toks[i] == "[") {
        ++i;
        std::vector<Rational> row;
        bool closed = false;
        for (; i < toks.size(); ++i) {
          if (toks[i] == ";") {
            pe.rows.push_back(row);
            row.clear();
          } else if (toks[i] == "]") {
            pe.rows.push_back(row);
            closed = true;
            ++i;
            break;
          } else {
            Rational r;
            try {
              r = parse_rational(toks[i]);
            } catch (const std::exception&) {
              throw ScramblerSyntaxError("bad matrix entry '" + toks[i] + "'", line_no);
            }
            if (r < 0) throw NegativeEntryError();
            row.push_back(r);
          }
        }
        if (!closed) throw ScramblerSyntaxError("unterminated matrix", line_no);
      } else {
        throw ScramblerSyntaxError("expected matrix '[' or '0' weight", line_no);
      }
      if (i < toks.size()) {
        if (toks[i] != "count" || i + 1 >= toks.size())
          throw ScramblerSyntaxError("unexpected trailing tokens on edge line", line_no);
        try {
          pe.count = static_cast<unsigned>(std::stoul(toks[i + 1]));
        } catch (const std::exception&) {
          throw ScramblerSyntaxError("bad count '" + toks[i + 1] + "'", line_no);
        }
        i += 2;
        if (i < toks.size())
          throw ScramblerSyntaxError("unexpected trailing tokens on edge line", line_no);
      }
      pending_edges.push_back(std::move(pe));
    } else {
      throw ScramblerSyntaxError("unknown directive '" + toks[0] + "'", line_no);
    }
  }
  if (!header_seen) throw ScramblerSyntaxError("missing header 'scrambler v1'", 1);

  Scrambler s;
  bool empty_declared = false;
  for (auto& [name, dim, curves, ln] : pending_vertices) {
    if (name == Scrambler::kEmptyName) {
      if (dim != 0) throw ScramblerSyntaxError("'empty' must have dim 0", ln);
      empty_declared = true;
      continue;  // already present
    }
    auto it = curve_lines.find(name);
    std::vector<std::string> labels = it == curve_lines.end() ? std::vector<std::string>{} : it->second;
    if (!labels.empty() && labels.size() != dim)
      throw DimensionMismatchError("curves line for '" + name + "' has wrong label count");
    try {
      s.add_vertex(name, dim, std::move(labels));
    } catch (const std::invalid_argument& ex) {
      throw ScramblerSyntaxError(ex.what(), ln);
    }
  }
  (void)empty_declared;
  for (auto& pe : pending_edges) {
    if (!s.has_vertex(pe.src))
      throw ScramblerSyntaxError("unknown vertex '" + pe.src + "'", pe.line);
    if (!s.has_vertex(pe.dst))
      throw ScramblerSyntaxError("unknown vertex '" + pe.dst + "'", pe.line);
    if (pe.zero) {
      s.add_edge(pe.src, pe.dst, EdgeWeight::make_zero(), pe.count);
    } else {
      std::size_t rows = pe.rows.size();
      std::size_t cols = rows ? pe.rows[0].size() : 0;
      for (const auto& r : pe.rows)
        if (r.size() != cols)
          throw ScramblerSyntaxError("ragged matrix rows", pe.line);
      RatMatrix m(rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = pe.rows[r][c];
      s.add_edge(pe.src, pe.dst, EdgeWeight::make(std::move(m)), pe.count);
    }
  }
  return s;
}

/// Canonical serialization; parse followed by serialize is the identity on
/// this form.
inline std::string serialize_scrambler(const Scrambler& s) {
  std::string out = "scrambler v1\n";
  std::size_t empty = s.empty_index();
  for (std::size_t i = 0; i < s.vertices().size(); ++i) {
    if (i == empty) continue;
    const Vertex& v = s.vertex(i);
    out += "vertex " + v.name + " dim " + std::to_string(v.dim) + "\n";
    if (!v.curve_names.empty()) {
      out += "curves " + v.name + ":";
      for (const auto& c : v.curve_names) out += " " + c;
      out += "\n";
    }
  }
  out += "vertex empty dim 0\n";
  for (std::size_t i = 0; i < s.edges().size(); ++i) {
    const Edge& e = s.edges()[i];
    out += "edge " + s.vertex(e.src).name + " -> " + s.vertex(e.dst).name + " ";
    out += e.weight.zero ? "0" : e.weight.matrix.to_string();
    if (e.count != 1) out += " count " + std::to_string(e.count);
    out += "\n";
  }
  return out;
}

/// Deterministic Graphviz export: vertices labeled name(dim), edges labeled
/// by their matrix in bracket notation or "0".
inline std::string export_dot(const Scrambler& s) {
  std::string out = "digraph scrambler {\n";
  for (const auto& v : s.vertices())
    out += "  \"" + v.name + "\" [label=\"" + v.name + "(" + std::to_string(v.dim) + ")\"];\n";
  for (std::size_t i = 0; i < s.edges().size(); ++i) {
    const Edge& e = s.edges()[i];
    std::string label = e.weight.zero ? "0" : e.weight.matrix.to_string();
    out += "  \"" + s.vertex(e.src).name + "\" -> \"" + s.vertex(e.dst).name + "\" [label=\"" +
           label + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace strata

#endif  // STRATA_SCRAMBLER_HPP
