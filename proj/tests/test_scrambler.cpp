#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "strata/scrambler.hpp"

using namespace strata;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

RatMatrix mat1(const Rational& x) {
  RatMatrix m(1, 1);
  m.at(0, 0) = x;
  return m;
}

Scrambler rabbit() {
  Scrambler s;
  s.add_vertex("a", 1);
  s.add_vertex("b", 1);
  s.add_vertex("c", 1);
  s.add_edge("c", "b", EdgeWeight::make(mat1(Rational(1))));
  s.add_edge("b", "a", EdgeWeight::make(mat1(Rational(1, 2))));
  s.add_edge("a", "c", EdgeWeight::make(mat1(Rational(1, 2))));
  s.add_edge("c", "empty", EdgeWeight::make_zero());
  return s;
}

}  // namespace

TEST_CASE("the empty vertex is implicit and has dimension zero") {
  Scrambler s;
  CHECK(s.vertices().size() == 1);
  CHECK(s.vertex(s.empty_index()).dim == 0);
  CHECK_THROWS_AS(s.add_vertex("empty", 1), std::invalid_argument);
  CHECK_THROWS_AS(s.add_vertex("empty", 0), std::invalid_argument);
}

TEST_CASE("edge shape validation") {
  Scrambler s;
  s.add_vertex("u", 2);
  s.add_vertex("v", 1);
  RatMatrix good(1, 2);
  good.at(0, 0) = 1;
  CHECK_NOTHROW(s.add_edge("u", "v", EdgeWeight::make(good)));
  RatMatrix wrong(2, 2);
  CHECK_THROWS_AS(s.add_edge("u", "v", EdgeWeight::make(wrong)), DimensionMismatchError);
  RatMatrix negative(1, 2);
  negative.at(0, 1) = Rational(-1);
  CHECK_THROWS_AS(s.add_edge("u", "v", EdgeWeight::make(negative)), NegativeEntryError);
  CHECK_THROWS_AS(s.add_edge("u", "nowhere", EdgeWeight::make_zero()), std::invalid_argument);
}

TEST_CASE("validate reports the four diagnostic kinds") {
  Scrambler s;
  s.add_vertex("u", 2);
  s.add_vertex("v", 1);
  RatMatrix with_zero_row(1, 2);  // row of zeros
  s.add_edge("u", "v", EdgeWeight::make(with_zero_row));
  s.add_edge("u", "v", EdgeWeight::make(with_zero_row));       // duplicate parallel
  s.add_edge("v", "u", EdgeWeight::make_zero());               // Zero outside empty
  s.add_edge("v", "empty", EdgeWeight::make(RatMatrix(0, 1)));  // matrix into empty
  auto diags = s.validate();
  std::set<Diagnostic::Kind> kinds;
  for (const auto& d : diags) kinds.insert(d.kind);
  CHECK(kinds.count(Diagnostic::Kind::ZeroRow));
  CHECK(kinds.count(Diagnostic::Kind::DuplicateParallelWeight));
  CHECK(kinds.count(Diagnostic::Kind::ZeroWeightOutsideEmpty));
  CHECK(kinds.count(Diagnostic::Kind::MatrixIntoEmpty));
  CHECK(rabbit().validate().empty());
}

TEST_CASE("path composition: identity, order, and zero absorption") {
  Scrambler s = rabbit();
  // Empty path at a vertex is the identity on its summand.
  EdgeWeight id = compose_along_path(s, {}, s.vertex_index("a"));
  CHECK(!id.zero);
  CHECK(id.matrix == RatMatrix::identity(1));
  // Edges 0,1,2 are c->b, b->a, a->c; the cycle from c multiplies to 1/4.
  EdgeWeight w = compose_along_path(s, Path{0, 1, 2});
  REQUIRE(!w.zero);
  CHECK(w.matrix.at(0, 0) == Rational(1, 4));
  // Non-composable junction yields Zero.
  CHECK(compose_along_path(s, Path{0, 0}).zero);
  CHECK(!path_is_composable(s, Path{0, 0}));
  CHECK(path_is_composable(s, Path{0, 1, 2}));
  // A Zero factor absorbs.
  CHECK(compose_along_path(s, Path{3}).zero);
}

TEST_CASE("composition along concatenated paths is associative") {
  Scrambler s = rabbit();
  Path p1{0}, p2{1, 2}, whole{0, 1, 2};
  EdgeWeight left = compose_along_path(s, p1);
  EdgeWeight right = compose_along_path(s, p2);
  EdgeWeight all = compose_along_path(s, whole);
  REQUIRE((!left.zero && !right.zero && !all.zero));
  CHECK(right.matrix * left.matrix == all.matrix);
}

TEST_CASE("elementary cycle enumeration with canonical starts") {
  Scrambler s = rabbit();
  auto cycles = elementary_cycles(s, 12);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].size() == 3);
  // Canonical start is the lexicographically least vertex, a.
  CHECK(s.edge(cycles[0].front()).src == s.vertex_index("a"));
  CHECK(s.edge(cycles[0].back()).dst == s.vertex_index("a"));

  // Length cap excludes the only cycle.
  CHECK(elementary_cycles(s, 2).empty());

  // Parallel edges produce distinct cycles: two self-loops at one vertex.
  Scrambler t;
  t.add_vertex("u", 1);
  t.add_edge("u", "u", EdgeWeight::make(mat1(Rational(1))));
  t.add_edge("u", "u", EdgeWeight::make(mat1(Rational(1, 2))));
  CHECK(elementary_cycles(t, 5).size() == 2);
}

TEST_CASE("cycle budget throws instead of truncating") {
  Scrambler t;
  t.add_vertex("u", 1);
  for (int i = 0; i < 8; ++i) t.add_edge("u", "u", EdgeWeight::make(mat1(Rational(1, 2))));
  CHECK_THROWS_AS(elementary_cycles(t, 5, 3), BudgetExceededError);
}

TEST_CASE("fixture files parse and round-trip through the canonical form") {
  for (const char* name :
       {"rabbit.scr", "dendrite.scr", "fixed_cubic.scr", "twisted_cubic.scr", "cubic5.scr"}) {
    CAPTURE(name);
    Scrambler s = parse_scrambler(read_fixture(name));
    std::string canon = serialize_scrambler(s);
    CHECK(serialize_scrambler(parse_scrambler(canon)) == canon);
  }
  Scrambler r = parse_scrambler(read_fixture("rabbit.scr"));
  CHECK(serialize_scrambler(r) == serialize_scrambler(rabbit()));
}

TEST_CASE("parser errors carry line numbers") {
  CHECK_THROWS_AS(parse_scrambler("nonsense v1\n"), ScramblerSyntaxError);
  CHECK_THROWS_AS(parse_scrambler("scrambler v1\nvertex a\n"), ScramblerSyntaxError);
  CHECK_THROWS_AS(parse_scrambler("scrambler v1\nvertex a dim 1\nedge a -> a [ 1 0 ]\n"),
                  DimensionMismatchError);
  CHECK_THROWS_AS(parse_scrambler("scrambler v1\nvertex a dim 1\nedge a -> a [ -1 ]\n"),
                  NegativeEntryError);
  CHECK_THROWS_AS(parse_scrambler("scrambler v1\nedge a -> b [ 1 ]\n"), ScramblerSyntaxError);
  try {
    parse_scrambler("scrambler v1\nvertex a dim 1\nbogus\n");
    FAIL("expected ScramblerSyntaxError");
  } catch (const ScramblerSyntaxError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("multi-row matrices and curve labels survive the format") {
  Scrambler s = parse_scrambler(read_fixture("cubic5.scr"));
  std::size_t v = s.vertex_index("ab_cd");
  CHECK(s.vertex(v).dim == 2);
  REQUIRE(s.vertex(v).curve_names.size() == 2);
  CHECK(s.vertex(v).curve_names[0] == "ab");
  bool found = false;
  for (const auto& e : s.edges()) {
    if (e.src == v) {
      REQUIRE(!e.weight.zero);
      CHECK(e.weight.matrix == RatMatrix::identity(2));
      found = true;
    }
  }
  CHECK(found);
  // count metadata round-trips.
  Scrambler c = parse_scrambler("scrambler v1\nvertex a dim 1\nedge a -> a [ 1 ] count 3\n");
  CHECK(c.edges()[0].count == 3);
  CHECK(serialize_scrambler(c).find("count 3") != std::string::npos);
}

TEST_CASE("DOT export is deterministic and quotes all names") {
  Scrambler s = rabbit();
  std::string dot = export_dot(s);
  CHECK(dot == export_dot(s));
  CHECK(dot.find("\"c\" -> \"b\" [label=\"[ 1 ]\"]") != std::string::npos);
  CHECK(dot.find("\"c\" -> \"empty\" [label=\"0\"]") != std::string::npos);
  CHECK(dot.find("\"a\" [label=\"a(1)\"]") != std::string::npos);
  CHECK(dot.substr(0, 19) == "digraph scrambler {");
}
