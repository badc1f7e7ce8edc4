#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "strata/jsr.hpp"
#include "strata/scrambler.hpp"
#include "strata/spectral.hpp"

using namespace strata;

namespace {

Scrambler load(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return parse_scrambler(out.str());
}

}  // namespace

TEST_CASE("embedding path products as endomorphisms: nilpotency dichotomy") {
  Scrambler s = load("rabbit.scr");
  // A product along a non-closed path, extended by zero, is nilpotent.
  EdgeWeight w = compose_along_path(s, Path{0});  // c -> b
  REQUIRE(!w.zero);
  RatMatrix e = embed_as_endomorphism(s, w.matrix, s.edge(0).src, s.edge(0).dst);
  CHECK(e.rows() == s.total_dim());
  CHECK(is_nilpotent(e));
  // Two-step path, still open: nilpotent.
  EdgeWeight w2 = compose_along_path(s, Path{0, 1});  // c -> a
  RatMatrix e2 = embed_as_endomorphism(s, w2.matrix, s.edge(0).src, s.edge(1).dst);
  CHECK(is_nilpotent(e2));
  // A closed nonzero product embeds with the same (nonzero) spectral radius.
  EdgeWeight cyc = compose_along_path(s, Path{0, 1, 2});  // c -> c, product 1/4
  RatMatrix ec = embed_as_endomorphism(s, cyc.matrix, s.edge(0).src, s.edge(2).dst);
  CHECK(!is_nilpotent(ec));
  CHECK(!rho_less_than(ec, Rational(1, 4)));
  CHECK(rho_less_than(ec, Rational(1, 4) + Rational(1, 1024)));
}

TEST_CASE("cycle spectra of the rabbit") {
  Scrambler s = load("rabbit.scr");
  auto spectra = cycle_spectra(s, 12);
  REQUIRE(spectra.size() == 1);
  CHECK(spectra[0].cycle.size() == 3);
  CHECK(spectra[0].sigma_lt_one);
  CHECK(spectra[0].enclosure.lo == Rational(1, 4));
  CHECK(spectra[0].enclosure.hi == Rational(1, 4));
}

TEST_CASE("rabbit is Contracting(3) with exact JSR bounds (1/4)^(1/3)") {
  Scrambler s = load("rabbit.scr");
  Verdict v = decide_contraction(s);
  REQUIRE(v.kind == Verdict::Kind::Contracting);
  CHECK(v.certificate_length == 3);

  JsrEstimate est = jsr_bounds(s);
  CHECK(est.lower.base == Rational(1, 4));
  CHECK(est.lower.root == 3);
  CHECK(est.upper.base == Rational(1, 4));
  CHECK(est.upper.root == 3);
  CHECK(std::fabs(est.float_hint_lower - 0.62996) < 1e-4);
  CHECK(std::fabs(est.float_hint_upper - 0.62996) < 1e-4);

  // Independent oracle: exhaust the length-n norms by hand. The three edges
  // have norms 1, 1/2, 1/2, so level-1 max norm is 1 and level-2 is 1/2,
  // which is why the certificate appears exactly at level 3.
  std::size_t counter = 0;
  CHECK(detail::level_max_norm(s, 1, 1000, counter) == Rational(1));
  CHECK(detail::level_max_norm(s, 2, 1000, counter) == Rational(1, 2));
  CHECK(detail::level_max_norm(s, 3, 1000, counter) == Rational(1, 4));
}

TEST_CASE("dendrite is Obstructed at the loop on c") {
  Scrambler s = load("dendrite.scr");
  Verdict v = decide_contraction(s);
  REQUIRE(v.kind == Verdict::Kind::Obstructed);
  CHECK(v.level == 1);
  REQUIRE(v.witness.size() == 1);
  const Edge& e = s.edge(v.witness[0]);
  CHECK(s.vertex(e.src).name == "c");
  CHECK(s.vertex(e.dst).name == "c");
  REQUIRE(!e.weight.zero);
  CHECK(!rho_less_than(e.weight.matrix, Rational(1)));
}

TEST_CASE("fixed cubic: every level is all-unobstructed but never contracting") {
  Scrambler s = load("fixed_cubic.scr");
  for (unsigned n = 1; n <= 4; ++n) {
    LevelRationality lr = rationality_by_level(s, n);
    CHECK(!lr.all_unobstructed);  // the [1] loops compose to sigma = 1 products
  }
  Verdict v = decide_contraction(s);
  CHECK(v.kind == Verdict::Kind::Obstructed);
  CHECK(v.level == 1);
}

TEST_CASE("twisted cubic: levels 1, 2 clean; level 3 witness with sigma exactly 1") {
  Scrambler s = load("twisted_cubic.scr");
  CHECK(rationality_by_level(s, 1).all_unobstructed);
  CHECK(rationality_by_level(s, 2).all_unobstructed);
  LevelRationality l3 = rationality_by_level(s, 3);
  REQUIRE(!l3.all_unobstructed);
  EdgeWeight w = compose_along_path(s, l3.witness);
  REQUIRE(!w.zero);
  CHECK(!rho_less_than(w.matrix, Rational(1)));
  CHECK(rho_less_than(w.matrix, Rational(1) + Rational(1, 1024)));
  Verdict v = decide_contraction(s);
  CHECK(v.kind == Verdict::Kind::Obstructed);
  CHECK(v.level == 3);
}

TEST_CASE("cubic #P=5: even cycles, odd levels clean, level 2 obstructed") {
  Scrambler s = load("cubic5.scr");
  auto cycles = elementary_cycles(s, 12);
  REQUIRE(cycles.size() == 4);
  for (const auto& c : cycles) CHECK(c.size() % 2 == 0);
  CHECK(rationality_by_level(s, 1).all_unobstructed);
  CHECK(rationality_by_level(s, 3).all_unobstructed);
  CHECK(rationality_by_level(s, 5).all_unobstructed);
  LevelRationality l2 = rationality_by_level(s, 2);
  REQUIRE(!l2.all_unobstructed);
  EdgeWeight w = compose_along_path(s, l2.witness);
  REQUIRE(!w.zero);
  CHECK(!rho_less_than(w.matrix, Rational(1)));
}

TEST_CASE("verdicts are mutually exclusive and consistent with bounds") {
  for (const char* name :
       {"rabbit.scr", "dendrite.scr", "fixed_cubic.scr", "twisted_cubic.scr", "cubic5.scr"}) {
    CAPTURE(name);
    Scrambler s = load(name);
    Verdict v = decide_contraction(s);
    JsrEstimate est = jsr_bounds(s);
    CHECK(bound_leq(est.lower, est.upper));
    if (v.kind == Verdict::Kind::Contracting) {
      // An upper bound strictly below 1 must exist.
      CHECK(bound_lt(est.upper, RootBound{Rational(1), 1}));
    }
    if (v.kind == Verdict::Kind::Obstructed) {
      // The lower bound reaches 1.
      CHECK(bound_leq(RootBound{Rational(1), 1}, est.lower));
    }
  }
}

TEST_CASE("product enumeration budget throws instead of undercounting") {
  Scrambler s = load("cubic5.scr");
  CHECK_THROWS_AS(rationality_by_level(s, 6, 10), BudgetExceededError);
}

TEST_CASE("undecided verdict carries best bounds") {
  // A single loop of weight [1] is obstructed; to reach Undecided we need a
  // family whose cycles contract but whose norms never certify within the
  // budget. Take [3/4] with a tiny max_product_len: norms 3/4, 9/16, ... stay
  // above 1/2 through level 2.
  Scrambler s;
  s.add_vertex("u", 1);
  RatMatrix m(1, 1);
  m.at(0, 0) = Rational(3, 4);
  s.add_edge("u", "u", EdgeWeight::make(m));
  Budget tight;
  tight.max_product_len = 2;
  Verdict v = decide_contraction(s, tight);
  REQUIRE(v.kind == Verdict::Kind::Undecided);
  CHECK(v.best.lower.base == Rational(3, 4));
  CHECK(v.best.lower.root == 1);
  CHECK(v.best.upper.base == Rational(3, 4));
  CHECK(v.best.upper.root == 1);
  // With a longer horizon the same scrambler is certified contracting:
  // (3/4)^3 = 27/64 < 1/2 at level 3.
  Verdict ok = decide_contraction(s);
  REQUIRE(ok.kind == Verdict::Kind::Contracting);
  CHECK(ok.certificate_length == 3);
}
