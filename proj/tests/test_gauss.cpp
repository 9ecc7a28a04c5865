#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chordal/gauss.hpp"
#include "chordal/moves.hpp"

using namespace chordal;

namespace {

ErrorCode parse_error(const std::string& s) {
  try {
    GaussDiagram::parse(s);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed: " << s);
  return ErrorCode::BadArgument;
}

}  // namespace

TEST_CASE("parse and serialize") {
  auto d = GaussDiagram::parse("c: O1- U2+ U3- O2+ U1- O3-");
  CHECK(d.flavor() == Flavor::Virtual);
  CHECK(d.chord_count() == 3);
  CHECK(d.signs() == std::vector<int>{-1, 1, -1});
  CHECK(d.serialize() == "c: O1- U2+ U3- O2+ U1- O3-");
  CHECK(GaussDiagram::parse("c: ; c:").component_count() == 2);
  CHECK(GaussDiagram::parse("l: E1 E2 E1 E2").flavor() == Flavor::Free);
  CHECK(GaussDiagram::parse("c: T1 H2 H1 T2").flavor() == Flavor::Flat);
}

TEST_CASE("parse errors") {
  CHECK(parse_error("c: O1+ U2+") == ErrorCode::UnbalancedLabel);
  CHECK(parse_error("c: O1+ O1+") == ErrorCode::RoleConflict);
  CHECK(parse_error("c: O1 U1") == ErrorCode::SignMissing);
  CHECK(parse_error("c: O1+ U1-") == ErrorCode::SignConflict);
  CHECK(parse_error("x: O1+ U1+") == ErrorCode::BadComponentKind);
  CHECK(parse_error("c: Q1+ U1+") == ErrorCode::BadToken);
  CHECK(parse_error("c: T1 H2 T1 H2") == ErrorCode::RoleConflict);
}

TEST_CASE("catalog") {
  auto cat = parse_catalog("# comment\nkink = c: O1+ U1+\nunknot = c:\n");
  REQUIRE(cat.size() == 2);
  CHECK(find_entry(cat, "kink")->diagram.chord_count() == 1);
  CHECK(find_entry(cat, "nope") == nullptr);
  CHECK_THROWS_AS(parse_catalog("a = c:\na = c:\n"), Error);
  CHECK_THROWS_AS(parse_catalog("no equals sign\n"), Error);
}

TEST_CASE("flat arrows and halves") {
  auto d = GaussDiagram::parse("c: O1+ U1+");
  auto m = GaussDiagram::parse("c: O1- U1-");
  // reversed sign reverses the flat arrow
  CHECK(d.flat_tail(0) == d.where(0, End::Over));
  CHECK(m.flat_tail(0) == m.where(0, End::Under));
  auto t = GaussDiagram::parse("c: O1+ U2+ O3+ U1+ O2+ U3+");
  for (int v = 0; v < 3; ++v) CHECK(t.left_half(v).size() + t.right_half(v).size() == 4);
}

TEST_CASE("lk_pair is antisymmetric") {
  std::mt19937_64 rng(7);
  auto start = GaussDiagram::parse("c: O1- U2+ U3- O2+ U1- O3-");
  for (auto& st : random_walk(start, 200, 8, rng))
    for (int v = 0; v < st.d.chord_count(); ++v)
      for (int w = 0; w < st.d.chord_count(); ++w) {
        if (!st.d.is_self(v) || !st.d.is_self(w)) continue;
        CHECK(st.d.lk_pair(v, w) == -st.d.lk_pair(w, v));
      }
}

TEST_CASE("round trip on random walks") {
  std::mt19937_64 rng(11);
  for (auto s : {"c: O1+ U2+ O3+ U1+ O2+ U3+", "c: T1 H2 H1 T2", "l: E1 E2 E1 E2", "c: O1+ O2+ ; c: U1+ U2+"}) {
    for (auto& st : random_walk(GaussDiagram::parse(s), 100, 8, rng)) {
      CHECK(GaussDiagram::parse(st.d.serialize()).serialize() == st.d.serialize());
    }
  }
}

TEST_CASE("involutions") {
  auto d = GaussDiagram::parse("c: O1- U2+ U3- O2+ U1- O3-");
  CHECK(d.mirror().mirror() == d);
  CHECK(d.reversed().reversed() == d);
  CHECK(d.crossing_change(1).crossing_change(1) == d);
  CHECK(d.to_flat().flavor() == Flavor::Flat);
  CHECK(d.to_free().flavor() == Flavor::Free);
  CHECK(d.without_chord(0).chord_count() == 2);
}

TEST_CASE("smoothings") {
  auto d = GaussDiagram::parse("c: O1+ U2+ O3+ U1+ O2+ U3+");
  auto o = d.smoothing(0, Smoothing::Oriented);
  REQUIRE(o.size() == 1);
  CHECK(o[0].component_count() == 2);
  CHECK(o[0].chord_count() == 2);
  auto u = d.smoothing(0, Smoothing::Unoriented);
  REQUIRE(u.size() == 1);
  CHECK(u[0].component_count() == 1);
  auto h = GaussDiagram::parse("c: O1+ U2+ ; c: U1+ O2+");
  CHECK_THROWS_AS(h.smoothing(0, Smoothing::Oriented), Error);
}

TEST_CASE("braid closure") {
  auto t = braid_closure(2, {1, 1, 1});
  CHECK(t.component_count() == 1);
  CHECK(t.chord_count() == 3);
  CHECK(braid_closure(2, {1, 1}).component_count() == 2);
  CHECK_THROWS_AS(braid_closure(2, {2}), Error);
}
