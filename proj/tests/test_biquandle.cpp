#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chordal/biquandle.hpp"
#include "chordal/moves.hpp"

using namespace chordal;

namespace {

// Fox 3-colorings by enumeration over arcs of closed components: the over
// strand keeps its color, the under strand leaves with 2*over - in.
long fox3_oracle(const GaussDiagram& d) {
  std::vector<int> first;
  int arcs = 0;
  for (auto& c : d.components()) {
    first.push_back(arcs);
    arcs += std::max<int>(1, static_cast<int>(c.slots.size()));
  }
  auto in_arc = [&](SlotRef r) {
    int k = static_cast<int>(d.component(r.comp).slots.size());
    return first[r.comp] + (r.index + k - 1) % k;
  };
  auto out_arc = [&](SlotRef r) { return first[r.comp] + r.index; };
  long count = 0;
  std::vector<int> col(arcs, 0);
  for (;;) {
    bool ok = true;
    for (int v = 0; v < d.chord_count() && ok; ++v) {
      SlotRef o = d.where(v, End::Over), u = d.where(v, End::Under);
      int x = col[in_arc(o)];
      ok = col[out_arc(o)] == x && col[out_arc(u)] == ((2 * x - col[in_arc(u)]) % 3 + 3) % 3;
    }
    count += ok;
    int i = 0;
    while (i < arcs && ++col[i] == 3) col[i++] = 0;
    if (i == arcs) break;
  }
  return count;
}

}  // namespace

TEST_CASE("axioms of the built-in biquandles") {
  CHECK_FALSE(FiniteBiquandle::trivial(3).axiom_violation());
  CHECK_FALSE(FiniteBiquandle::dihedral(5).axiom_violation());
  CHECK_FALSE(FiniteBiquandle::shift(6).axiom_violation());
  // x o y = x + y fails the exchange law
  std::vector<int> c(9), s(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      c[x * 3 + y] = (x + y) % 3;
      s[x * 3 + y] = (x + 2 * y) % 3;
    }
  CHECK(FiniteBiquandle(3, c, s).axiom_violation());
}

TEST_CASE("parse and serialize") {
  auto b = FiniteBiquandle::dihedral(3);
  auto p = FiniteBiquandle::parse(b.serialize());
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      CHECK(p.circ(x, y) == b.circ(x, y));
      CHECK(p.star(x, y) == b.star(x, y));
      CHECK(b.circ_solve(b.circ(x, y), y) == x);
    }
  CHECK_THROWS_AS(FiniteBiquandle::parse("3 0 1"), Error);
}

TEST_CASE("Fox colorings of classical diagrams") {
  auto dih = FiniteBiquandle::dihedral(3);
  CHECK(colorings(GaussDiagram::parse("c:"), dih).size() == 3u);
  CHECK(colorings(GaussDiagram::parse("c: O1+ U2+ O3+ U1+ O2+ U3+"), dih).size() == 9u);
  CHECK(colorings(GaussDiagram::parse("c: U1+ O2- U4- O1+ U3+ O4- U2- O3+"), dih).size() == 3u);
  CHECK(colorings(GaussDiagram::parse("c: O1+ U2+ ; c: U1+ O2+"), dih).size() == 3u);
  CHECK(colorings(GaussDiagram::parse("c: ; c:"), dih).size() == 9u);
}

TEST_CASE("dihedral colorings match the enumeration") {
  std::mt19937_64 rng(31);
  auto dih = FiniteBiquandle::dihedral(3);
  for (auto s : {"c: O1- U2+ U3- O2+ U1- O3-", "c: O1+ U2+ U1+ O2+", "c: O1+ O2+ ; c: U1+ U2+"})
    for (auto& st : random_walk(GaussDiagram::parse(s), 80, 7, rng)) {
      INFO(st.d.serialize());
      CHECK(static_cast<long>(colorings(st.d, dih).size()) == fox3_oracle(st.d));
    }
}

TEST_CASE("colorings satisfy the crossing rule") {
  std::mt19937_64 rng(3);
  auto sh = FiniteBiquandle::shift(4);
  for (auto& st : random_walk(GaussDiagram::parse("c: O1- U2+ U3- O2+ U1- O3-"), 50, 7, rng))
    for (auto& c : colorings(st.d, sh)) CHECK(is_coloring(st.d, sh, c));
}

TEST_CASE("coloring counts are invariant") {
  for (auto b : {FiniteBiquandle::dihedral(3), FiniteBiquandle::shift(6), FiniteBiquandle::dihedral(5)}) {
    std::mt19937_64 rng(41);
    auto d = GaussDiagram::parse("c: O1- U2+ U3- O2+ U1- O3-");
    size_t want = colorings(d, b).size();
    for (auto& st : random_walk(d, 150, 8, rng)) CHECK(colorings(st.d, b).size() == want);
  }
}

TEST_CASE("shift biquandle index on 3.1") {
  auto d = GaussDiagram::parse("c: O1- U2+ U3- O2+ U1- O3-");
  auto idx = biquandle_index(d, FiniteBiquandle::shift(6));
  REQUIRE(idx.size() == 3u);
  CHECK(idx[0] == ClassMultiset{{"-[0,1]", 6}});
  CHECK(idx[1] == ClassMultiset{{"+[0,1]", 6}});
  CHECK(idx[2] == ClassMultiset{{"-[0,4]", 6}});
}

TEST_CASE("tilde quotient and involution") {
  auto b = FiniteBiquandle::shift(6);
  TildeQuotient q = tilde_quotient(b);
  // (x,y) ~ (x+1,y+1): classes are the differences
  CHECK(q.count(1) == 6);
  CHECK(q.count(-1) == 6);
  ClassMultiset m{{"+[0,1]", 2}, {"-[0,4]", 1}};
  CHECK(involution(q, involution(q, m)) == m);
}
