#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chordal/moves.hpp"
#include "chordal/surface.hpp"

using namespace chordal;

TEST_CASE("genus of small diagrams") {
  CHECK(Surface(GaussDiagram::parse("c: O1+ U1+")).genus() == 0);
  CHECK(Surface(GaussDiagram::parse("c: O1+ U2+ O3+ U1+ O2+ U3+")).genus() == 0);
  CHECK(Surface(GaussDiagram::parse("c: U1+ O2- U4- O1+ U3+ O4- U2- O3+")).genus() == 0);
  CHECK(Surface(GaussDiagram::parse("c: O1+ U2+ U1+ O2+")).genus() == 1);
  CHECK(Surface(GaussDiagram::parse("c: O1- U2+ U3- O2+ U1- O3-")).genus() == 2);
  CHECK(Surface(GaussDiagram::parse("c: T1 H2 H1 T2")).genus() == 1);
  CHECK(Surface(GaussDiagram::parse("c: O1+ U2+ ; c: U1+ O2+")).genus() == 0);
}

TEST_CASE("Euler characteristic") {
  std::mt19937_64 rng(4);
  for (auto s : {"c: O1- U2+ U3- O2+ U1- O3-", "c: T1 H2 H1 T2", "c: O1+ O2+ ; c: U1+ U2+"}) {
    for (auto& st : random_walk(GaussDiagram::parse(s), 150, 8, rng)) {
      Surface S(st.d);
      int v = st.d.chord_count(), e = 2 * v;
      if (v == 0) continue;
      CHECK(v - e + S.face_count() == 2 * S.surface_components() - 2 * S.genus());
      // a ribbon graph on 2v edges has cycle rank e - v + components
      CHECK(S.cycle_rank() == e - v + S.surface_components());
      CHECK(S.form_rank() == 2 * S.genus());
    }
  }
}

TEST_CASE("intersection form is antisymmetric") {
  std::mt19937_64 rng(6);
  for (auto& st : random_walk(GaussDiagram::parse("c: O1- U2+ U3- O2+ U1- O3-"), 100, 8, rng)) {
    Surface S(st.d);
    const auto& f = S.form();
    CHECK(f == -f.transpose());
    for (int v = 0; v < st.d.chord_count(); ++v) {
      Walk l = S.left_half_walk(v), r = S.right_half_walk(v), k = S.component_walk(0);
      CHECK(S.inter(l, r) == -S.inter(r, l));
      CHECK(S.inter(k, k) == 0);
      // the two halves add up to the knot
      Eigen::VectorXi x = S.coords(l) + S.coords(r);
      Eigen::VectorXi diff = x - S.coords(k);
      CHECK(S.pair(diff, S.coords(k)) == 0);
    }
  }
}

TEST_CASE("halves of a classical diagram pair trivially") {
  auto d = GaussDiagram::parse("c: O1+ U2+ O3+ U1+ O2+ U3+");
  Surface S(d);
  for (int v = 0; v < 3; ++v) CHECK(S.inter(S.component_walk(0), S.left_half_walk(v)) == 0);
}
