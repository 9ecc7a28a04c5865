#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "chordal/based_matrix.hpp"
#include "chordal/indices.hpp"
#include "chordal/verify.hpp"

using namespace chordal;

namespace {

const char* k31 = "c: O1- U2+ U3- O2+ U1- O3-";

// Ind of a knot chord from positions only: walk from the under end of v to
// its over end and add sgn(w) for each head met, -sgn(w) for each tail.
int ind_oracle(const GaussDiagram& d, int v) {
  const auto& slots = d.component(0).slots;
  int n = static_cast<int>(slots.size()), start = -1, stop = -1;
  for (int i = 0; i < n; ++i) {
    if (slots[i].chord != v) continue;
    (slots[i].end == End::Under ? start : stop) = i;
  }
  int total = 0;
  for (int i = (start + 1) % n; i != stop; i = (i + 1) % n) {
    int w = slots[i].chord;
    if (w == v) continue;
    total += (slots[i].end == End::Under ? 1 : -1) * d.sign(w);
  }
  return total;
}

std::vector<GaussDiagram> knot_walk(const char* s, int steps, int cap, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<GaussDiagram> out{GaussDiagram::parse(s)};
  for (auto& st : random_walk(out[0], steps, cap, rng)) out.push_back(st.d);
  return out;
}

}  // namespace

TEST_CASE("3.1 values") {
  auto d = GaussDiagram::parse(k31);
  CHECK(gaussian_n_all(d) == std::vector<int>{-1, -1, 2});
  CHECK(gaussian_Ind_all(d) == std::vector<int>{1, -1, -2});
  auto ev = [&](const char* name) { return evaluator(name).evaluate(d); };
  CHECK(ev("sign") == std::vector<IndexValue>{"-", "+", "-"});
  CHECK(ev("secondary") == std::vector<IndexValue>{"0", "0", "2*[1] mod 2"});
  CHECK(ev("derived1") == std::vector<IndexValue>{"-1 mod 4", "1 mod 4", "-1 mod 4"});
  CHECK(ev("derived2") == std::vector<IndexValue>{"-1 mod 4", "0 mod 4", "1 mod 4"});
  CHECK(ev("induced") == std::vector<IndexValue>{"•", "•", "0"});
  CHECK(weak_parity_Ind2(d) == std::vector<int>{1, 1, 0});
  CHECK(poly_to_string(turaev_u(d.to_flat())) == "t^2 - 2t");
  for (int v = 0; v < 3; ++v) CHECK_FALSE(hp_vanishes(d, v));
}

TEST_CASE("3.1 intersection indices") {
  auto d = GaussDiagram::parse(k31);
  auto ev = [&](const char* name) { return evaluator(name).evaluate(d); };
  CHECK(ev("i++") == std::vector<IndexValue>{"0", "0", "-[1]"});
  CHECK(ev("i+-") == std::vector<IndexValue>{"0", "0", "-[1]"});
  CHECK(ev("i-+") == std::vector<IndexValue>{"-[-1]", "-[-2]", "[-1]"});
  CHECK(ev("i--") == std::vector<IndexValue>{"-[2]", "-[1]", "[-1]"});
}

TEST_CASE("Ind matches the position oracle") {
  for (auto s : {k31, "c: O1+ U2+ U1+ O2+", "c: U1+ O2- U4- O1+ U3+ O4- U2- O3+"})
    for (auto& d : knot_walk(s, 300, 9, 21))
      for (int v = 0; v < d.chord_count(); ++v) {
        CHECK(gaussian_Ind(d, v) == ind_oracle(d, v));
        CHECK(gaussian_Ind(d, v) == d.sign(v) * gaussian_n(d, v));
      }
}

TEST_CASE("u from n") {
  for (auto& d : knot_walk("c: H1 H2 T3 T2 T1 H3", 200, 8, 8)) {
    Poly want;
    for (int n : gaussian_n_all(d))
      if (n != 0) want[std::abs(n)] += n > 0 ? 1 : -1;
    for (auto it = want.begin(); it != want.end();) it = it->second == 0 ? want.erase(it) : std::next(it);
    CHECK(turaev_u(d) == want);
  }
}

TEST_CASE("f from Ind and signs") {
  for (auto& d : knot_walk(k31, 200, 8, 13)) {
    std::map<int, long> want;
    for (int v = 0; v < d.chord_count(); ++v) {
      int i = gaussian_Ind(d, v);
      if (i != 0) want[i] += d.sign(v);
    }
    for (auto it = want.begin(); it != want.end();) it = it->second == 0 ? want.erase(it) : std::next(it);
    IndexPolynomial p = lk_polynomial(d, tilde_adapter(evaluator("Ind")), {"(0,+1)", "(0,-1)"});
    std::map<int, long> got;
    for (auto& [k, c] : p.z) {
      int i = 0, s = 0;
      REQUIRE(std::sscanf(k.c_str(), "(%d,%d)", &i, &s) == 2);
      got[i] += s > 0 ? c : -c;
    }
    CHECK(got == want);
  }
}

TEST_CASE("index polynomial cancels dual values") {
  auto inv = [](const IndexValue& x) { return x == "a" ? IndexValue("b") : IndexValue("a"); };
  IndexPolynomial p;
  p.add("a", 1, inv);
  p.add("b", 1, inv);
  CHECK(p.is_zero());
  auto self = [](const IndexValue& x) { return x; };
  IndexPolynomial q;
  q.add("c", 1, self);
  q.add("c", 1, self);
  CHECK(q.is_zero());
}

TEST_CASE("axioms along random walks") {
  for (auto s : {k31, "c: O1+ U2+ ; c: U1+ O2+", "l: O1+ U2+ U1+ O2+", "c: H1 H2 T3 T2 T1 H3", "c: E1 E2 E3 E2 E1 E3"}) {
    FuzzOptions o;
    o.steps = 120;
    o.cap = 8;
    o.seed = 17;
    FuzzReport r = fuzz(GaussDiagram::parse(s), o);
    for (auto& v : r.violations) INFO(s << " " << v.check << " " << v.detail);
    CHECK(r.ok());
    CHECK(r.checks > 0);
  }
}

TEST_CASE("fault injection is detected") {
  FuzzOptions o;
  o.steps = 200;
  o.cap = 8;
  o.break_lk = true;
  o.indices = {"Ind"};
  FuzzReport r = fuzz(GaussDiagram::parse(k31), o);
  CHECK_FALSE(r.ok());
}

TEST_CASE("loop values pair up") {
  auto d = GaussDiagram::parse(k31);
  for (auto& name : evaluator_names()) {
    IndexEvaluator e = evaluator(name);
    if (!e.is_signed) continue;
    LoopValues lv = loop_values(e, d, 0);
    INFO(name);
    CHECK(lv.pairing_ok);
  }
}

TEST_CASE("classical diagrams") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    GaussDiagram d = random_planar(7, 15, rng);
    auto bad = classical_violations(d);
    INFO(d.serialize());
    CHECK(bad.empty());
  }
}

TEST_CASE("parity projection drops odd chords") {
  auto d = GaussDiagram::parse(k31);
  auto [p, f] = parity_projection(d, weak_parity_Ind2(d));
  CHECK(p.chord_count() == 1);
  CHECK(f.map == std::vector<int>{-1, -1, 0});
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(evaluator("nope"), Error);
  try {
    evaluator("nope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownIndex);
  }
  CHECK_THROWS_AS(evaluator("sign").evaluate(GaussDiagram::parse("c: T1 H1")), Error);
  CHECK_THROWS_AS(gaussian_n(GaussDiagram::parse("c: O1+ U2+ ; c: U1+ O2+"), 0), Error);
}
