#include "chordal/verify.hpp"

#include <set>
#include <sstream>

#include "chordal/surface.hpp"

namespace chordal {

namespace {

std::string multiset_to_string(const ClassMultiset& m) {
  std::string out;
  for (auto& [k, c] : m) {
    if (!out.empty()) out += ';';
    out += k + "*" + std::to_string(c);
  }
  return out;
}

ClassMultiset multiset_from_string(const std::string& s) {
  ClassMultiset m;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ';')) {
    auto star = item.rfind('*');
    m[item.substr(0, star)] = std::stoi(item.substr(star + 1));
  }
  return m;
}

IndexEvaluator broken_Ind() {
  IndexEvaluator e = evaluator("Ind");
  e.evaluate = [](const GaussDiagram& d) {
    std::vector<IndexValue> out;
    for (int v = 0; v < d.chord_count(); ++v) out.push_back(std::to_string(d.sign(v) * gaussian_Ind(d, v)));
    return out;
  };
  return e;
}

struct Tracked {
  IndexEvaluator e;
  std::vector<IndexValue> loops;
  IndexPolynomial poly;
  bool with_poly = false;
};

constexpr size_t kMaxViolations = 20;

}  // namespace

IndexEvaluator biquandle_evaluator(const std::string& name, const FiniteBiquandle& b) {
  TildeQuotient q = tilde_quotient(b);
  IndexEvaluator e;
  e.name = name;
  e.is_signed = true;
  e.evaluate = [b](const GaussDiagram& d) {
    std::vector<IndexValue> out;
    for (auto& m : biquandle_index(d, b)) out.push_back(multiset_to_string(m));
    return out;
  };
  e.involution = [q](const IndexValue& x) { return multiset_to_string(involution(q, multiset_from_string(x))); };
  return e;
}

FuzzReport fuzz(const GaussDiagram& start, const FuzzOptions& opt) {
  FuzzReport rep;
  rep.start = start.serialize();
  bool virt = start.flavor() == Flavor::Virtual;
  auto add = [&](const std::string& check, const std::string& detail, const GaussDiagram& before,
                 std::vector<MoveInstance> moves) {
    if (rep.violations.size() < kMaxViolations) rep.violations.push_back({check, detail, before, std::move(moves)});
  };

  std::vector<Tracked> tracked;
  std::vector<std::string> names = opt.indices.empty() ? evaluator_names() : opt.indices;
  std::vector<IndexEvaluator> evs;
  for (auto& nm : names) evs.push_back(opt.break_lk && nm == "Ind" ? broken_Ind() : evaluator(nm));
  std::vector<FiniteBiquandle> bqs;
  if (opt.biquandles && virt && opt.indices.empty()) {
    bqs = {FiniteBiquandle::dihedral(3), FiniteBiquandle::shift(6)};
    evs.push_back(biquandle_evaluator("bq_dihedral3", bqs[0]));
    evs.push_back(biquandle_evaluator("bq_shift6", bqs[1]));
  }
  for (auto& e : evs) {
    Tracked t{e, {}, {}, false};
    try {
      e.evaluate(start);
    } catch (const Error&) {
      rep.skipped.push_back(e.name);
      continue;
    }
    if (opt.lk_invariance && virt && e.is_signed) {
      std::set<IndexValue> loops;
      for (int c = 0; c < start.component_count(); ++c) {
        LoopValues lv = loop_values(e, start, c);
        loops.insert({lv.l_plus, lv.l_minus, lv.r_plus, lv.r_minus});
        if (!lv.pairing_ok) add("loop-pairing", e.name + " component " + std::to_string(c + 1), start, {});
      }
      t.loops.assign(loops.begin(), loops.end());
      t.poly = lk_polynomial(start, e, t.loops);
      t.with_poly = true;
    }
    tracked.push_back(std::move(t));
  }

  std::vector<std::vector<IndexValue>> vals;
  for (auto& t : tracked) vals.push_back(t.e.evaluate(start));
  std::vector<long> col_count;
  for (auto& b : bqs) col_count.push_back(static_cast<long>(colorings(start, b).size()));
  long modulus = virt && start.chord_count() ? derived_parity(start, 1)[0].modulus : -1;

  std::mt19937_64 rng(opt.seed);
  auto walk = random_walk(start, opt.steps, opt.cap, rng);
  std::vector<GaussDiagram> trajectory{start};
  GaussDiagram cur = start;
  for (auto& st : walk) {
    ++rep.steps;
    const GaussDiagram& nd = st.d;
    trajectory.push_back(nd);
    for (size_t i = 0; i < tracked.size(); ++i) {
      auto& t = tracked[i];
      auto next = t.e.evaluate(nd);
      for (int v = 0; v < cur.chord_count(); ++v) {
        int w = st.f.map[v];
        if (w < 0) continue;
        ++rep.checks;
        if (vals[i][v] != next[w])
          add("I0", t.e.name + " chord " + std::to_string(v + 1) + ": " + vals[i][v] + " -> " + next[w], cur, {st.move});
      }
      for (auto [a, b] : i2_pairs(nd)) {
        ++rep.checks;
        if (next[b] != t.e.star(next[a]))
          add(t.e.is_signed ? "I2+" : "I2", t.e.name + " pair " + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                                ": " + next[a] + " | " + next[b], cur, {st.move});
      }
      if (t.with_poly) {
        ++rep.checks;
        IndexPolynomial p = lk_polynomial(nd, t.e, t.loops);
        if (!(p == t.poly))
          add("lk-invariance", t.e.name + ": " + t.poly.to_string() + " -> " + p.to_string(), cur, {st.move});
        t.poly = p;
      }
      vals[i] = std::move(next);
    }
    if (virt) {
      auto ind = gaussian_Ind_all(nd);
      auto n = gaussian_n_all(nd);
      for (int v = 0; v < nd.chord_count(); ++v) {
        ++rep.checks;
        int ind_v = opt.break_lk ? nd.sign(v) * ind[v] : ind[v];
        if (ind_v != nd.sign(v) * n[v])
          add("Ind=sgn*n", "chord " + std::to_string(v + 1) + ": " + std::to_string(ind_v) + " vs " +
                                 std::to_string(nd.sign(v) * n[v]), cur, {st.move});
      }
    }
    for (size_t i = 0; i < bqs.size(); ++i) {
      ++rep.checks;
      long c = static_cast<long>(colorings(nd, bqs[i]).size());
      if (c != col_count[i])
        add("colorings", std::to_string(col_count[i]) + " -> " + std::to_string(c), cur, {st.move});
      col_count[i] = c;
    }
    if (nd.chord_count() && modulus >= 0) {
      ++rep.checks;
      long m = derived_parity(nd, 1)[0].modulus;
      if (m != modulus) add("derived-modulus", std::to_string(modulus) + " -> " + std::to_string(m), cur, {st.move});
    }
    if (rep.violations.size() >= kMaxViolations) break;
    cur = nd;
  }

  auto record = [&](const std::string& check, const ParityReport& pr) {
    rep.checks += pr.r1_sites + pr.r3_sites;
    for (auto& v : pr.violations) add(check, v, start, {});
  };
  auto as_long = [](const std::vector<int>& x) { return std::vector<long>(x.begin(), x.end()); };
  if (start.flavor() == Flavor::Free) return rep;
  record("parity n", check_oriented_parity([&](const GaussDiagram& d) { return as_long(gaussian_n_all(d)); }, trajectory));
  if (modulus >= 0) {
    for (int k : {1, 2}) {
      auto p = [k](const GaussDiagram& d) {
        std::vector<long> out;
        for (auto& r : derived_parity(d, k)) out.push_back(r.value);
        return out;
      };
      std::vector<GaussDiagram> nonempty;
      for (auto& d : trajectory)
        if (d.chord_count()) nonempty.push_back(d);
      record("parity derived" + std::to_string(k), check_oriented_parity(p, nonempty, modulus));
    }
  }
  record("parity hp", check_homological_parity(trajectory));
  return rep;
}

GaussDiagram random_planar(int max_crossings, int steps, std::mt19937_64& rng) {
  // A braid closure whose permutation is one cycle, then a planar walk.
  std::uniform_int_distribution<int> strands_d(2, 4);
  for (;;) {
    int strands = strands_d(rng);
    std::uniform_int_distribution<int> len_d(strands - 1, std::max(strands - 1, max_crossings - 2));
    std::uniform_int_distribution<int> gen_d(1, strands - 1);
    std::bernoulli_distribution inv(0.5);
    std::vector<int> word;
    int len = len_d(rng);
    for (int i = 0; i < len; ++i) word.push_back(gen_d(rng) * (inv(rng) ? -1 : 1));
    GaussDiagram d = braid_closure(strands, word);
    if (d.component_count() != 1) continue;
    auto planar = [](const GaussDiagram& x) { return Surface(x).genus() == 0; };
    auto walk = random_walk(d, steps, max_crossings, rng, planar);
    return walk.empty() ? d : walk.back().d;
  }
}

std::vector<std::string> classical_violations(const GaussDiagram& d) {
  std::vector<std::string> out;
  if (Surface(d).genus() != 0) out.push_back("not planar");
  int n = d.chord_count();
  std::vector<IndexEvaluator> evs;
  for (auto& nm : evaluator_names()) evs.push_back(evaluator(nm));
  evs.push_back(biquandle_evaluator("bq_dihedral3", FiniteBiquandle::dihedral(3)));
  evs.push_back(biquandle_evaluator("bq_shift6", FiniteBiquandle::shift(6)));
  for (auto& e : evs) {
    auto vals = e.evaluate(d);
    std::map<int, IndexValue> by_sign;
    for (int v = 0; v < n; ++v) {
      auto [it, fresh] = by_sign.emplace(d.sign(v), vals[v]);
      if (!fresh && it->second != vals[v])
        out.push_back(e.name + " differs on sign " + std::to_string(d.sign(v)) + ": " + it->second + " vs " + vals[v]);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (gaussian_Ind(d, v) != 0) out.push_back("Ind(" + std::to_string(v + 1) + ") != 0");
    if (!hp_vanishes(d, v)) out.push_back("hp(" + std::to_string(v + 1) + ") != 0");
  }
  if (!turaev_u(d).empty()) out.push_back("u = " + poly_to_string(turaev_u(d)));
  if (n) {
    for (int k : {1, 2})
      for (auto& r : derived_parity(d, k))
        if (r.value != 0) out.push_back("derived" + std::to_string(k) + " = " + r.to_string());
  }
  return out;
}

}  // namespace chordal
