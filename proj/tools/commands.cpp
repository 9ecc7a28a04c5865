#include "commands.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "chordal/based_matrix.hpp"
#include "chordal/biquandle.hpp"
#include "chordal/indices.hpp"
#include "chordal/surface.hpp"
#include "chordal/verify.hpp"

namespace chordal::cli {

using nlohmann::json;

namespace {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Virtual: return "virtual";
    case Flavor::Flat: return "flat";
    case Flavor::Free: return "free";
  }
  return "?";
}

const CatalogEntry& entry(const std::vector<CatalogEntry>& cat, const std::string& name) {
  const CatalogEntry* e = find_entry(cat, name);
  if (!e) throw Error(ErrorCode::UnknownName, "no catalog entry named " + name);
  return *e;
}

std::vector<const CatalogEntry*> entries(const std::vector<CatalogEntry>& cat, const std::vector<std::string>& names) {
  std::vector<const CatalogEntry*> out;
  if (names.empty())
    for (auto& e : cat) out.push_back(&e);
  for (auto& n : names) out.push_back(&entry(cat, n));
  return out;
}

int chord_arg(const GaussDiagram& d, int v, const char* what) {
  if (v < 1 || v > d.chord_count())
    throw Error(ErrorCode::BadArgument, std::string(what) + " must be a crossing between 1 and " +
                                            std::to_string(d.chord_count()));
  return v - 1;
}

IndexEvaluator named_evaluator(const std::string& name) {
  if (name == "bq_dihedral3") return biquandle_evaluator(name, FiniteBiquandle::dihedral(3));
  if (name == "bq_shift6") return biquandle_evaluator(name, FiniteBiquandle::shift(6));
  return evaluator(name);
}

// Runs f and returns null when the quantity is not defined for the input.
template <class F>
json guarded(F f) {
  try {
    return f();
  } catch (const Error&) {
    return nullptr;
  }
}

json path_json(const BasedDiagram& from, const std::vector<PathStep>& path) {
  json out = json::array();
  std::istringstream in(path_to_jsonl(from, path));
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

json certificate(const BasedDiagram& from, const BasedDiagram& to, const SearchBudget& budget) {
  json c;
  c["from"] = {{"diagram", from.d.serialize()}, {"mark", from.mark + 1}};
  c["to"] = {{"diagram", to.d.serialize()}, {"mark", to.mark + 1}};
  auto p = bounded_bfs(from, to, budget);
  c["found"] = p.has_value();
  if (p) {
    c["length"] = p->size();
    c["path"] = path_json(from, *p);
    c["replayed"] = replay_path(from, *p, to);
  }
  return c;
}

json budget_json(const SearchBudget& b) { return {{"depth", b.max_depth}, {"crossings", b.max_crossings}}; }

}  // namespace

std::vector<std::string> index_names() {
  auto n = evaluator_names();
  n.push_back("bq_dihedral3");
  n.push_back("bq_shift6");
  return n;
}

std::string resolve_index(const std::string& name) {
  if (name == "nprime") return "derived1";
  if (name == "nsecond") return "derived2";
  auto all = index_names();
  if (std::find(all.begin(), all.end(), name) == all.end())
    throw Error(ErrorCode::UnknownIndex, "unknown index " + name);
  return name;
}

Outcome cmd_compute(const std::vector<CatalogEntry>& cat, const std::vector<std::string>& names,
                    const std::vector<std::string>& indices) {
  // report key -> evaluator name
  std::vector<std::pair<std::string, std::string>> idx;
  for (auto& i : indices) {
    if (i == "all") {
      for (auto& n : index_names()) idx.push_back({n, n});
    } else {
      idx.push_back({i, resolve_index(i)});
    }
  }
  Outcome out;
  out.report = json::array();
  for (const CatalogEntry* e : entries(cat, names)) {
    const GaussDiagram& d = e->diagram;
    int n = d.chord_count();
    json r;
    r["name"] = e->name;
    r["code"] = d.serialize();
    r["flavor"] = flavor_name(d.flavor());
    r["genus"] = guarded([&] { return json(Surface(d).genus()); });
    auto nvals = guarded([&] { return json(gaussian_n_all(d)); });
    auto d1 = guarded([&] {
      json a = json::array();
      for (auto& x : derived_parity(d, 1)) a.push_back(x.to_string());
      return a;
    });
    auto d2 = guarded([&] {
      json a = json::array();
      for (auto& x : derived_parity(d, 2)) a.push_back(x.to_string());
      return a;
    });
    auto ind_values = guarded([&] { return json(induced_Ind(d)); });
    json crossings = json::array();
    for (int v = 0; v < n; ++v) {
      json c;
      c["id"] = v + 1;
      c["sign"] = d.flavor() == Flavor::Virtual ? json(d.sign(v)) : json(nullptr);
      c["self"] = d.is_self(v);
      bool self = d.is_self(v);
      c["Ind"] = self ? guarded([&] { return json(gaussian_Ind(d, v)); }) : json(nullptr);
      c["n"] = self && !nvals.is_null() ? nvals[v] : json(nullptr);
      c["hp"] = self ? guarded([&] { return json(hp_vanishes(d, v) ? 0 : 1); }) : json(nullptr);
      c["nprime"] = d1.is_null() ? json(nullptr) : d1[v];
      c["nsecond"] = d2.is_null() ? json(nullptr) : d2[v];
      c["secondary"] = self ? guarded([&] {
        auto s = secondary_index(d, v);
        return json(coset_sum_to_string(s, nvals.is_null() ? 0 : std::abs(nvals[v].get<int>())));
      })
                            : json(nullptr);
      c["induced"] = ind_values.is_null() ? json(nullptr) : ind_values[v];
      c["vkp"] = self ? guarded([&] {
        auto [i1, c1] = vkp_index(d, v, 1);
        auto [i2, c2] = vkp_index(d, v, 2);
        return json{{"Ind", i1}, {"u1", c1}, {"u2", c2}};
      })
                      : json(nullptr);
      crossings.push_back(c);
    }
    r["crossings"] = crossings;
    json polys;
    polys["f"] = guarded([&] {
      if (d.flavor() != Flavor::Virtual || d.component_count() != 1)
        throw Error(ErrorCode::UnsupportedFlavor, "f is defined on signed knots");
      auto t = tilde_adapter(evaluator("Ind"));
      return json(lk_polynomial(d, t, {"(0,+1)", "(0,-1)"}).to_string());
    });
    polys["u"] = guarded([&] { return json(poly_to_string(turaev_u(d))); });
    r["polynomials"] = polys;
    r["based_matrix"] = guarded([&] { return json::parse(knot_based_matrix(d).to_json()); });
    if (!idx.empty()) {
      json iv;
      for (auto& [key, name] : idx) iv[key] = guarded([&] { return json(named_evaluator(name).evaluate(d)); });
      r["indices"] = iv;
    }
    out.report.push_back(r);
  }
  return out;
}

Outcome cmd_fuzz(const std::vector<CatalogEntry>& cat, const std::vector<std::string>& names, const FuzzArgs& a) {
  FuzzOptions opt;
  opt.steps = a.steps;
  opt.cap = a.cap;
  opt.seed = a.seed;
  for (auto& i : a.indices) opt.indices.push_back(resolve_index(i));
  opt.break_lk = a.break_lk;
  Outcome out;
  out.report = json::array();
  for (const CatalogEntry* e : entries(cat, names)) {
    FuzzReport fr = fuzz(e->diagram, opt);
    json r;
    r["name"] = e->name;
    r["steps"] = fr.steps;
    r["checks"] = fr.checks;
    r["skipped"] = fr.skipped;
    json vs = json::array();
    for (auto& v : fr.violations) {
      json m = json::array();
      for (auto& mv : v.moves) m.push_back(json::parse(mv.to_json()));
      vs.push_back({{"check", v.check}, {"detail", v.detail}, {"before", v.before.serialize()}, {"moves", m}});
    }
    r["violations"] = vs;
    const GaussDiagram& d = e->diagram;
    if (d.flavor() == Flavor::Virtual && d.component_count() == 1 && Surface(d).genus() == 0) {
      auto cv = classical_violations(d);
      r["classical"] = cv;
      if (!cv.empty()) out.status = kViolation;
    }
    if (!fr.ok()) out.status = kViolation;
    out.report.push_back(r);
  }
  return out;
}

Outcome cmd_substitute(const std::vector<CatalogEntry>& cat, const std::string& name, int v, int w,
                       const SearchBudget& budget) {
  const GaussDiagram& d = entry(cat, name).diagram;
  int a = chord_arg(d, v, "--from"), b = chord_arg(d, w, "--to");
  Outcome out;
  if (d.flavor() == Flavor::Virtual && d.sign(a) != d.sign(b))
    out.warnings.push_back("crossings have opposite signs; no path is expected");
  json c = certificate({d, a}, {d, b}, budget);
  c["name"] = name;
  c["budget"] = budget_json(budget);
  if (!c["found"].get<bool>()) c["outcome"] = "BudgetExhausted";
  out.status = c["found"].get<bool>() && c["replayed"].get<bool>() ? kPass : kViolation;
  out.report = c;
  return out;
}

Outcome cmd_wrapcheck(const std::vector<CatalogEntry>& cat, const std::string& name, int v, int n, bool swap,
                      const SearchBudget& budget) {
  const GaussDiagram& d = entry(cat, name).diagram;
  Outcome out;
  json certs = json::array();
  if (swap) {
    bool free = d.flavor() == Flavor::Free;
    for (auto [v1, v2] : i2_pairs(d))
      for (auto [a, b] : {std::pair{v1, v2}, std::pair{v2, v1}}) {
        json best;
        for (int s : {1, -1}) {
          if (free && s < 0) continue;
          json c = certificate({d, a}, wrap({d, b}, s), budget);
          c["kind"] = "swap";
          c["shift"] = s;
          bool better = best.is_null() || (c["found"].get<bool>() &&
                                           (!best["found"].get<bool>() || c["length"] < best["length"]));
          if (better) best = c;
        }
        certs.push_back(best);
      }
  } else {
    if (n == 1 || n < 0) throw Error(ErrorCode::BadArgument, "wrap reduction needs n = 0 or n >= 2");
    if (n >= 2 && d.flavor() == Flavor::Free)
      throw Error(ErrorCode::UnsupportedFlavor, "free wrapping is defined for orders 0 and 1");
    std::vector<int> marks;
    if (v == 0) {
      for (int c = 0; c < d.chord_count(); ++c) marks.push_back(c);
    } else {
      marks.push_back(chord_arg(d, v, "--crossing"));
    }
    for (int m : marks) {
      BasedDiagram b{d, m};
      json c = n == 0 ? certificate(b, b, budget) : certificate(wrap(b, n), wrap(b, n - 2), budget);
      c["kind"] = "reduction";
      c["order"] = n;
      certs.push_back(c);
    }
  }
  for (auto& c : certs)
    if (!c["found"].get<bool>() || !c["replayed"].get<bool>()) out.status = kViolation;
  out.report = {{"name", name}, {"budget", budget_json(budget)}, {"certificates", certs}};
  return out;
}

Outcome cmd_reduce(const std::vector<CatalogEntry>& cat, const std::string& name, int v, bool graded) {
  const GaussDiagram& d = entry(cat, name).diagram;
  int a = chord_arg(d, v, "--crossing");
  BasedMatrix t = based_matrix_of(d, a, graded);
  Outcome out;
  out.report = {{"name", name},
                {"crossing", v},
                {"matrix", json::parse(t.to_json())},
                {"special", [&] {
                   auto sp = find_special(t);
                   return json{{"annihilating", sp.annihilating}, {"core", sp.core}, {"complementary", sp.complementary}};
                 }()},
                {"primitive", json::parse(reduce_primitive(t).to_json())},
                {"key", canonical_key(t)}};
  return out;
}

namespace {

std::string cell(const json& x) {
  if (x.is_null()) return ".";
  if (x.is_string()) return x.get<std::string>();
  return x.dump();
}

}  // namespace

std::string to_text(const json& report) {
  std::ostringstream o;
  auto one = [&](const json& r) {
    if (r.contains("crossings")) {
      o << r["name"].get<std::string>() << "  " << r["code"].get<std::string>() << "  (" << r["flavor"].get<std::string>()
        << ", genus " << cell(r["genus"]) << ")\n";
      const char* cols[] = {"id", "sign", "Ind", "n", "hp", "nprime", "nsecond", "secondary", "induced"};
      o << " ";
      for (const char* k : cols) o << " " << std::setw(11) << k;
      o << "\n";
      for (auto& c : r["crossings"]) {
        o << " ";
        for (const char* k : cols) o << " " << std::setw(11) << cell(c[k]);
        o << "\n";
      }
      o << "  f = " << cell(r["polynomials"]["f"]) << "   u = " << cell(r["polynomials"]["u"]) << "\n";
      if (r.contains("indices"))
        for (auto& [k, vals] : r["indices"].items()) {
          o << "  " << k << ":";
          if (vals.is_null()) o << " .";
          else
            for (auto& x : vals) o << " [" << cell(x) << "]";
          o << "\n";
        }
    } else if (r.contains("violations")) {
      o << r["name"].get<std::string>() << ": " << r["steps"] << " steps, " << r["checks"] << " checks, "
        << r["violations"].size() << " violations\n";
      for (auto& v : r["violations"])
        o << "  " << cell(v["check"]) << " " << cell(v["detail"]) << "\n    before " << cell(v["before"])
          << "\n    moves " << v["moves"].dump() << "\n";
      if (r.contains("classical"))
        for (auto& c : r["classical"]) o << "  classical: " << cell(c) << "\n";
    } else {
      o << r.dump(2) << "\n";
    }
  };
  if (report.is_array()) {
    for (auto& r : report) one(r);
  } else {
    one(report);
  }
  return o.str();
}

}  // namespace chordal::cli
