#include "chordal/indices.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "chordal/based_matrix.hpp"
#include "chordal/surface.hpp"

namespace chordal {

namespace {

[[noreturn]] void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

int sgn(const GaussDiagram& d, int v) { return d.flavor() == Flavor::Virtual ? d.sign(v) : 1; }

void need_self(const GaussDiagram& d, int v) {
  if (v < 0 || v >= d.chord_count()) fail(ErrorCode::BadArgument, "no such chord");
  if (!d.is_self(v)) fail(ErrorCode::NotSelfCrossing, "chord joins two components");
}

bool on_arc(const std::vector<SlotRef>& arc, SlotRef s) { return std::find(arc.begin(), arc.end(), s) != arc.end(); }

std::string str(long x) { return std::to_string(x); }

}  // namespace

long reduce_mod(long x, long m) {
  if (m == 0) return x;
  long r = ((x % m) + m) % m;
  if (r > m / 2) r -= m;
  return r;
}

std::string Residue::to_string() const {
  return modulus == 0 ? str(value) : str(value) + " mod " + str(modulus);
}

void IndexPolynomial::add(const IndexValue& x, long c, const std::function<IndexValue(const IndexValue&)>& inv) {
  IndexValue y = inv ? inv(x) : x;
  if (y == x) {
    int& k = z2[x];
    k = static_cast<int>(((k + c) % 2 + 2) % 2);
    if (k == 0) z2.erase(x);
    return;
  }
  const IndexValue& rep = std::min(x, y);
  long& k = z[rep];
  k += rep == x ? c : -c;
  if (k == 0) z.erase(rep);
}

std::string IndexPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream o;
  bool first = true;
  for (auto& [x, c] : z) {
    if (!first) o << (c < 0 ? " - " : " + ");
    else if (c < 0) o << "-";
    first = false;
    if (std::abs(c) != 1) o << std::abs(c) << "*";
    o << "[" << x << "]";
  }
  for (auto& [x, c] : z2) {
    (void)c;
    if (!first) o << " + ";
    first = false;
    o << "[" << x << "]_2";
  }
  return o.str();
}

std::string poly_to_string(const Poly& p) {
  if (p.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    auto [e, c] = *it;
    if (!first) o << (c < 0 ? " - " : " + ");
    else if (c < 0) o << "-";
    first = false;
    long a = std::abs(c);
    if (e == 0) {
      o << a;
      continue;
    }
    if (a != 1) o << a;
    o << "t";
    if (e != 1) o << "^" << e;
  }
  return o.str();
}

int gaussian_Ind(const GaussDiagram& d, int v) {
  if (d.flavor() != Flavor::Virtual) fail(ErrorCode::UnsupportedFlavor, "Ind needs signed crossings");
  need_self(d, v);
  auto plus = d.positive_half(v);
  int total = 0;
  for (int w = 0; w < d.chord_count(); ++w) {
    if (w == v) continue;
    bool head_in = on_arc(plus, d.where(w, End::Under));
    bool tail_in = on_arc(plus, d.where(w, End::Over));
    if (head_in == tail_in) continue;
    total += d.sign(w) * (head_in ? 1 : -1);
  }
  return total;
}

int linking_sum(const GaussDiagram& d, int v) {
  need_self(d, v);
  int total = 0;
  for (int w = 0; w < d.chord_count(); ++w)
    if (w != v) total += d.lk_pair(v, w);
  return total;
}

std::vector<int> gaussian_Ind_all(const GaussDiagram& d) {
  std::vector<int> r(d.chord_count(), 0);
  for (int v = 0; v < d.chord_count(); ++v)
    if (d.is_self(v)) r[v] = gaussian_Ind(d, v);
  return r;
}

std::vector<int> gaussian_n_all(const GaussDiagram& d) {
  std::vector<int> r(d.chord_count(), 0);
  if (d.chord_count() == 0) return r;
  Surface s(d);
  for (int v = 0; v < d.chord_count(); ++v) {
    if (!d.is_self(v)) continue;
    Walk half = s.left_half_walk(v);
    for (int c = 0; c < d.component_count(); ++c) r[v] += s.inter(s.component_walk(c), half);
  }
  return r;
}

int gaussian_n(const GaussDiagram& d, int v) {
  need_self(d, v);
  Surface s(d);
  Walk half = s.left_half_walk(v);
  int total = 0;
  for (int c = 0; c < d.component_count(); ++c) total += s.inter(s.component_walk(c), half);
  return total;
}

Poly turaev_u(const GaussDiagram& d) {
  GaussDiagram f = d.flavor() == Flavor::Virtual ? d.to_flat() : d;
  Poly p;
  auto n = gaussian_n_all(f);
  for (int v = 0; v < f.chord_count(); ++v) {
    if (!f.is_self(v) || n[v] == 0) continue;
    long& c = p[std::abs(n[v])];
    c += n[v] > 0 ? 1 : -1;
    if (c == 0) p.erase(std::abs(n[v]));
  }
  return p;
}

int wriggle(const GaussDiagram& d) {
  if (d.component_count() != 2) fail(ErrorCode::BadArgument, "wriggle needs two components");
  int w = 0;
  for (int v = 0; v < d.chord_count(); ++v) {
    if (d.is_self(v)) continue;
    auto [o, u] = d.component_index(v);
    (void)u;
    w += sgn(d, v) * (o == 1 ? -1 : 1);
  }
  return w;
}

bool hp_vanishes(const GaussDiagram& d, int v) {
  need_self(d, v);
  Surface s(d);
  int c = d.where(v, End::Over).comp;
  return s.is_multiple(s.coords(s.left_half_walk(v)), s.coords(s.component_walk(c)));
}

int f_gamma(const GaussDiagram& d, int v, const std::vector<int>& gamma) {
  need_self(d, v);
  Surface s(d);
  if (static_cast<int>(gamma.size()) != s.cycle_rank()) fail(ErrorCode::BadArgument, "gamma has the wrong rank");
  Eigen::VectorXi g(gamma.size());
  for (size_t i = 0; i < gamma.size(); ++i) g(i) = gamma[i];
  int c = d.where(v, End::Over).comp;
  if (s.pair(s.coords(s.component_walk(c)), g) != 0) fail(ErrorCode::BadArgument, "gamma is not admissible");
  return s.pair(s.coords(s.left_half_walk(v)), g);
}

std::vector<Residue> derived_parity(const GaussDiagram& d, int order) {
  if (d.flavor() != Flavor::Virtual) fail(ErrorCode::UnsupportedFlavor, "derived parity needs signed crossings");
  int V = d.chord_count();
  std::vector<long> p(V, 0);
  auto n = gaussian_n_all(d);
  for (int v = 0; v < V; ++v) p[v] = n[v];
  long m = 0;
  if (V == 0 || order <= 0) {
    std::vector<Residue> r;
    for (long x : p) r.push_back({x, 0});
    return r;
  }
  Surface s(d);
  auto ind = gaussian_Ind_all(d);
  std::vector<Walk> left(V), minus(V);
  for (int v = 0; v < V; ++v)
    if (d.is_self(v)) {
      left[v] = s.left_half_walk(v);
      minus[v] = s.half_walk(v, Half::Minus);
    }
  for (int k = 0; k < order; ++k) {
    long total = 0;
    for (int v = 0; v < V; ++v) total += p[v] * ind[v];
    m = std::gcd(m, std::abs(total));
    std::vector<long> q(V, 0);
    for (int v = 0; v < V; ++v) {
      if (!d.is_self(v)) continue;
      long acc = 0;
      for (int w = 0; w < V; ++w)
        if (d.is_self(w) && p[w] != 0) acc += p[w] * s.inter(left[v], minus[w]);
      q[v] = reduce_mod(acc, m);
    }
    p = q;
  }
  std::vector<Residue> r;
  for (long x : p) r.push_back({x, m});
  return r;
}

CosetSum secondary_index(const GaussDiagram& d, int v) {
  need_self(d, v);
  auto n = gaussian_n_all(d);
  long m = std::abs(n[v]);
  CosetSum out;
  for (int w = 0; w < d.chord_count(); ++w) {
    if (w == v) continue;
    int l = d.lk_pair(v, w);
    if (l == 0) continue;
    long c = m == 0 ? l * n[w] : ((l * n[w]) % m + m) % m;
    if (c == 0) continue;
    long& k = out[c];
    k += l;
    if (k == 0) out.erase(c);
  }
  return out;
}

std::string coset_sum_to_string(const CosetSum& s, long modulus) {
  if (s.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (auto& [c, k] : s) {
    if (!first) o << (k < 0 ? " - " : " + ");
    else if (k < 0) o << "-";
    first = false;
    if (std::abs(k) != 1) o << std::abs(k) << "*";
    o << "[" << c << "]";
  }
  if (modulus != 0) o << " mod " << modulus;
  return o.str();
}

std::vector<int> weak_parity_Ind2(const GaussDiagram& d) {
  auto ind = gaussian_Ind_all(d);
  std::vector<int> psi(d.chord_count(), 0);
  for (int v = 0; v < d.chord_count(); ++v) psi[v] = d.is_self(v) && ind[v] % 2 != 0 ? 1 : 0;
  return psi;
}

std::pair<GaussDiagram, Correspondence> parity_projection(const GaussDiagram& d, const std::vector<int>& psi) {
  std::vector<int> keep;
  Correspondence f;
  f.map.assign(d.chord_count(), -1);
  for (int v = 0; v < d.chord_count(); ++v)
    if (psi[v] == 0) {
      f.map[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }
  f.target_count = static_cast<int>(keep.size());
  return {d.restrict_to(keep), f};
}

std::vector<IndexValue> induced_Ind(const GaussDiagram& d) {
  auto psi = weak_parity_Ind2(d);
  auto [proj, f] = parity_projection(d, psi);
  auto ind = gaussian_Ind_all(proj);
  std::vector<IndexValue> out(d.chord_count());
  for (int v = 0; v < d.chord_count(); ++v) {
    if (!d.is_self(v)) out[v] = "mixed";
    else out[v] = psi[v] ? "•" : str(ind[f.map[v]]);
  }
  return out;
}

std::pair<int, long> vkp_index(const GaussDiagram& d, int v, int m) {
  int ind = gaussian_Ind(d, v);
  auto sm = d.smoothing(v, Smoothing::Unoriented);
  long c = 0;
  for (const auto& x : sm) {
    auto u = turaev_u(x);
    if (auto it = u.find(m); it != u.end()) c += it->second;
  }
  return {ind, c};
}

namespace {

GaussDiagram component_knot(const GaussDiagram& d, int c) {
  std::vector<int> keep;
  for (const Slot& s : d.component(c).slots)
    if (s.end == End::Over && d.is_self(s.chord)) keep.push_back(s.chord);
  GaussDiagram r = d.restrict_to(keep);
  // restrict_to keeps every component; drop all but c
  std::vector<Component> comps{r.component(c)};
  return GaussDiagram(r.flavor(), comps, r.signs());
}

// Self-crossing v inside the knot formed by its component alone.
std::pair<GaussDiagram, int> knot_of(const GaussDiagram& d, int v) {
  if (d.component_count() == 1) return {d, v};
  int c = d.where(v, End::Over).comp;
  std::vector<int> keep;
  for (int w = 0; w < d.chord_count(); ++w)
    if (d.is_self(w) && d.where(w, End::Over).comp == c) keep.push_back(w);
  GaussDiagram r = d.restrict_to(keep);
  std::vector<Component> comps{r.component(c)};
  int id = static_cast<int>(std::find(keep.begin(), keep.end(), v) - keep.begin());
  return {GaussDiagram(r.flavor(), comps, r.signs()), id};
}

GaussDiagram swap_adjacent(const GaussDiagram& d, int c) {
  auto comps = d.components();
  std::swap(comps[c], comps[c + 1]);
  return GaussDiagram(d.flavor(), comps, d.signs());
}

}  // namespace

std::string fingerprint(const GaussDiagram& d) {
  GaussDiagram f = d.flavor() == Flavor::Virtual ? d.to_flat() : d;
  std::ostringstream o;
  int k = f.component_count();
  o << k << "c";
  for (int c = 0; c < k; ++c) {
    GaussDiagram knot = component_knot(f, c);
    o << " u" << c + 1 << "=" << poly_to_string(turaev_u(knot));
    o << " bm" << c + 1 << "=[" << canonical_key(knot_based_matrix(knot)) << "]";
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      int lk = 0;
      for (int v = 0; v < f.chord_count(); ++v) {
        auto [o1, u1] = f.component_index(v);
        if (o1 == a + 1 && u1 == b + 1) ++lk;
        if (o1 == b + 1 && u1 == a + 1) --lk;
      }
      o << " lk" << a + 1 << b + 1 << "=" << lk;
    }
  return o.str();
}

std::string smoothing_fingerprint(const GaussDiagram& d, int v, Smoothing kind) {
  need_self(d, v);
  int c = d.where(v, End::Over).comp;
  GaussDiagram x = d.smoothing(v, kind)[0];
  GaussDiagram star = kind == Smoothing::Oriented ? swap_adjacent(x, c) : x.reversed_component(c);
  return fingerprint(x) + " / " + fingerprint(star);
}

namespace {

IndexValue swap_halves(const IndexValue& x) {
  auto k = x.find(" / ");
  if (k == std::string::npos) return x;
  return x.substr(k + 3) + " / " + x.substr(0, k);
}

IndexValue negate_int(const IndexValue& x) {
  if (x == "mixed" || x == "n/a") return x;
  return str(-std::stol(x));
}

IndexValue negate_residue(const IndexValue& x) {
  auto k = x.find(" mod ");
  if (k == std::string::npos) return negate_int(x);
  long m = std::stol(x.substr(k + 5));
  return Residue{reduce_mod(-std::stol(x.substr(0, k)), m), m}.to_string();
}

// Secondary values: negate coefficients and cosets.
IndexValue secondary_star(const IndexValue& x) {
  if (x == "mixed") return x;
  auto k = x.find(" mod ");
  long m = k == std::string::npos ? 0 : std::stol(x.substr(k + 5));
  CosetSum s;
  std::string body = x.substr(0, k);
  // parse terms "[c]" with optional coefficient and sign
  std::istringstream in(body);
  std::string tok;
  long sign = 1, coef = 1;
  while (in >> tok) {
    if (tok == "0") break;
    if (tok == "+") { sign = 1; continue; }
    if (tok == "-") { sign = -1; continue; }
    if (tok[0] == '-') { sign = -1; tok = tok.substr(1); }
    auto star = tok.find('*');
    if (star != std::string::npos) { coef = std::stol(tok.substr(0, star)); tok = tok.substr(star + 1); }
    long c = std::stol(tok.substr(1, tok.size() - 2));
    long nc = m == 0 ? -c : ((-c) % m + m) % m;
    s[nc] -= sign * coef;
    sign = 1;
    coef = 1;
  }
  return coset_sum_to_string(s, m);
}

IndexEvaluator make(std::string name, bool is_signed, std::function<std::vector<IndexValue>(const GaussDiagram&)> f,
                    std::function<IndexValue(const IndexValue&)> inv = nullptr) {
  IndexEvaluator e;
  e.name = std::move(name);
  e.is_signed = is_signed;
  e.evaluate = std::move(f);
  e.involution = inv ? std::move(inv) : [](const IndexValue& x) { return x; };
  return e;
}

template <class F>
std::vector<IndexValue> per_self(const GaussDiagram& d, F f) {
  std::vector<IndexValue> out(d.chord_count());
  for (int v = 0; v < d.chord_count(); ++v) out[v] = d.is_self(v) ? f(v) : IndexValue("mixed");
  return out;
}

}  // namespace

std::vector<std::string> evaluator_names() {
  return {"sign", "component", "order", "Ind", "n", "secondary", "derived1", "derived2", "induced", "vkp1",
          "vkp2", "smooth_or", "smooth_un", "bm", "bm_graded", "i++", "i+-", "i-+", "i--"};
}

IndexEvaluator evaluator(const std::string& name) {
  if (name == "sign")
    return make(name, true, [](const GaussDiagram& d) {
      if (d.flavor() != Flavor::Virtual) fail(ErrorCode::UnsupportedFlavor, "sign needs signed crossings");
      std::vector<IndexValue> out;
      for (int v = 0; v < d.chord_count(); ++v) out.push_back(sgn(d, v) > 0 ? "+" : "-");
      return out;
    }, [](const IndexValue& x) { return IndexValue(x == "+" ? "-" : "+"); });
  if (name == "component")
    return make(name, false, [](const GaussDiagram& d) {
      std::vector<IndexValue> out;
      for (int v = 0; v < d.chord_count(); ++v) {
        auto [o, u] = d.component_index(v);
        out.push_back("(" + str(o) + "," + str(u) + ")");
      }
      return out;
    });
  if (name == "order")
    return make(name, false, [](const GaussDiagram& d) {
      std::vector<IndexValue> out;
      for (int v = 0; v < d.chord_count(); ++v) {
        bool ok = d.is_self(v) && d.component(d.where(v, End::Over).comp).kind == ComponentKind::Long;
        out.push_back(ok ? (d.order_index(v) > 0 ? "+1" : "-1") : "n/a");
      }
      return out;
    });
  if (name == "Ind")
    return make(name, false, [](const GaussDiagram& d) {
      auto ind = gaussian_Ind_all(d);
      return per_self(d, [&](int v) { return str(ind[v]); });
    });
  if (name == "n")
    return make(name, true, [](const GaussDiagram& d) {
      auto n = gaussian_n_all(d);
      return per_self(d, [&](int v) { return str(n[v]); });
    }, negate_int);
  if (name == "secondary")
    return make(name, true, [](const GaussDiagram& d) {
      auto n = gaussian_n_all(d);
      return per_self(d, [&](int v) { return coset_sum_to_string(secondary_index(d, v), std::abs(n[v])); });
    }, secondary_star);
  if (name == "derived1" || name == "derived2") {
    int order = name == "derived1" ? 1 : 2;
    return make(name, true, [order](const GaussDiagram& d) {
      auto p = derived_parity(d, order);
      return per_self(d, [&](int v) { return p[v].to_string(); });
    }, negate_residue);
  }
  if (name == "induced") return make(name, false, [](const GaussDiagram& d) { return induced_Ind(d); });
  if (name == "vkp1" || name == "vkp2") {
    int m = name == "vkp1" ? 1 : 2;
    return make(name, true, [m](const GaussDiagram& d) {
      return per_self(d, [&](int v) {
        auto [k, w] = knot_of(d, v);
        auto [i, c] = vkp_index(k, w, m);
        return "(" + str(i) + "," + str(c) + ")";
      });
    }, [](const IndexValue& x) {
      if (x == "mixed") return x;
      auto k = x.find(',');
      return x.substr(0, k + 1) + str(-std::stol(x.substr(k + 1))) + ")";
    });
  }
  if (name == "smooth_or" || name == "smooth_un") {
    Smoothing k = name == "smooth_or" ? Smoothing::Oriented : Smoothing::Unoriented;
    return make(name, true, [k](const GaussDiagram& d) {
      return per_self(d, [&](int v) { return smoothing_fingerprint(d, v, k); });
    }, swap_halves);
  }
  if (name == "bm")
    return make(name, true, [](const GaussDiagram& d) {
      return per_self(d, [&](int v) {
        auto [k, w] = knot_of(d, v);
        BasedMatrix t = based_matrix_of(k, w, false);
        BasedMatrix u = t;
        u.eps = -t.eps;
        return canonical_key(t) + " / " + canonical_key(u);
      });
    }, swap_halves);
  if (name == "bm_graded")
    return make(name, false, [](const GaussDiagram& d) {
      return per_self(d, [&](int v) {
        auto [k, w] = knot_of(d, v);
        return canonical_key(based_matrix_of(k, w, true));
      });
    });
  if (name.size() == 3 && name[0] == 'i') {
    int a = name[1] == '+' ? 1 : -1, b = name[2] == '+' ? 1 : -1;
    return make(name, false, [a, b](const GaussDiagram& d) {
      return per_self(d, [&](int v) {
        auto [k, w] = knot_of(d, v);
        return int_poly_to_string(intersection_index(k, w, a, b));
      });
    });
  }
  fail(ErrorCode::UnknownIndex, "unknown index " + name);
}

IndexEvaluator hat_adapter(const IndexEvaluator& sigma) {
  auto s = sigma;
  return make("hat(" + sigma.name + ")", false, [s](const GaussDiagram& d) {
    auto x = s.evaluate(d);
    for (int v = 0; v < d.chord_count(); ++v)
      if (sgn(d, v) < 0) x[v] = s.star(x[v]);
    return x;
  });
}

IndexEvaluator tilde_adapter(const IndexEvaluator& iota) {
  auto s = iota;
  return make("tilde(" + iota.name + ")", true, [s](const GaussDiagram& d) {
    auto x = s.evaluate(d);
    for (int v = 0; v < d.chord_count(); ++v) x[v] = "(" + x[v] + "," + (sgn(d, v) > 0 ? "+1" : "-1") + ")";
    return x;
  }, [](const IndexValue& x) {
    auto k = x.rfind(',');
    return x.substr(0, k + 1) + (x.substr(k + 1, 2) == "+1" ? "-1" : "+1") + ")";
  });
}

IndexEvaluator bar_adapter(const IndexEvaluator& sigma) {
  auto s = sigma;
  return make("bar(" + sigma.name + ")", false, [s](const GaussDiagram& d) {
    auto x = s.evaluate(d);
    for (auto& y : x) y = std::min(y, s.star(y));
    return x;
  });
}

IndexPolynomial lk_polynomial(const GaussDiagram& d, const IndexEvaluator& sigma, const std::vector<IndexValue>& loops) {
  IndexPolynomial p;
  auto x = sigma.evaluate(d);
  for (int v = 0; v < d.chord_count(); ++v) {
    if (std::find(loops.begin(), loops.end(), x[v]) != loops.end()) continue;
    p.add(x[v], 1, sigma.is_signed ? sigma.involution : nullptr);
  }
  return p;
}

LoopValues loop_values(const IndexEvaluator& iota, const GaussDiagram& d, int comp) {
  if (d.flavor() != Flavor::Virtual) fail(ErrorCode::UnsupportedFlavor, "loop values need signed crossings");
  if (comp < 0 || comp >= d.component_count()) fail(ErrorCode::BadArgument, "no such component");
  auto at = [&](End first, int sign) {
    MoveInstance m;
    m.kind = MoveKind::R1Add;
    m.a = {comp, 0};
    m.first_end = first;
    m.sign = sign;
    auto r = apply_move(d, m);
    return iota.value(r.d, r.created[0]);
  };
  LoopValues lv;
  lv.l_plus = at(End::Over, 1);
  lv.r_minus = at(End::Over, -1);
  lv.l_minus = at(End::Under, -1);
  lv.r_plus = at(End::Under, 1);
  lv.pairing_ok = lv.r_minus == iota.star(lv.l_plus) && lv.r_plus == iota.star(lv.l_minus);
  return lv;
}

std::array<int, 3> triangle_incidence(const Triangle& t) {
  return {t.stm, -t.stb, t.smb};
}

ParityReport check_oriented_parity(const std::function<std::vector<long>(const GaussDiagram&)>& p,
                                   const std::vector<GaussDiagram>& trajectory, long modulus) {
  ParityReport rep;
  for (const auto& d : trajectory) {
    auto val = p(d);
    for (int v : r1_chords(d)) {
      ++rep.r1_sites;
      if (reduce_mod(val[v], modulus) != 0) rep.violations.push_back("P0 at chord " + str(v + 1) + " of " + d.serialize());
    }
    for (const auto& t : triangles(d)) {
      if (!d.is_self(t.tm) || !d.is_self(t.tb) || !d.is_self(t.mb)) continue;
      ++rep.r3_sites;
      auto e = triangle_incidence(t);
      long s = e[0] * val[t.tm] + e[1] * val[t.tb] + e[2] * val[t.mb];
      if (reduce_mod(s, modulus) != 0) rep.violations.push_back("P3 at " + t.move.to_json() + " of " + d.serialize());
    }
  }
  return rep;
}

ParityReport check_homological_parity(const std::vector<GaussDiagram>& trajectory) {
  ParityReport rep;
  for (const auto& d : trajectory) {
    if (d.chord_count() == 0) continue;
    Surface s(d);
    auto cls = [&](int v) { return s.coords(s.left_half_walk(v)); };
    auto knot = [&](int v) { return s.coords(s.component_walk(d.where(v, End::Over).comp)); };
    for (int v : r1_chords(d)) {
      ++rep.r1_sites;
      if (!s.is_multiple(cls(v), knot(v))) rep.violations.push_back("P0 at chord " + str(v + 1) + " of " + d.serialize());
    }
    for (const auto& t : triangles(d)) {
      if (!d.is_self(t.tm) || !d.is_self(t.tb) || !d.is_self(t.mb)) continue;
      ++rep.r3_sites;
      auto e = triangle_incidence(t);
      Eigen::VectorXi sum = e[0] * cls(t.tm) + e[1] * cls(t.tb) + e[2] * cls(t.mb);
      if (!s.is_multiple(sum, knot(t.tm)))
        rep.violations.push_back("P3 at " + t.move.to_json() + " of " + d.serialize());
    }
  }
  return rep;
}

}  // namespace chordal
