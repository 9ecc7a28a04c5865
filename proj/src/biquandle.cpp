#include "chordal/biquandle.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace chordal {

namespace {

[[noreturn]] void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

struct Eq {
  int t, a, b;
  bool circ;  // col[t] = col[a] ∘ col[b], else ∗
};

std::vector<Eq> equations(const GaussDiagram& d, const ArcLayout& arcs, ColoringRule rule) {
  std::vector<Eq> eqs;
  for (int v = 0; v < d.chord_count(); ++v) {
    SlotRef o = d.where(v, End::Over), u = d.where(v, End::Under);
    int oi = arcs.in(d, o), oo = arcs.out(d, o), ui = arcs.in(d, u), uo = arcs.out(d, u);
    bool pos = d.sign(v) > 0;
    if (rule == ColoringRule::HeadForward) {
      if (pos) {
        eqs.push_back({uo, ui, oo, true});
        eqs.push_back({oi, oo, ui, false});
      } else {
        eqs.push_back({oo, oi, uo, false});
        eqs.push_back({ui, uo, oi, true});
      }
    } else if (pos) {
      eqs.push_back({oo, oi, ui, false});
      eqs.push_back({uo, ui, oi, true});
    } else {
      eqs.push_back({oi, oo, uo, false});
      eqs.push_back({ui, uo, oo, true});
    }
  }
  return eqs;
}

int apply(const FiniteBiquandle& b, bool circ, int x, int y) { return circ ? b.circ(x, y) : b.star(x, y); }

struct Solver {
  const FiniteBiquandle& b;
  const std::vector<Eq>& eqs;
  std::vector<std::vector<int>> by_arc;
  std::vector<int> col;
  std::vector<int> trail;
  std::vector<Coloring> out;

  // Per operation: the value of x op y when it does not depend on y (else -1),
  // and the unique y with x op y = t (-1 if several, -2 if none).
  std::vector<int> const_in_y[2], y_for[2];

  Solver(const FiniteBiquandle& bq, const std::vector<Eq>& e, int arcs) : b(bq), eqs(e), by_arc(arcs), col(arcs, -1) {
    for (int i = 0; i < static_cast<int>(eqs.size()); ++i) {
      by_arc[eqs[i].t].push_back(i);
      by_arc[eqs[i].a].push_back(i);
      by_arc[eqs[i].b].push_back(i);
    }
    int n = b.size();
    for (int op = 0; op < 2; ++op) {
      const_in_y[op].assign(n, -1);
      y_for[op].assign(n * n, -2);
      for (int x = 0; x < n; ++x) {
        bool constant = true;
        for (int y = 0; y < n; ++y) {
          int t = apply(b, op == 1, x, y);
          if (t != apply(b, op == 1, x, 0)) constant = false;
          int& slot = y_for[op][x * n + t];
          slot = slot == -2 ? y : -1;
        }
        if (constant) const_in_y[op][x] = apply(b, op == 1, x, 0);
      }
    }
  }

  bool set(int arc, int x, std::vector<int>& queue) {
    if (col[arc] >= 0) return col[arc] == x;
    col[arc] = x;
    trail.push_back(arc);
    queue.push_back(arc);
    return true;
  }

  bool propagate(std::vector<int>& queue) {
    while (!queue.empty()) {
      int arc = queue.back();
      queue.pop_back();
      for (int i : by_arc[arc]) {
        const Eq& e = eqs[i];
        int t = col[e.t], x = col[e.a], y = col[e.b];
        int op = e.circ ? 1 : 0;
        if (y < 0) {
          if (x < 0) continue;
          if (t >= 0) {
            int s = y_for[op][x * b.size() + t];
            if (s == -2) return false;
            if (s >= 0 && !set(e.b, s, queue)) return false;
          } else if (const_in_y[op][x] >= 0 && !set(e.t, const_in_y[op][x], queue)) {
            return false;
          }
          continue;
        }
        if (x >= 0) {
          if (!set(e.t, apply(b, e.circ, x, y), queue)) return false;
        } else if (t >= 0) {
          int s = e.circ ? b.circ_solve(t, y) : b.star_solve(t, y);
          if (!set(e.a, s, queue)) return false;
        }
      }
    }
    return true;
  }

  void run(int from) {
    int arc = from;
    while (arc < static_cast<int>(col.size()) && col[arc] >= 0) ++arc;
    if (arc == static_cast<int>(col.size())) {
      for (const Eq& e : eqs)
        if (col[e.t] != apply(b, e.circ, col[e.a], col[e.b])) return;
      out.push_back(col);
      return;
    }
    for (int x = 0; x < b.size(); ++x) {
      size_t mark = trail.size();
      std::vector<int> queue;
      if (set(arc, x, queue) && propagate(queue)) run(arc + 1);
      while (trail.size() > mark) {
        col[trail.back()] = -1;
        trail.pop_back();
      }
    }
  }
};

}  // namespace

FiniteBiquandle::FiniteBiquandle(int n, std::vector<int> circ_table, std::vector<int> star_table)
    : n_(n), circ_(std::move(circ_table)), star_(std::move(star_table)) {
  if (n <= 0 || static_cast<int>(circ_.size()) != n * n || static_cast<int>(star_.size()) != n * n)
    fail(ErrorCode::BadArgument, "biquandle tables must be n by n");
  for (int v : circ_)
    if (v < 0 || v >= n) fail(ErrorCode::BadArgument, "table entry out of range");
  for (int v : star_)
    if (v < 0 || v >= n) fail(ErrorCode::BadArgument, "table entry out of range");
  circ_inv_.assign(n * n, -1);
  star_inv_.assign(n * n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      circ_inv_[circ(x, y) * n + y] = x;
      star_inv_[star(y, x) * n + x] = y;
    }
}

FiniteBiquandle FiniteBiquandle::parse(const std::string& text) {
  std::istringstream in(text);
  int n;
  if (!(in >> n)) fail(ErrorCode::BadToken, "missing biquandle size");
  std::vector<int> c(n * n), s(n * n);
  for (auto& v : c)
    if (!(in >> v)) fail(ErrorCode::BadToken, "short circ table");
  for (auto& v : s)
    if (!(in >> v)) fail(ErrorCode::BadToken, "short star table");
  return FiniteBiquandle(n, std::move(c), std::move(s));
}

FiniteBiquandle FiniteBiquandle::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::BadArgument, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string FiniteBiquandle::serialize() const {
  std::ostringstream o;
  o << n_ << "\n";
  for (const auto* t : {&circ_, &star_})
    for (int x = 0; x < n_; ++x) {
      for (int y = 0; y < n_; ++y) o << (y ? " " : "") << (*t)[x * n_ + y];
      o << "\n";
    }
  return o.str();
}

FiniteBiquandle FiniteBiquandle::trivial(int n) {
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x * n + y] = x;
  return FiniteBiquandle(n, t, t);
}

FiniteBiquandle FiniteBiquandle::dihedral(int m) {
  std::vector<int> c(m * m), s(m * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      c[x * m + y] = ((2 * y - x) % m + m) % m;
      s[x * m + y] = x;
    }
  return FiniteBiquandle(m, c, s);
}

FiniteBiquandle FiniteBiquandle::shift(int m) {
  std::vector<int> t(m * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) t[x * m + y] = (x + 1) % m;
  return FiniteBiquandle(m, t, t);
}

std::optional<std::string> FiniteBiquandle::axiom_violation() const {
  int n = n_;
  for (int x = 0; x < n; ++x)
    if (circ(x, x) != star(x, x)) return "x∘x != x∗x at x=" + std::to_string(x);
  auto bijective = [&](auto f) {
    std::set<std::pair<int, int>> image;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) image.insert(f(x, y));
    return static_cast<int>(image.size()) == n * n;
  };
  if (!bijective([&](int x, int y) { return std::pair(y, circ(x, y)); })) return "(x,y)->(y,x∘y) not bijective";
  if (!bijective([&](int x, int y) { return std::pair(x, star(y, x)); })) return "(x,y)->(x,y∗x) not bijective";
  if (!bijective([&](int x, int y) { return std::pair(circ(x, y), star(y, x)); }))
    return "(x,y)->(x∘y,y∗x) not bijective";
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        std::string at = " at (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
        if (circ(circ(x, y), circ(z, y)) != circ(circ(x, z), star(y, z))) return "exchange ∘∘" + at;
        if (star(circ(x, y), circ(z, y)) != circ(star(x, z), star(y, z))) return "exchange ∗∘" + at;
        if (star(star(x, y), star(z, y)) != star(star(x, z), circ(y, z))) return "exchange ∗∗" + at;
      }
  return std::nullopt;
}

ArcLayout::ArcLayout(const GaussDiagram& d) {
  for (const auto& c : d.components()) {
    offset.push_back(count);
    int k = static_cast<int>(c.slots.size());
    count += c.kind == ComponentKind::Long ? k + 1 : std::max(k, 1);
  }
}

int ArcLayout::in(const GaussDiagram& d, SlotRef r) const {
  const Component& c = d.component(r.comp);
  int k = static_cast<int>(c.slots.size());
  if (c.kind == ComponentKind::Long) return offset[r.comp] + r.index;
  return offset[r.comp] + (r.index + k - 1) % k;
}

int ArcLayout::out(const GaussDiagram& d, SlotRef r) const {
  const Component& c = d.component(r.comp);
  if (c.kind == ComponentKind::Long) return offset[r.comp] + r.index + 1;
  return offset[r.comp] + r.index;
}

std::vector<Coloring> colorings(const GaussDiagram& d, const FiniteBiquandle& b, ColoringRule rule) {
  if (d.flavor() != Flavor::Virtual) fail(ErrorCode::UnsupportedFlavor, "colorings need a virtual diagram");
  ArcLayout arcs(d);
  auto eqs = equations(d, arcs, rule);
  Solver s(b, eqs, arcs.count);
  s.run(0);
  return std::move(s.out);
}

bool is_coloring(const GaussDiagram& d, const FiniteBiquandle& b, const Coloring& c, ColoringRule rule) {
  ArcLayout arcs(d);
  if (static_cast<int>(c.size()) != arcs.count) return false;
  for (const Eq& e : equations(d, arcs, rule))
    if (c[e.t] != apply(b, e.circ, c[e.a], c[e.b])) return false;
  return true;
}

int TildeQuotient::count(int sign) const {
  const auto& v = sign > 0 ? plus : minus;
  int k = 0;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) k += v[i] == i;
  return k;
}

TildeQuotient tilde_quotient(const FiniteBiquandle& b) {
  int n = b.size();
  TildeQuotient q;
  q.n = n;
  for (int sign : {1, -1}) {
    std::vector<int> p(n * n);
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
      while (p[x] != x) x = p[x] = p[p[x]];
      return x;
    };
    auto unite = [&](int x, int y) {
      x = find(x);
      y = find(y);
      if (x != y) p[std::max(x, y)] = std::min(x, y);
    };
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          int a = x * n + y;
          unite(a, b.circ(x, z) * n + b.circ(y, z));
          unite(a, b.star(x, z) * n + b.star(y, z));
          if (sign > 0)
            unite(a, b.circ(x, z) * n + b.star(y, z));
          else
            unite(a, b.star(x, z) * n + b.circ(y, z));
        }
    std::vector<int> cls(n * n);
    for (int i = 0; i < n * n; ++i) cls[i] = find(i);
    (sign > 0 ? q.plus : q.minus) = std::move(cls);
  }
  return q;
}

std::pair<int, int> local_pair(const GaussDiagram& d, const ArcLayout& arcs, const Coloring& c, int v) {
  return {c[arcs.in(d, d.flat_tail(v))], c[arcs.out(d, d.flat_head(v))]};
}

std::string class_name(const TildeQuotient& q, int sign, int cls) {
  return std::string(sign > 0 ? "+" : "-") + "[" + std::to_string(cls / q.n) + "," + std::to_string(cls % q.n) + "]";
}

std::vector<ClassMultiset> biquandle_index(const GaussDiagram& d, const FiniteBiquandle& b) {
  auto q = tilde_quotient(b);
  ArcLayout arcs(d);
  std::vector<ClassMultiset> out(d.chord_count());
  for (const Coloring& c : colorings(d, b)) {
    for (int v = 0; v < d.chord_count(); ++v) {
      auto [x, y] = local_pair(d, arcs, c, v);
      int s = d.sign(v);
      ++out[v][class_name(q, s, q.cls(s, x, y))];
    }
  }
  return out;
}

ClassMultiset involution(const TildeQuotient& q, const ClassMultiset& m) {
  ClassMultiset r;
  for (auto& [name, k] : m) {
    int sign = name[0] == '+' ? 1 : -1;
    int x = 0, y = 0;
    std::sscanf(name.c_str() + 1, "[%d,%d]", &x, &y);
    r[class_name(q, -sign, q.cls(-sign, y, x))] += k;
  }
  return r;
}

}  // namespace chordal
