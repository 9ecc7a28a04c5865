#include "chordal/based_matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "chordal/surface.hpp"

namespace chordal {

namespace {

[[noreturn]] void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

int grade(const BasedMatrix& t, int g) { return t.graded() ? t.grading[g] : 1; }

// Keeps the listed indices in order; d follows its element or becomes -1.
BasedMatrix select(const BasedMatrix& t, const std::vector<int>& keep) {
  BasedMatrix r;
  int k = static_cast<int>(keep.size());
  r.b = Eigen::MatrixXi::Zero(k, k);
  r.d = -1;
  r.eps = t.eps;
  for (int i = 0; i < k; ++i) {
    r.labels.push_back(t.labels[keep[i]]);
    if (t.graded()) r.grading.push_back(t.grading[keep[i]]);
    if (keep[i] == t.d) r.d = i;
    for (int j = 0; j < k; ++j) r.b(i, j) = t.b(keep[i], keep[j]);
  }
  return r;
}

BasedMatrix grow(const BasedMatrix& t, int extra) {
  BasedMatrix r = t;
  int n = t.size();
  r.b = Eigen::MatrixXi::Zero(n + extra, n + extra);
  r.b.topLeftCorner(n, n) = t.b;
  for (int i = 0; i < extra; ++i) r.labels.push_back("g" + std::to_string(n + i));
  if (t.graded()) r.grading.resize(n + extra, 1);
  return r;
}

BasedMatrix from_form(const GaussDiagram& d, int v, bool graded) {
  if (d.flavor() == Flavor::Free) fail(ErrorCode::UnsupportedFlavor, "free diagrams have no based matrix");
  if (d.component_count() != 1) fail(ErrorCode::BadArgument, "based matrices need a knot");
  if (graded && d.flavor() != Flavor::Virtual) fail(ErrorCode::UnsupportedFlavor, "grading needs signed crossings");
  int n = d.chord_count();
  BasedMatrix t;
  t.labels.push_back("s");
  for (int w = 0; w < n; ++w) t.labels.push_back(std::to_string(w + 1));
  t.b = Eigen::MatrixXi::Zero(n + 1, n + 1);
  if (n > 0) {
    Surface s(d);
    Walk knot = s.component_walk(0);
    std::vector<Walk> left;
    for (int w = 0; w < n; ++w) left.push_back(s.left_half_walk(w));
    for (int w = 0; w < n; ++w) {
      t.b(0, w + 1) = s.inter(knot, left[w]);
      t.b(w + 1, 0) = -t.b(0, w + 1);
      for (int x = 0; x < n; ++x) t.b(w + 1, x + 1) = s.inter(left[w], left[x]);
    }
  }
  t.d = v < 0 ? -1 : v + 1;
  t.eps = graded ? d.sign(v) : 1;
  if (graded) {
    t.grading.push_back(0);
    for (int w = 0; w < n; ++w) t.grading.push_back(d.sign(w));
  }
  return t;
}

}  // namespace

std::string BasedMatrix::serialize() const {
  std::ostringstream o;
  o << (d < 0 ? "" : (eps > 0 ? "+" : "-")) << "d" << d;
  if (graded()) {
    o << " g";
    for (int i = 1; i < size(); ++i) o << (grading[i] > 0 ? '+' : '-');
  }
  o << " b";
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j) o << " " << b(i, j);
  return o.str();
}

std::string BasedMatrix::to_json() const {
  nlohmann::json j;
  j["labels"] = labels;
  j["d"] = d < 0 ? nlohmann::json(nullptr) : nlohmann::json(labels[d]);
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < size(); ++i) {
    std::vector<int> r;
    for (int k = 0; k < size(); ++k) r.push_back(b(i, k));
    rows.push_back(r);
  }
  j["b"] = rows;
  j["eps"] = eps;
  if (graded()) j["grading"] = std::vector<int>(grading.begin() + 1, grading.end());
  return j.dump();
}

BasedMatrix based_matrix_of(const GaussDiagram& d, int v, bool graded) {
  if (v < 0 || v >= d.chord_count()) fail(ErrorCode::BadArgument, "no such chord");
  return from_form(d, v, graded);
}

BasedMatrix knot_based_matrix(const GaussDiagram& d) { return from_form(d, -1, false); }

bool complementary(const BasedMatrix& t, int g1, int g2) {
  if (g1 == g2 || g1 <= 0 || g2 <= 0) return false;
  if (t.graded() && t.grading[g1] != -t.grading[g2]) return false;
  for (int h = 0; h < t.size(); ++h)
    if (t.b(g1, h) + t.b(g2, h) != t.b(0, h)) return false;
  return true;
}

SpecialElements find_special(const BasedMatrix& t) {
  SpecialElements r;
  int n = t.size();
  for (int g = 1; g < n; ++g) {
    if (t.b.row(g).isZero()) r.annihilating.push_back(g);
    if (t.b.row(g) == t.b.row(0)) r.core.push_back(g);
    for (int h = g + 1; h < n; ++h)
      if (complementary(t, g, h)) r.complementary.push_back({g, h});
  }
  return r;
}

BasedMatrix extend_m1(const BasedMatrix& t, int sign) {
  BasedMatrix r = grow(t, 1);
  if (r.graded()) r.grading.back() = sign;
  return r;
}

BasedMatrix extend_m2(const BasedMatrix& t, int sign) {
  BasedMatrix r = grow(t, 1);
  int g = t.size();
  for (int h = 0; h < g; ++h) {
    r.b(g, h) = t.b(0, h);
    r.b(h, g) = -t.b(0, h);
  }
  if (r.graded()) r.grading.back() = sign;
  return r;
}

BasedMatrix extend_m3(const BasedMatrix& t, const std::vector<int>& row, int sign1) {
  int n = t.size();
  if (static_cast<int>(row.size()) != n) fail(ErrorCode::BadArgument, "row has the wrong length");
  BasedMatrix r = grow(t, 2);
  int g1 = n, g2 = n + 1;
  for (int h = 0; h < n; ++h) {
    r.b(g1, h) = row[h];
    r.b(h, g1) = -row[h];
    r.b(g2, h) = t.b(0, h) - row[h];
    r.b(h, g2) = -r.b(g2, h);
  }
  // complementarity at h = g2 forces b(g1,g2) = b(s,g2)
  r.b(g1, g2) = -r.b(g2, 0);
  r.b(g2, g1) = -r.b(g1, g2);
  if (r.graded()) {
    r.grading[g1] = sign1;
    r.grading[g2] = -sign1;
  }
  return r;
}

BasedMatrix excise(const BasedMatrix& t, const std::vector<int>& elements) {
  for (int g : elements)
    if (g <= 0 || g >= t.size() || g == t.d) fail(ErrorCode::BadArgument, "cannot excise s or d");
  bool ok = false;
  if (elements.size() == 1) {
    int g = elements[0];
    ok = t.b.row(g).isZero() || t.b.row(g) == t.b.row(0);
  } else if (elements.size() == 2) {
    ok = complementary(t, elements[0], elements[1]);
  }
  if (!ok) fail(ErrorCode::BadArgument, "elements are not special");
  std::vector<int> keep;
  for (int g = 0; g < t.size(); ++g)
    if (std::find(elements.begin(), elements.end(), g) == elements.end()) keep.push_back(g);
  return select(t, keep);
}

BasedMatrix move_N(const BasedMatrix& t, int g) {
  if (t.d < 0 || !complementary(t, t.d, g)) fail(ErrorCode::BadArgument, "N needs an element complementary to d");
  BasedMatrix r = t;
  r.d = g;
  r.eps = -t.eps;
  return r;
}

BasedMatrix reduce(const BasedMatrix& t) {
  BasedMatrix r = t;
  for (bool changed = true; changed;) {
    changed = false;
    auto sp = find_special(r);
    for (int g : sp.annihilating)
      if (g != r.d) {
        r = excise(r, {g});
        changed = true;
        break;
      }
    if (changed) continue;
    for (int g : sp.core)
      if (g != r.d) {
        r = excise(r, {g});
        changed = true;
        break;
      }
    if (changed) continue;
    for (auto [a, b] : sp.complementary)
      if (a != r.d && b != r.d) {
        r = excise(r, {a, b});
        changed = true;
        break;
      }
  }
  return r;
}

namespace {

// Canonical relabeling with s first and d second: ordered partition
// refinement, then branching on the first non-singleton cell, keeping the
// least serialization over all leaves.
struct Canonizer {
  const BasedMatrix& t;
  std::optional<BasedMatrix> best;
  std::string best_key;

  BasedMatrix build(const std::vector<int>& perm) const {
    std::vector<int> order{0};
    if (t.d > 0) order.push_back(t.d);
    order.insert(order.end(), perm.begin(), perm.end());
    BasedMatrix r = select(t, order);
    for (int i = 0; i < r.size(); ++i) r.labels[i] = i == 0 ? "s" : std::to_string(i);
    return r;
  }

  // Splits cells by (cell, neighbour profile) until stable.
  std::vector<std::vector<int>> refine(std::vector<std::vector<int>> cells) const {
    for (;;) {
      std::vector<int> cell_of(t.size(), -1);
      for (size_t c = 0; c < cells.size(); ++c)
        for (int g : cells[c]) cell_of[g] = static_cast<int>(c);
      std::vector<std::vector<int>> next;
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::map<std::vector<std::pair<int, int>>, std::vector<int>> parts;
        for (int g : cell) {
          std::vector<std::pair<int, int>> prof;
          for (int h = 1; h < t.size(); ++h)
            if (h != g && h != t.d) prof.push_back({cell_of[h], t.b(g, h)});
          std::sort(prof.begin(), prof.end());
          parts[prof].push_back(g);
        }
        for (auto& [k, part] : parts) next.push_back(part);
      }
      if (next.size() == cells.size()) return next;
      cells = std::move(next);
    }
  }

  bool twins(int x, int y) const {
    if (grade(t, x) != grade(t, y) || t.b(x, y) != 0) return false;
    for (int k = 0; k < t.size(); ++k)
      if (k != x && k != y && t.b(x, k) != t.b(y, k)) return false;
    return true;
  }

  void search(const std::vector<std::vector<int>>& cells) {
    auto it = std::find_if(cells.begin(), cells.end(), [](auto& c) { return c.size() > 1; });
    if (it == cells.end()) {
      std::vector<int> perm;
      for (auto& c : cells) perm.push_back(c[0]);
      BasedMatrix c = build(perm);
      std::string k = c.serialize();
      if (!best || k < best_key) {
        best_key = k;
        best = c;
      }
      return;
    }
    size_t at = it - cells.begin();
    std::vector<int> tried;
    for (int x : *it) {
      if (std::any_of(tried.begin(), tried.end(), [&](int y) { return twins(x, y); })) continue;
      tried.push_back(x);
      std::vector<std::vector<int>> split(cells.begin(), cells.begin() + at);
      split.push_back({x});
      std::vector<int> rest;
      for (int y : *it)
        if (y != x) rest.push_back(y);
      split.push_back(rest);
      split.insert(split.end(), cells.begin() + at + 1, cells.end());
      search(refine(split));
    }
  }
};

BasedMatrix least_relabeling(const BasedMatrix& t) {
  std::map<std::tuple<int, int, int>, std::vector<int>> start;
  for (int g = 1; g < t.size(); ++g)
    if (g != t.d) start[{grade(t, g), t.b(0, g), t.d > 0 ? t.b(t.d, g) : 0}].push_back(g);
  std::vector<std::vector<int>> cells;
  for (auto& [k, c] : start) cells.push_back(c);
  Canonizer cz{t, std::nullopt, ""};
  if (cells.empty()) return cz.build({});
  cz.search(cz.refine(cells));
  return *cz.best;
}

// Exchanges a core d with an annihilating one (or back) and flips eps.
std::optional<BasedMatrix> exchange_d(const BasedMatrix& t) {
  if (t.d < 0) return std::nullopt;
  bool core = t.b.row(t.d) == t.b.row(0);
  bool ann = t.b.row(t.d).isZero();
  if (!core && !ann) return std::nullopt;
  BasedMatrix r = t;
  for (int h = 0; h < t.size(); ++h) {
    int v = core ? 0 : (h == t.d ? 0 : t.b(0, h));
    r.b(t.d, h) = v;
    r.b(h, t.d) = -v;
  }
  r.eps = -t.eps;
  if (r.graded()) r.grading[t.d] = -t.grading[t.d];
  return r;
}

}  // namespace

BasedMatrix reduce_primitive(const BasedMatrix& t) {
  // smallest states first, then least serialization
  std::map<std::pair<int, std::string>, BasedMatrix> seen;
  std::vector<BasedMatrix> queue{reduce(t)};
  while (!queue.empty() && seen.size() < 1024) {
    BasedMatrix cur = queue.back();
    queue.pop_back();
    BasedMatrix canon = least_relabeling(cur);
    if (!seen.emplace(std::pair(canon.size(), canon.serialize()), canon).second) continue;
    if (cur.d < 0) continue;
    for (int g = 1; g < cur.size(); ++g)
      if (complementary(cur, cur.d, g)) queue.push_back(reduce(move_N(cur, g)));
    if (auto x = exchange_d(cur)) queue.push_back(reduce(*x));
  }
  return seen.begin()->second;
}

std::string canonical_key(const BasedMatrix& t) { return reduce_primitive(t).serialize(); }

Eigen::MatrixXi b_alpha_beta(const BasedMatrix& t, int alpha, int beta) {
  if (!t.graded()) fail(ErrorCode::BadArgument, "b^ab needs a graded matrix");
  int n = t.size();
  Eigen::MatrixXi r = Eigen::MatrixXi::Zero(n, n);
  for (int g = 1; g < n; ++g) {
    r(g, 0) = alpha * t.grading[g] * t.b(g, 0);
    r(0, g) = beta * t.grading[g] * t.b(0, g);
  }
  for (int g = 1; g < n; ++g)
    for (int h = 1; h < n; ++h)
      r(g, h) = alpha * beta * t.grading[g] * t.grading[h] * t.b(g, h) + (1 - beta * t.grading[h]) / 2 * r(g, 0) +
                (1 - alpha * t.grading[g]) / 2 * r(0, h);
  return r;
}

Eigen::MatrixXi b_alpha_beta_literal(const BasedMatrix& t, int alpha, int beta) {
  if (!t.graded()) fail(ErrorCode::BadArgument, "b^ab needs a graded matrix");
  int n = t.size();
  Eigen::MatrixXi r = Eigen::MatrixXi::Zero(n, n);
  for (int g = 1; g < n; ++g) {
    r(g, 0) = alpha * t.grading[g] * t.b(g, 0);
    r(0, g) = beta * t.grading[g] * t.b(0, g);
    for (int h = 1; h < n; ++h)
      r(g, h) = alpha * beta * t.grading[g] * t.grading[h] * t.b(g, h) - (1 - alpha * t.grading[g]) / 2 * t.b(g, 0) -
                (1 - beta * t.grading[h]) / 2 * t.b(0, h);
  }
  return r;
}

AlphaBetaLoops alpha_beta_loops(const BasedMatrix& t, int alpha, int beta) {
  if (!t.graded() || t.d < 0) fail(ErrorCode::BadArgument, "loop values need a graded matrix with d");
  int sd = t.grading[t.d];
  int x = alpha * sd * t.b(t.d, 0);  // b^ab(d,s)
  return {(1 - beta) / 2 * x, (1 + beta) / 2 * x, (1 + beta) / 2 * x, (1 - beta) / 2 * x};
}

std::map<int, long> p_alpha_beta(const BasedMatrix& t, int alpha, int beta) {
  auto bab = b_alpha_beta(t, alpha, beta);
  auto loops = alpha_beta_loops(t, alpha, beta);
  std::map<int, long> p;
  for (int g = 1; g < t.size(); ++g) {
    int val = bab(t.d, g), sg = t.grading[g];
    if (sg > 0 && (val == loops.annihilating_plus || val == loops.core_plus)) continue;
    if (sg < 0 && val == loops.annihilating_minus) continue;
    if (sg < 0 && val == loops.core_minus) continue;
    long& c = p[val];
    c += sg;
    if (c == 0) p.erase(val);
  }
  return p;
}

std::map<int, long> intersection_index(const GaussDiagram& d, int v, int alpha, int beta) {
  return p_alpha_beta(based_matrix_of(d, v, true), alpha, beta);
}

std::string int_poly_to_string(const std::map<int, long>& p) {
  if (p.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (auto& [e, c] : p) {
    if (!first) o << (c < 0 ? " - " : " + ");
    else if (c < 0) o << "-";
    first = false;
    if (std::abs(c) != 1) o << std::abs(c) << "*";
    o << "[" << e << "]";
  }
  return o.str();
}

}  // namespace chordal
