#include "chordal/surface.hpp"

#include <Eigen/LU>
#include <numeric>
#include <queue>

namespace chordal {

namespace {

// Global orientation of the intersection pairing.
constexpr int kInterSign = 1;

int code(EdgeEnd e) { return static_cast<int>(e.role) * 2 + static_cast<int>(e.dir); }

// Counterclockwise order of edge-ends at a crossing of the given sign.
const EdgeEnd kRotPos[4] = {{End::Over, Dir::Out}, {End::Under, Dir::Out}, {End::Over, Dir::In}, {End::Under, Dir::In}};
const EdgeEnd kRotNeg[4] = {{End::Over, Dir::Out}, {End::Under, Dir::In}, {End::Over, Dir::In}, {End::Under, Dir::Out}};

}  // namespace

Surface::Surface(const GaussDiagram& d) : d_(d) {
  if (d.flavor() == Flavor::Free) throw Error(ErrorCode::UnsupportedFlavor, "free diagrams have no surface");
  int nc = d.component_count();
  offset_.assign(nc + 1, 0);
  for (int c = 0; c < nc; ++c) offset_[c + 1] = offset_[c] + static_cast<int>(d.component(c).slots.size());
  int E = offset_[nc];
  int V = d.chord_count();
  edge_slot_.resize(E);
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < static_cast<int>(d.component(c).slots.size()); ++i) edge_slot_[offset_[c] + i] = {c, i};

  // faces: orbits of rotation after edge swap, on ends indexed chord*4+code
  std::vector<int> alpha(4 * V), sigma(4 * V);
  for (int e = 0; e < E; ++e) {
    SlotRef s = edge_slot_[e], t = next_slot(s);
    const Slot& a = d.at(s);
    const Slot& b = d.at(t);
    int x = a.chord * 4 + code({a.end, Dir::Out});
    int y = b.chord * 4 + code({b.end, Dir::In});
    alpha[x] = y;
    alpha[y] = x;
  }
  for (int v = 0; v < V; ++v)
    for (int p = 0; p < 4; ++p) sigma[v * 4 + code(rot_at(v, p))] = v * 4 + code(rot_at(v, (p + 1) % 4));

  // connected pieces over chords
  std::vector<int> comp_of(V, -1);
  int pieces = 0;
  std::vector<std::vector<int>> adj(V);
  for (int e = 0; e < E; ++e) {
    int u = d.at(edge_slot_[e]).chord, w = d.at(next_slot(edge_slot_[e])).chord;
    adj[u].push_back(e);
    if (w != u) adj[w].push_back(e);
  }
  tree_edge_.assign(E, 0);
  std::vector<int> parent_edge(V, -1), depth(V, 0);
  for (int r = 0; r < V; ++r) {
    if (comp_of[r] >= 0) continue;
    std::queue<int> q;
    q.push(r);
    comp_of[r] = pieces;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : adj[u]) {
        int a = d.at(edge_slot_[e]).chord, b = d.at(next_slot(edge_slot_[e])).chord;
        int w = a == u ? b : a;
        if (comp_of[w] >= 0) continue;
        comp_of[w] = pieces;
        parent_edge[w] = e;
        depth[w] = depth[u] + 1;
        tree_edge_[e] = 1;
        q.push(w);
      }
    }
    ++pieces;
  }
  std::vector<int> piece_v(pieces, 0), piece_e(pieces, 0), piece_f(pieces, 0);
  for (int v = 0; v < V; ++v) ++piece_v[comp_of[v]];
  for (int e = 0; e < E; ++e) ++piece_e[comp_of[d.at(edge_slot_[e]).chord]];
  std::vector<bool> seen(4 * V, false);
  for (int x = 0; x < 4 * V; ++x) {
    if (seen[x]) continue;
    ++faces_;
    ++piece_f[comp_of[x / 4]];
    for (int y = x; !seen[y]; y = sigma[alpha[y]]) seen[y] = true;
  }
  int g = 0;
  for (int p = 0; p < pieces; ++p) g += (2 - (piece_v[p] - piece_e[p] + piece_f[p])) / 2;
  int circles = 0;
  for (int c = 0; c < nc; ++c)
    if (d.component(c).slots.empty()) ++circles;
  genus_ = g;
  pieces_ = pieces + circles;
  faces_ += 2 * circles;

  // fundamental cycles
  auto endpoints = [&](int e) {
    return std::pair<int, int>{d.at(edge_slot_[e]).chord, d.at(next_slot(edge_slot_[e])).chord};
  };
  auto out_end = [&](int e) { return EdgeEnd{d.at(edge_slot_[e]).end, Dir::Out}; };
  auto in_end = [&](int e) { return EdgeEnd{d.at(next_slot(edge_slot_[e])).end, Dir::In}; };
  for (int e = 0; e < E; ++e) {
    if (tree_edge_[e]) continue;
    auto [u, w] = endpoints(e);
    // steps of the walk: (edge, forward?) from w back to u through the tree
    std::vector<std::pair<int, bool>> up_w, up_u;
    int a = w, b = u;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        int pe = parent_edge[a];
        auto [x, y] = endpoints(pe);
        up_w.push_back({pe, x == a});  // a -> parent
        a = (x == a) ? y : x;
      } else {
        int pe = parent_edge[b];
        auto [x, y] = endpoints(pe);
        up_u.push_back({pe, y == b});  // later reversed: parent -> b
        b = (x == b) ? y : x;
      }
    }
    std::vector<std::pair<int, bool>> steps;
    steps.push_back({e, true});
    for (auto& s : up_w) steps.push_back(s);
    for (auto it = up_u.rbegin(); it != up_u.rend(); ++it) steps.push_back(*it);
    Walk walk;
    for (size_t k = 0; k < steps.size(); ++k) {
      auto [ek, fk] = steps[k];
      auto [en, fn] = steps[(k + 1) % steps.size()];
      EdgeEnd arrive = fk ? in_end(ek) : out_end(ek);
      EdgeEnd leave = fn ? out_end(en) : in_end(en);
      int vertex = fk ? endpoints(ek).second : endpoints(ek).first;
      walk.push_back({vertex, arrive, leave});
    }
    basis_edge_.push_back(e);
    basis_.push_back(std::move(walk));
  }
  int r = static_cast<int>(basis_.size());
  form_ = Eigen::MatrixXi::Zero(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) form_(i, j) = inter(basis_[i], basis_[j]);
}

SlotRef Surface::next_slot(SlotRef s) const {
  int n = static_cast<int>(d_.component(s.comp).slots.size());
  return {s.comp, (s.index + 1) % n};
}

int Surface::edge_out(SlotRef s) const { return offset_[s.comp] + s.index; }

EdgeEnd Surface::rot_at(int chord, int pos) const {
  int s = d_.flavor() == Flavor::Virtual ? d_.sign(chord) : 1;
  return s > 0 ? kRotPos[pos] : kRotNeg[pos];
}

int Surface::rot_pos(int chord, EdgeEnd e) const {
  for (int p = 0; p < 4; ++p)
    if (rot_at(chord, p) == e) return p;
  return -1;
}

Walk Surface::component_walk(int comp) const {
  Walk w;
  for (const Slot& s : d_.component(comp).slots) w.push_back({s.chord, {s.end, Dir::In}, {s.end, Dir::Out}});
  return w;
}

Walk Surface::left_half_walk(int v) const {
  Walk w;
  for (SlotRef r : d_.left_half(v)) {
    const Slot& s = d_.at(r);
    w.push_back({s.chord, {s.end, Dir::In}, {s.end, Dir::Out}});
  }
  w.push_back({v, {d_.at(d_.flat_tail(v)).end, Dir::In}, {d_.at(d_.flat_head(v)).end, Dir::Out}});
  return w;
}

Walk Surface::right_half_walk(int v) const {
  Walk w;
  for (SlotRef r : d_.right_half(v)) {
    const Slot& s = d_.at(r);
    w.push_back({s.chord, {s.end, Dir::In}, {s.end, Dir::Out}});
  }
  w.push_back({v, {d_.at(d_.flat_head(v)).end, Dir::In}, {d_.at(d_.flat_tail(v)).end, Dir::Out}});
  return w;
}

Walk Surface::half_walk(int v, Half h) const {
  if (!d_.is_self(v)) throw Error(ErrorCode::NotSelfCrossing, "chord joins two components");
  bool tail_over = d_.at(d_.flat_tail(v)).end == End::Over;
  switch (h) {
    case Half::Left: return left_half_walk(v);
    case Half::Right: return right_half_walk(v);
    case Half::Plus: return tail_over ? left_half_walk(v) : right_half_walk(v);
    case Half::Minus: return tail_over ? right_half_walk(v) : left_half_walk(v);
  }
  return {};
}

int Surface::inter(const Walk& a, const Walk& b) const {
  int V = d_.chord_count();
  std::vector<std::vector<const Passage*>> at(V);
  for (auto& q : b) at[q.chord].push_back(&q);
  int total = 0;
  for (auto& p : a) {
    for (const Passage* q : at[p.chord]) {
      int o = rot_pos(p.chord, q->out), i = rot_pos(p.chord, q->in);
      auto left = [&](EdgeEnd e) {
        int x = rot_pos(p.chord, e);
        int dx = (x - o + 4) % 4, di = (i - o + 4) % 4;
        return dx > 0 && dx < di;
      };
      total += (left(p.in) ? 1 : 0) - (left(p.out) ? 1 : 0);
    }
  }
  return kInterSign * total;
}

int Surface::form_rank() const {
  if (form_.rows() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(form_.cast<double>());
  return static_cast<int>(lu.rank());
}

Eigen::VectorXi Surface::coords(const Walk& w) const {
  int E = static_cast<int>(edge_slot_.size());
  std::vector<int> chain(E, 0);
  for (auto& p : w) {
    SlotRef s = d_.where(p.chord, p.out.role);
    if (p.out.dir == Dir::Out) {
      chain[edge_out(s)] += 1;
    } else {
      int n = static_cast<int>(d_.component(s.comp).slots.size());
      chain[edge_out({s.comp, (s.index + n - 1) % n})] -= 1;
    }
  }
  Eigen::VectorXi x(basis_.size());
  for (size_t i = 0; i < basis_.size(); ++i) x(i) = chain[basis_edge_[i]];
  return x;
}

int Surface::pair(const Eigen::VectorXi& x, const Eigen::VectorXi& y) const { return x.dot(form_ * y); }

bool Surface::is_multiple(const Eigen::VectorXi& x, const Eigen::VectorXi& y) const {
  Eigen::VectorXi px = form_.transpose() * x, py = form_.transpose() * y;
  if (py.isZero()) return px.isZero();
  int k = 0;
  while (py(k) == 0) ++k;
  if (px(k) % py(k) != 0) return false;
  int lambda = px(k) / py(k);
  return px == lambda * py;
}

}  // namespace chordal
