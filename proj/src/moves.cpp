#include "chordal/moves.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "chordal/surface.hpp"

namespace chordal {

using nlohmann::json;

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R1Add: return "R1Add";
    case MoveKind::R1Remove: return "R1Remove";
    case MoveKind::R2Add: return "R2Add";
    case MoveKind::R2Remove: return "R2Remove";
    case MoveKind::R3: return "R3";
  }
  return "?";
}

namespace {

MoveKind kind_from(const std::string& s) {
  for (MoveKind k : {MoveKind::R1Add, MoveKind::R1Remove, MoveKind::R2Add, MoveKind::R2Remove, MoveKind::R3})
    if (s == to_string(k)) return k;
  throw Error(ErrorCode::BadArgument, "unknown move kind " + s);
}

struct Lift {
  int sign;
  bool swap;
};

std::vector<Lift> lifts_for(const GaussDiagram& d, int v) {
  switch (d.flavor()) {
    case Flavor::Virtual: return {{d.sign(v), false}};
    case Flavor::Flat: return {{1, false}, {-1, true}};
    case Flavor::Free: return {{1, false}, {-1, true}, {1, true}, {-1, false}};
  }
  return {};
}

// 1 if q directly follows p, -1 if p follows q, 2 if both (two-slot circle), 0 otherwise.
int adjacency(const GaussDiagram& d, SlotRef p, SlotRef q) {
  if (p.comp != q.comp || p.index == q.index) return 0;
  const Component& c = d.component(p.comp);
  int n = static_cast<int>(c.slots.size());
  if (c.kind == ComponentKind::Closed) {
    if (n == 2) return 2;
    if ((p.index + 1) % n == q.index) return 1;
    if ((q.index + 1) % n == p.index) return -1;
    return 0;
  }
  if (p.index + 1 == q.index) return 1;
  if (q.index + 1 == p.index) return -1;
  return 0;
}

// Lifted over end of v.
SlotRef lifted(const GaussDiagram& d, int v, Lift l, End e) { return d.where(v, l.swap ? other(e) : e); }

bool r2_removable(const GaussDiagram& d, int c1, int c2) {
  for (Lift l1 : lifts_for(d, c1))
    for (Lift l2 : lifts_for(d, c2)) {
      if (l1.sign != -l2.sign) continue;
      if (adjacency(d, lifted(d, c1, l1, End::Over), lifted(d, c2, l2, End::Over)) == 0) continue;
      if (adjacency(d, lifted(d, c1, l1, End::Under), lifted(d, c2, l2, End::Under)) == 0) continue;
      return true;
    }
  return false;
}

struct TriangleSlots {
  std::array<std::pair<SlotRef, SlotRef>, 3> pairs;  // xy, xz, yz
};

std::optional<TriangleSlots> triangle_slots(const GaussDiagram& d, int x, int y, int z, int variant) {
  End ex = (variant & 1) ? End::Under : End::Over;
  End ey = (variant & 2) ? End::Under : End::Over;
  End ez = (variant & 4) ? End::Under : End::Over;
  TriangleSlots t;
  t.pairs[0] = {d.where(x, ex), d.where(y, ey)};
  t.pairs[1] = {d.where(x, other(ex)), d.where(z, ez)};
  t.pairs[2] = {d.where(y, other(ey)), d.where(z, other(ez))};
  for (auto& [p, q] : t.pairs) {
    int a = adjacency(d, p, q);
    if (a == 0 || a == 2) return std::nullopt;
  }
  return t;
}

// Checks the R3 condition for a triangle, trying all lifts of the three chords.
std::optional<Triangle> r3_check(const GaussDiagram& d, int x, int y, int z, int variant) {
  auto ts = triangle_slots(d, x, y, z, variant);
  if (!ts) return std::nullopt;
  std::array<int, 3> ch{x, y, z};
  // chords of each pair
  const int pc[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (Lift lx : lifts_for(d, x))
    for (Lift ly : lifts_for(d, y))
      for (Lift lz : lifts_for(d, z)) {
        std::array<Lift, 3> L{lx, ly, lz};
        auto role = [&](int k, SlotRef s) {
          End e = d.at(s).end;
          return L[k].swap ? other(e) : e;
        };
        int T = -1, M = -1, B = -1;
        for (int p = 0; p < 3; ++p) {
          End r0 = role(pc[p][0], ts->pairs[p].first), r1 = role(pc[p][1], ts->pairs[p].second);
          if (r0 == End::Over && r1 == End::Over) T = p;
          else if (r0 == End::Under && r1 == End::Under) B = p;
          else M = p;
        }
        if (T < 0 || M < 0 || B < 0) continue;
        auto common = [&](int p, int q) {
          for (int a : pc[p])
            for (int b : pc[q])
              if (a == b) return a;
          return -1;
        };
        int tm = common(T, M), tb = common(T, B), mb = common(M, B);
        // +1 if the slot of chord a precedes that of chord b in pair p
        auto order = [&](int p, int a, int b) {
          auto [s0, s1] = ts->pairs[p];
          int k0 = pc[p][0];
          SlotRef sa = k0 == a ? s0 : s1, sb = k0 == a ? s1 : s0;
          (void)b;
          return adjacency(d, sa, sb) == 1 ? 1 : -1;
        };
        int ot = order(T, tm, tb), om = order(M, tm, mb), ob = order(B, tb, mb);
        int etm = L[tm].sign, etb = L[tb].sign, emb = L[mb].sign;
        if (ot * om != etb * emb || ot * ob != etm * emb) continue;
        Triangle tri;
        tri.tm = ch[tm];
        tri.tb = ch[tb];
        tri.mb = ch[mb];
        tri.ot = ot;
        tri.om = om;
        tri.ob = ob;
        tri.stm = etm;
        tri.stb = etb;
        tri.smb = emb;
        tri.move.kind = MoveKind::R3;
        tri.move.chords = {x, y, z};
        tri.move.variant = variant;
        return tri;
      }
  return std::nullopt;
}

std::vector<Slot> roles_for_r2(const GaussDiagram& d, int c1, int c2, bool over_here, int s1) {
  End r = over_here ? End::Over : End::Under;
  End r1 = r, r2 = r;
  if (d.flavor() == Flavor::Flat) {
    if (s1 < 0) r1 = other(r1);
    if (-s1 < 0) r2 = other(r2);
  }
  return {{c1, r1}, {c2, r2}};
}

void insert_at(std::vector<Component>& comps, Gap g, const std::vector<Slot>& ins) {
  auto& s = comps[g.comp].slots;
  s.insert(s.begin() + g.index, ins.begin(), ins.end());
}

}  // namespace

std::string MoveInstance::to_json() const {
  json j;
  j["kind"] = to_string(kind);
  switch (kind) {
    case MoveKind::R1Add:
      j["gap"] = {a.comp, a.index};
      j["first"] = first_end == End::Over ? "over" : "under";
      j["sign"] = sign;
      break;
    case MoveKind::R2Add:
      j["gap_a"] = {a.comp, a.index};
      j["gap_b"] = {b.comp, b.index};
      j["over_at_a"] = over_at_a;
      j["parallel"] = parallel;
      j["sign"] = sign;
      break;
    case MoveKind::R1Remove:
      j["chords"] = {chords[0] + 1};
      break;
    case MoveKind::R2Remove:
      j["chords"] = {chords[0] + 1, chords[1] + 1};
      break;
    case MoveKind::R3:
      j["chords"] = {chords[0] + 1, chords[1] + 1, chords[2] + 1};
      j["variant"] = variant;
      break;
  }
  return j.dump();
}

MoveInstance MoveInstance::from_json(const std::string& s) {
  json j = json::parse(s);
  MoveInstance m;
  m.kind = kind_from(j.at("kind").get<std::string>());
  auto gap = [](const json& g) { return Gap{g.at(0).get<int>(), g.at(1).get<int>()}; };
  switch (m.kind) {
    case MoveKind::R1Add:
      m.a = gap(j.at("gap"));
      m.first_end = j.at("first") == "over" ? End::Over : End::Under;
      m.sign = j.at("sign");
      break;
    case MoveKind::R2Add:
      m.a = gap(j.at("gap_a"));
      m.b = gap(j.at("gap_b"));
      m.over_at_a = j.at("over_at_a");
      m.parallel = j.at("parallel");
      m.sign = j.at("sign");
      break;
    default: {
      auto& c = j.at("chords");
      for (size_t i = 0; i < c.size() && i < 3; ++i) m.chords[i] = c[i].get<int>() - 1;
      if (m.kind == MoveKind::R3) m.variant = j.at("variant");
    }
  }
  return m;
}

Correspondence Correspondence::identity(int n) {
  Correspondence c;
  c.map.resize(n);
  std::iota(c.map.begin(), c.map.end(), 0);
  c.target_count = n;
  return c;
}

Correspondence Correspondence::then(const Correspondence& next) const {
  Correspondence c;
  c.target_count = next.target_count;
  c.map.resize(map.size());
  for (size_t i = 0; i < map.size(); ++i) c.map[i] = map[i] < 0 ? -1 : next.map[map[i]];
  return c;
}

std::vector<Gap> gaps(const GaussDiagram& d) {
  std::vector<Gap> out;
  for (int c = 0; c < d.component_count(); ++c) {
    const Component& comp = d.component(c);
    int n = static_cast<int>(comp.slots.size());
    int count = comp.kind == ComponentKind::Long ? n + 1 : std::max(n, 1);
    for (int i = 0; i < count; ++i) out.push_back({c, i});
  }
  return out;
}

std::vector<int> r1_chords(const GaussDiagram& d) {
  std::vector<int> out;
  for (int v = 0; v < d.chord_count(); ++v)
    if (adjacency(d, d.where(v, End::Over), d.where(v, End::Under)) != 0) out.push_back(v);
  return out;
}

std::vector<std::pair<int, int>> i2_pairs(const GaussDiagram& d) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < d.chord_count(); ++a)
    for (int b = a + 1; b < d.chord_count(); ++b)
      if (r2_removable(d, a, b)) out.push_back({a, b});
  return out;
}

std::vector<Triangle> triangles(const GaussDiagram& d) {
  std::vector<Triangle> out;
  int n = d.chord_count();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z)
        for (int var = 0; var < 8; ++var)
          if (auto t = r3_check(d, x, y, z, var)) out.push_back(*t);
  return out;
}

std::vector<MoveInstance> enumerate_moves(const GaussDiagram& d, MoveKind kind, int max_crossings) {
  std::vector<MoveInstance> out;
  int n = d.chord_count();
  Flavor fl = d.flavor();
  switch (kind) {
    case MoveKind::R1Add: {
      if (n + 1 > max_crossings) break;
      for (Gap g : gaps(d)) {
        for (End e : {End::Over, End::Under}) {
          if (fl == Flavor::Free && e == End::Under) continue;
          for (int s : {1, -1}) {
            if (fl != Flavor::Virtual && s < 0) continue;
            MoveInstance m;
            m.kind = kind;
            m.a = g;
            m.first_end = e;
            m.sign = s;
            out.push_back(m);
          }
        }
      }
      break;
    }
    case MoveKind::R2Add: {
      if (n + 2 > max_crossings) break;
      auto gs = gaps(d);
      for (size_t i = 0; i < gs.size(); ++i)
        for (size_t j = i; j < gs.size(); ++j)
          for (bool over_a : {true, false}) {
            if (fl != Flavor::Virtual && !over_a) continue;
            for (bool par : {false, true})
              for (int s : {1, -1}) {
                if (fl == Flavor::Free && s < 0) continue;
                MoveInstance m;
                m.kind = kind;
                m.a = gs[i];
                m.b = gs[j];
                m.over_at_a = over_a;
                m.parallel = par;
                m.sign = s;
                out.push_back(m);
              }
          }
      break;
    }
    case MoveKind::R1Remove:
      for (int v : r1_chords(d)) {
        MoveInstance m;
        m.kind = kind;
        m.chords = {v, -1, -1};
        out.push_back(m);
      }
      break;
    case MoveKind::R2Remove:
      for (auto [a, b] : i2_pairs(d)) {
        MoveInstance m;
        m.kind = kind;
        m.chords = {a, b, -1};
        out.push_back(m);
      }
      break;
    case MoveKind::R3:
      for (auto& t : triangles(d)) out.push_back(t.move);
      break;
  }
  return out;
}

std::vector<MoveInstance> enumerate_moves(const GaussDiagram& d, int max_crossings) {
  std::vector<MoveInstance> out;
  for (MoveKind k : {MoveKind::R1Add, MoveKind::R1Remove, MoveKind::R2Add, MoveKind::R2Remove, MoveKind::R3}) {
    auto part = enumerate_moves(d, k, max_crossings);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

MoveResult apply_move(const GaussDiagram& d, const MoveInstance& m) {
  int n = d.chord_count();
  std::vector<Component> comps = d.components();
  std::vector<int> signs = d.signs();
  MoveResult r;
  auto bad = [&](const std::string& why) { throw Error(ErrorCode::BadArgument, std::string(to_string(m.kind)) + ": " + why); };
  auto check_gap = [&](Gap g) {
    auto gs = gaps(d);
    if (std::find(gs.begin(), gs.end(), g) == gs.end()) bad("no such gap");
  };
  switch (m.kind) {
    case MoveKind::R1Add: {
      check_gap(m.a);
      int s = d.flavor() == Flavor::Virtual ? m.sign : 0;
      insert_at(comps, m.a, {{n, m.first_end}, {n, other(m.first_end)}});
      signs.push_back(s);
      r.d = GaussDiagram(d.flavor(), comps, signs);
      r.f = Correspondence::identity(n);
      r.f.target_count = n + 1;
      r.created = {n};
      return r;
    }
    case MoveKind::R2Add: {
      check_gap(m.a);
      check_gap(m.b);
      int c1 = n, c2 = n + 1;
      int s1 = m.sign;
      auto at_a = roles_for_r2(d, c1, c2, m.over_at_a, s1);
      auto at_b = roles_for_r2(d, c1, c2, !m.over_at_a, s1);
      if (!m.parallel) std::swap(at_b[0], at_b[1]);
      if (m.a == m.b) {
        std::vector<Slot> all = at_a;
        all.insert(all.end(), at_b.begin(), at_b.end());
        insert_at(comps, m.a, all);
      } else {
        Gap first = m.a, second = m.b;
        auto ins_first = at_a, ins_second = at_b;
        if (std::make_pair(first.comp, first.index) > std::make_pair(second.comp, second.index)) {
          std::swap(first, second);
          std::swap(ins_first, ins_second);
        }
        insert_at(comps, second, ins_second);
        insert_at(comps, first, ins_first);
      }
      signs.push_back(d.flavor() == Flavor::Virtual ? s1 : 0);
      signs.push_back(d.flavor() == Flavor::Virtual ? -s1 : 0);
      r.d = GaussDiagram(d.flavor(), comps, signs);
      r.f = Correspondence::identity(n);
      r.f.target_count = n + 2;
      r.created = {c1, c2};
      return r;
    }
    case MoveKind::R1Remove:
    case MoveKind::R2Remove: {
      std::vector<int> gone;
      if (m.kind == MoveKind::R1Remove) {
        int v = m.chords[0];
        if (v < 0 || v >= n || adjacency(d, d.where(v, End::Over), d.where(v, End::Under)) == 0) bad("chord ends not adjacent");
        gone = {v};
      } else {
        int a = m.chords[0], b = m.chords[1];
        if (a < 0 || b < 0 || a >= n || b >= n || a == b || !r2_removable(d, a, b)) bad("not an R2 pair");
        gone = {a, b};
      }
      std::vector<int> keep;
      r.f.map.assign(n, -1);
      for (int v = 0; v < n; ++v)
        if (std::find(gone.begin(), gone.end(), v) == gone.end()) {
          r.f.map[v] = static_cast<int>(keep.size());
          keep.push_back(v);
        }
      r.f.target_count = static_cast<int>(keep.size());
      r.d = d.restrict_to(keep);
      return r;
    }
    case MoveKind::R3: {
      auto [x, y, z] = m.chords;
      if (x < 0 || y < 0 || z < 0 || x >= n || y >= n || z >= n || x == y || y == z || x == z) bad("bad chords");
      if (!r3_check(d, x, y, z, m.variant)) bad("not an R3 triangle");
      auto ts = triangle_slots(d, x, y, z, m.variant);
      for (auto& [p, q] : ts->pairs) std::swap(comps[p.comp].slots[p.index], comps[q.comp].slots[q.index]);
      r.d = GaussDiagram(d.flavor(), comps, signs);
      r.f = Correspondence::identity(n);
      return r;
    }
  }
  bad("unknown move");
  return {};
}

std::vector<WalkStep> random_walk(const GaussDiagram& start, int steps, int max_crossings, std::mt19937_64& rng,
                                  const std::function<bool(const GaussDiagram&)>& accept) {
  std::vector<WalkStep> out;
  GaussDiagram d = start;
  const MoveKind kinds[5] = {MoveKind::R1Add, MoveKind::R1Remove, MoveKind::R2Add, MoveKind::R2Remove, MoveKind::R3};
  for (int s = 0; s < steps; ++s) {
    std::vector<std::vector<MoveInstance>> avail;
    std::vector<double> weight;
    bool near_cap = d.chord_count() >= max_crossings - 2;
    for (MoveKind k : kinds) {
      avail.push_back(enumerate_moves(d, k, max_crossings));
      bool remove = k == MoveKind::R1Remove || k == MoveKind::R2Remove;
      weight.push_back(avail.back().empty() ? 0.0 : (remove && near_cap ? 4.0 : 1.0));
    }
    bool done = false;
    for (int attempt = 0; attempt < 64 && !done; ++attempt) {
      double total = std::accumulate(weight.begin(), weight.end(), 0.0);
      if (total <= 0) break;
      std::discrete_distribution<int> pick(weight.begin(), weight.end());
      int k = pick(rng);
      auto& list = avail[k];
      std::uniform_int_distribution<size_t> u(0, list.size() - 1);
      size_t idx = u(rng);
      MoveResult r = apply_move(d, list[idx]);
      if (accept && !accept(r.d)) {
        list.erase(list.begin() + idx);
        if (list.empty()) weight[k] = 0;
        continue;
      }
      out.push_back({list[idx], r.d, r.f});
      d = r.d;
      done = true;
    }
    if (!done) break;
  }
  return out;
}

BasedDiagram wrap(const BasedDiagram& b, int n) {
  const GaussDiagram& d = b.d;
  int v = b.mark;
  if (d.flavor() == Flavor::Free && (n < 0 || n > 1))
    throw Error(ErrorCode::UnsupportedFlavor, "free wrapping is defined for orders 0 and 1");
  if (n == 0) return b;
  // Work with the crossing as a positive lift for Flat/Free.
  int s = d.flavor() == Flavor::Virtual ? d.sign(v) : 1;
  End over_role = End::Over, under_role = End::Under;
  SlotRef a_slot = d.flat_tail(v), b_slot = d.flat_head(v);
  if (d.flavor() == Flavor::Virtual) {
    a_slot = d.where(v, End::Over);
    b_slot = d.where(v, End::Under);
  }
  // Local picture: the over strand runs up the y-axis, the under strand along
  // the x-axis; the inner part of the over strand is turned by n half-turns.
  struct Local {
    double r;   // radius along the over strand
    double x;   // position on the under strand
    int sign;
    int arm;    // 0 first arm, 1 centre, 2 second arm
  };
  std::vector<Local> pts;
  int sg = n > 0 ? 1 : -1;
  int an = std::abs(n);
  // first arm: theta = -pi/2 + n pi (1 - r) hits multiples m pi
  for (int m = -an - 1; m <= an + 1; ++m) {
    double rr = 1.0 - (m + 0.5) / n;
    if (rr > 0 && rr < 1) pts.push_back({rr, rr * ((m % 2 == 0) ? 1 : -1), s * sg * ((m % 2 == 0) ? 1 : -1), 0});
  }
  pts.push_back({0, 0, (an % 2 == 0) ? s : -s, 1});
  for (int m = -an - 1; m <= an + 1; ++m) {
    double rr = 1.0 - (m - 0.5) / n;
    if (rr > 0 && rr < 1) pts.push_back({rr, rr * ((m % 2 == 0) ? 1 : -1), -s * sg * ((m % 2 == 0) ? 1 : -1), 2});
  }
  int k = static_cast<int>(pts.size());
  // order along the over strand
  std::vector<int> along_a(k), along_b(k);
  std::iota(along_a.begin(), along_a.end(), 0);
  std::sort(along_a.begin(), along_a.end(), [&](int i, int j) {
    if (pts[i].arm != pts[j].arm) return pts[i].arm < pts[j].arm;
    return pts[i].arm == 0 ? pts[i].r > pts[j].r : pts[i].r < pts[j].r;
  });
  // the under strand runs towards -x at a positive crossing
  std::iota(along_b.begin(), along_b.end(), 0);
  std::sort(along_b.begin(), along_b.end(), [&](int i, int j) { return s > 0 ? pts[i].x > pts[j].x : pts[i].x < pts[j].x; });
  int base = d.chord_count();
  std::vector<int> id(k);
  int next = base;
  for (int i = 0; i < k; ++i) id[i] = pts[i].arm == 1 ? v : next++;
  std::vector<int> signs = d.signs();
  signs.resize(next, 0);
  for (int i = 0; i < k; ++i) signs[id[i]] = pts[i].sign;
  auto role = [&](int i, bool on_over) {
    if (d.flavor() == Flavor::Virtual) return on_over ? over_role : under_role;
    End e = on_over ? End::Over : End::Under;
    return pts[i].sign < 0 ? other(e) : e;
  };
  std::vector<Slot> seq_a, seq_b;
  for (int i : along_a) seq_a.push_back({id[i], role(i, true)});
  for (int i : along_b) seq_b.push_back({id[i], role(i, false)});
  std::vector<Component> comps = d.components();
  auto replace = [&](SlotRef at, const std::vector<Slot>& seq) {
    auto& sl = comps[at.comp].slots;
    sl.erase(sl.begin() + at.index);
    sl.insert(sl.begin() + at.index, seq.begin(), seq.end());
  };
  bool a_later = a_slot.comp > b_slot.comp || (a_slot.comp == b_slot.comp && a_slot.index > b_slot.index);
  if (a_later) {
    replace(a_slot, seq_a);
    replace(b_slot, seq_b);
  } else {
    replace(b_slot, seq_b);
    replace(a_slot, seq_a);
  }
  if (d.flavor() != Flavor::Virtual) std::fill(signs.begin(), signs.end(), 0);
  GaussDiagram out(d.flavor(), comps, signs);
  if (d.flavor() == Flavor::Free) out = out.to_free();
  return {out, v};
}

namespace {

std::string serialize_from(const GaussDiagram& d, const std::vector<int>& offsets, int mark) {
  std::vector<int> label(d.chord_count(), 0);
  int next = 0;
  std::string out;
  out.reserve(d.total_slots() * 4 + 8);
  for (int c = 0; c < d.component_count(); ++c) {
    const auto& sl = d.component(c).slots;
    int n = static_cast<int>(sl.size());
    if (c) out += ';';
    out += d.component(c).kind == ComponentKind::Closed ? 'c' : 'l';
    for (int i = 0; i < n; ++i) {
      const Slot& s = sl[(i + offsets[c]) % n];
      if (!label[s.chord]) label[s.chord] = ++next;
      switch (d.flavor()) {
        case Flavor::Virtual:
          out += s.end == End::Over ? 'O' : 'U';
          break;
        case Flavor::Flat:
          out += s.end == End::Over ? 'T' : 'H';
          break;
        case Flavor::Free:
          out += 'E';
          break;
      }
      out += std::to_string(label[s.chord]);
      if (d.flavor() == Flavor::Virtual) out += d.sign(s.chord) > 0 ? '+' : '-';
    }
  }
  if (mark >= 0) out += "|" + std::to_string(label[mark]);
  return out;
}

std::string canonical_impl(const GaussDiagram& d, int mark) {
  int nc = d.component_count();
  std::vector<int> sizes(nc), offsets(nc, 0);
  for (int c = 0; c < nc; ++c) {
    int n = static_cast<int>(d.component(c).slots.size());
    sizes[c] = d.component(c).kind == ComponentKind::Closed ? std::max(n, 1) : 1;
  }
  std::string best;
  bool first = true;
  while (true) {
    std::string s = serialize_from(d, offsets, mark);
    if (first || s < best) best = s;
    first = false;
    int c = 0;
    while (c < nc && ++offsets[c] == sizes[c]) offsets[c++] = 0;
    if (c == nc) break;
  }
  return best;
}

}  // namespace

std::string canonical_key(const BasedDiagram& b) { return canonical_impl(b.d, b.mark); }
std::string canonical_key(const GaussDiagram& d) { return canonical_impl(d, -1); }

namespace {

struct Node {
  BasedDiagram b;
  std::string parent;
  MoveInstance move;
  int depth = 0;
};

std::vector<std::pair<MoveInstance, BasedDiagram>> based_neighbours(const BasedDiagram& b, const SearchBudget& budget) {
  std::vector<std::pair<MoveInstance, BasedDiagram>> out;
  for (auto& m : enumerate_moves(b.d, budget.max_crossings)) {
    if ((m.kind == MoveKind::R1Remove && m.chords[0] == b.mark) ||
        (m.kind == MoveKind::R2Remove && (m.chords[0] == b.mark || m.chords[1] == b.mark)))
      continue;
    MoveResult r = apply_move(b.d, m);
    if (budget.planar_only && Surface(r.d).genus() != 0) continue;
    out.push_back({m, {r.d, r.f.map[b.mark]}});
  }
  return out;
}

}  // namespace

namespace {

std::optional<std::vector<PathStep>> bfs_at_cap(const BasedDiagram& from, const BasedDiagram& to,
                                                const SearchBudget& budget) {
  std::string ks = canonical_key(from), kt = canonical_key(to);
  if (ks == kt) return std::vector<PathStep>{};
  std::unordered_map<std::string, Node> seen[2];
  seen[0][ks] = {from, "", {}, 0};
  seen[1][kt] = {to, "", {}, 0};
  std::vector<std::string> frontier[2] = {{ks}, {kt}};
  int depth[2] = {0, 0};
  long states = 2;
  std::string meet;
  while (meet.empty() && depth[0] + depth[1] < budget.max_depth) {
    if (frontier[0].empty() || frontier[1].empty()) break;
    int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<std::string> next;
    for (auto& key : frontier[side]) {
      BasedDiagram cur = seen[side][key].b;
      for (auto& [m, nb] : based_neighbours(cur, budget)) {
        std::string k = canonical_key(nb);
        if (seen[side].count(k)) continue;
        seen[side][k] = {nb, key, m, depth[side] + 1};
        ++states;
        next.push_back(k);
        if (seen[1 - side].count(k)) {
          meet = k;
          break;
        }
      }
      if (!meet.empty() || states > budget.max_states) break;
    }
    ++depth[side];
    frontier[side] = std::move(next);
    if (states > budget.max_states) break;
  }
  if (meet.empty()) return std::nullopt;
  // forward half
  std::vector<PathStep> path;
  {
    std::vector<std::string> chain;
    for (std::string k = meet; !k.empty(); k = seen[0][k].parent) chain.push_back(k);
    std::reverse(chain.begin(), chain.end());
    for (size_t i = 1; i < chain.size(); ++i) path.push_back({seen[0][chain[i]].move, seen[0][chain[i]].b});
  }
  // backward half: re-find a move from the current diagram to each next state
  BasedDiagram cur = path.empty() ? from : path.back().after;
  for (std::string k = seen[1][meet].parent; ; k = seen[1][k].parent) {
    if (k.empty()) break;
    bool found = false;
    for (auto& [m, nb] : based_neighbours(cur, SearchBudget{budget.max_crossings, 0, 0, false})) {
      if (canonical_key(nb) == k) {
        path.push_back({m, nb});
        cur = nb;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return path;
}

}  // namespace

// Tries the crossing caps in increasing order; a low cap keeps the frontier
// small, so short paths are found before the state budget runs out.
std::optional<std::vector<PathStep>> bounded_bfs(const BasedDiagram& from, const BasedDiagram& to,
                                                 const SearchBudget& budget) {
  int lo = std::max(from.d.chord_count(), to.d.chord_count());
  for (int cap = std::min(lo, budget.max_crossings); cap <= budget.max_crossings; ++cap) {
    SearchBudget b = budget;
    b.max_crossings = cap;
    if (auto p = bfs_at_cap(from, to, b)) return p;
  }
  return std::nullopt;
}

bool replay_path(const BasedDiagram& from, const std::vector<PathStep>& path, const BasedDiagram& to) {
  BasedDiagram cur = from;
  try {
    for (auto& st : path) {
      MoveResult r = apply_move(cur.d, st.move);
      int mk = r.f.map[cur.mark];
      if (mk < 0) return false;
      cur = {r.d, mk};
    }
  } catch (const Error&) {
    return false;
  }
  return canonical_key(cur) == canonical_key(to);
}

std::string path_to_jsonl(const BasedDiagram& from, const std::vector<PathStep>& path) {
  std::ostringstream out;
  out << json{{"step", 0}, {"diagram", from.d.serialize()}, {"mark", from.mark + 1}}.dump() << "\n";
  int i = 0;
  for (auto& st : path) {
    json j;
    j["step"] = ++i;
    j["move"] = json::parse(st.move.to_json());
    j["diagram"] = st.after.d.serialize();
    j["mark"] = st.after.mark + 1;
    out << j.dump() << "\n";
  }
  return out.str();
}

CrossingGraph explore_crossing_graph(const GaussDiagram& d, const SearchBudget& budget) {
  int n = d.chord_count();
  CrossingGraph g;
  g.component.resize(n);
  std::iota(g.component.begin(), g.component.end(), 0);
  g.parity.assign(n, 0);
  std::vector<std::string> key(n);
  for (int v = 0; v < n; ++v) key[v] = canonical_key(BasedDiagram{d, v});
  std::function<int(int)> find = [&](int x) {
    while (g.component[x] != x) x = g.component[x];
    return x;
  };
  std::function<int(int)> par_to_root = [&](int x) {
    int p = 0;
    while (g.component[x] != x) {
      p ^= g.parity[x];
      x = g.component[x];
    }
    return p;
  };
  for (int v = 0; v < n; ++v) {
    std::unordered_map<std::string, int> parity;
    std::deque<std::pair<BasedDiagram, int>> q;
    parity[key[v]] = 0;
    q.push_back({{d, v}, 0});
    long states = 1;
    while (!q.empty() && states < budget.max_states) {
      auto [cur, dep] = q.front();
      q.pop_front();
      int pc = parity[canonical_key(cur)];
      if (dep >= budget.max_depth) continue;
      std::vector<std::pair<BasedDiagram, int>> nbs;
      for (auto& [m, nb] : based_neighbours(cur, budget)) nbs.push_back({nb, pc});
      for (auto [a, b] : i2_pairs(cur.d)) {
        if (a == cur.mark) nbs.push_back({{cur.d, b}, pc ^ 1});
        if (b == cur.mark) nbs.push_back({{cur.d, a}, pc ^ 1});
      }
      for (auto& [nb, p] : nbs) {
        std::string k = canonical_key(nb);
        auto it = parity.find(k);
        if (it != parity.end()) {
          if (it->second != p) g.parity_consistent = false;
          continue;
        }
        parity[k] = p;
        ++states;
        q.push_back({nb, dep + 1});
      }
    }
    for (int w = 0; w < n; ++w) {
      auto it = parity.find(key[w]);
      if (it == parity.end() || w == v) continue;
      int rv = find(v), rw = find(w);
      int want = it->second;
      if (rv == rw) {
        if ((par_to_root(v) ^ par_to_root(w)) != want) g.parity_consistent = false;
        continue;
      }
      g.parity[rw] = par_to_root(v) ^ par_to_root(w) ^ want;
      g.component[rw] = rv;
    }
  }
  std::vector<int> comp(n), par(n);
  for (int v = 0; v < n; ++v) {
    comp[v] = find(v);
    par[v] = par_to_root(v);
  }
  g.component = comp;
  g.parity = par;
  return g;
}

}  // namespace chordal
