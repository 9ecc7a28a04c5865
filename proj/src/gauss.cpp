#include "chordal/gauss.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace chordal {

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadToken: return "BadToken";
    case ErrorCode::UnbalancedLabel: return "UnbalancedLabel";
    case ErrorCode::RoleConflict: return "RoleConflict";
    case ErrorCode::SignMissing: return "SignMissing";
    case ErrorCode::SignConflict: return "SignConflict";
    case ErrorCode::BadComponentKind: return "BadComponentKind";
    case ErrorCode::NotSelfCrossing: return "NotSelfCrossing";
    case ErrorCode::UnsupportedFlavor: return "UnsupportedFlavor";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::UnknownIndex: return "UnknownIndex";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(ErrorCode c, const std::string& msg) {
  throw Error(c, std::string(to_string(c)) + ": " + msg);
}

}  // namespace

GaussDiagram::GaussDiagram(Flavor flavor, std::vector<Component> comps, std::vector<int> signs)
    : flavor_(flavor), comps_(std::move(comps)), signs_(std::move(signs)) {
  if (flavor_ != Flavor::Virtual) std::fill(signs_.begin(), signs_.end(), 0);
  for (int s : signs_)
    if (flavor_ == Flavor::Virtual && s != 1 && s != -1) fail(ErrorCode::SignMissing, "sign must be +-1");
  index_ends();
  if (flavor_ == Flavor::Free) {
    // the first visited end of a free chord is stored as Over
    std::vector<bool> seen(signs_.size(), false);
    for (auto& c : comps_)
      for (auto& s : c.slots) {
        if (!seen[s.chord]) {
          seen[s.chord] = true;
          if (s.end != End::Over) {
            SlotRef a = ends_[s.chord][0], b = ends_[s.chord][1];
            std::swap(comps_[a.comp].slots[a.index].end, comps_[b.comp].slots[b.index].end);
          }
        }
      }
    index_ends();
  }
}

void GaussDiagram::index_ends() {
  int n = chord_count();
  ends_.assign(n, {SlotRef{}, SlotRef{}});
  std::vector<std::array<int, 2>> count(n, {0, 0});
  for (int c = 0; c < component_count(); ++c)
    for (int i = 0; i < static_cast<int>(comps_[c].slots.size()); ++i) {
      const Slot& s = comps_[c].slots[i];
      if (s.chord < 0 || s.chord >= n) fail(ErrorCode::UnbalancedLabel, "chord id out of range");
      int e = static_cast<int>(s.end);
      if (++count[s.chord][e] > 1) fail(ErrorCode::RoleConflict, "chord " + std::to_string(s.chord + 1) + " repeats an end");
      ends_[s.chord][e] = SlotRef{c, i};
    }
  for (int v = 0; v < n; ++v)
    if (count[v][0] != 1 || count[v][1] != 1)
      fail(ErrorCode::UnbalancedLabel, "chord " + std::to_string(v + 1) + " must have two ends");
}

GaussDiagram GaussDiagram::parse(const std::string& text) {
  std::vector<std::string> parts;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == ';') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
  }
  struct Tok {
    char letter;
    long label;
    int sign;
  };
  std::optional<Flavor> flavor;
  std::vector<std::pair<ComponentKind, std::vector<Tok>>> raw;
  for (auto& p : parts) {
    std::string t = trim(p);
    if (t.size() < 2 || t[1] != ':' || (t[0] != 'c' && t[0] != 'l'))
      fail(ErrorCode::BadComponentKind, "component must start with c: or l:, got '" + t + "'");
    ComponentKind kind = t[0] == 'c' ? ComponentKind::Closed : ComponentKind::Long;
    std::istringstream in(t.substr(2));
    std::string tok;
    std::vector<Tok> toks;
    while (in >> tok) {
      char L = tok[0];
      Flavor f;
      if (L == 'O' || L == 'U') f = Flavor::Virtual;
      else if (L == 'H' || L == 'T') f = Flavor::Flat;
      else if (L == 'E') f = Flavor::Free;
      else fail(ErrorCode::BadToken, "unknown token '" + tok + "'");
      if (flavor && *flavor != f) fail(ErrorCode::BadToken, "mixed flavors at '" + tok + "'");
      flavor = f;
      size_t i = 1;
      while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
      if (i == 1) fail(ErrorCode::BadToken, "missing label in '" + tok + "'");
      if (i - 1 > 9) fail(ErrorCode::BadToken, "label too long in '" + tok + "'");
      long label = std::stol(tok.substr(1, i - 1));
      if (label <= 0) fail(ErrorCode::BadToken, "labels are positive in '" + tok + "'");
      int sign = 0;
      if (i < tok.size()) {
        if (i + 1 != tok.size() || (tok[i] != '+' && tok[i] != '-'))
          fail(ErrorCode::BadToken, "trailing characters in '" + tok + "'");
        if (f != Flavor::Virtual) fail(ErrorCode::BadToken, "sign on unsigned token '" + tok + "'");
        sign = tok[i] == '+' ? 1 : -1;
      } else if (f == Flavor::Virtual) {
        fail(ErrorCode::SignMissing, "token '" + tok + "'");
      }
      toks.push_back({L, label, sign});
    }
    raw.emplace_back(kind, std::move(toks));
  }
  Flavor fl = flavor.value_or(Flavor::Virtual);
  std::map<long, int> ids;
  for (auto& [k, toks] : raw)
    for (auto& t : toks) ids[t.label] = 0;
  int next = 0;
  for (auto& [l, id] : ids) id = next++;
  std::vector<int> signs(ids.size(), 0);
  std::vector<int> count(ids.size(), 0);
  std::vector<Component> comps;
  for (auto& [k, toks] : raw) {
    Component c;
    c.kind = k;
    for (auto& t : toks) {
      int id = ids[t.label];
      ++count[id];
      End e = End::Over;
      if (t.letter == 'U' || t.letter == 'H') e = End::Under;
      if (t.letter == 'E') e = count[id] == 1 ? End::Over : End::Under;
      if (fl == Flavor::Virtual) {
        if (signs[id] != 0 && signs[id] != t.sign)
          fail(ErrorCode::SignConflict, "chord " + std::to_string(t.label) + " has two signs");
        signs[id] = t.sign;
      }
      c.slots.push_back({id, e});
    }
    comps.push_back(std::move(c));
  }
  for (auto& [l, id] : ids)
    if (count[id] != 2) fail(ErrorCode::UnbalancedLabel, "label " + std::to_string(l) + " occurs " + std::to_string(count[id]) + " times");
  return GaussDiagram(fl, std::move(comps), std::move(signs));
}

std::string GaussDiagram::serialize() const {
  std::string out;
  for (int c = 0; c < component_count(); ++c) {
    if (c) out += " ; ";
    out += comps_[c].kind == ComponentKind::Closed ? "c:" : "l:";
    for (const Slot& s : comps_[c].slots) {
      out += ' ';
      switch (flavor_) {
        case Flavor::Virtual:
          out += s.end == End::Over ? 'O' : 'U';
          out += std::to_string(s.chord + 1);
          out += signs_[s.chord] > 0 ? '+' : '-';
          break;
        case Flavor::Flat:
          out += s.end == End::Over ? 'T' : 'H';
          out += std::to_string(s.chord + 1);
          break;
        case Flavor::Free:
          out += 'E';
          out += std::to_string(s.chord + 1);
          break;
      }
    }
  }
  return out;
}

int GaussDiagram::sign(int v) const { return signs_.at(v); }

SlotRef GaussDiagram::flat_tail(int v) const {
  if (flavor_ == Flavor::Virtual && signs_[v] < 0) return where(v, End::Under);
  return where(v, End::Over);
}

SlotRef GaussDiagram::flat_head(int v) const {
  if (flavor_ == Flavor::Virtual && signs_[v] < 0) return where(v, End::Over);
  return where(v, End::Under);
}

bool GaussDiagram::is_self(int v) const { return where(v, End::Over).comp == where(v, End::Under).comp; }

std::vector<SlotRef> GaussDiagram::arc_between(SlotRef from, SlotRef to) const {
  if (from.comp != to.comp) fail(ErrorCode::NotSelfCrossing, "ends on different components");
  std::vector<SlotRef> out;
  int n = static_cast<int>(comps_[from.comp].slots.size());
  for (int i = (from.index + 1) % n; i != to.index; i = (i + 1) % n) out.push_back({from.comp, i});
  return out;
}

std::vector<SlotRef> GaussDiagram::left_half(int v) const { return arc_between(flat_head(v), flat_tail(v)); }
std::vector<SlotRef> GaussDiagram::right_half(int v) const { return arc_between(flat_tail(v), flat_head(v)); }
std::vector<SlotRef> GaussDiagram::positive_half(int v) const {
  return arc_between(where(v, End::Under), where(v, End::Over));
}

namespace {
// true if x lies strictly inside the cyclic arc from a to b
bool inside(int a, int b, int x, int n) {
  int db = ((b - a) % n + n) % n;
  int dx = ((x - a) % n + n) % n;
  return dx > 0 && dx < db;
}
}  // namespace

bool GaussDiagram::linked(int v, int w) const {
  if (v == w || !is_self(v) || !is_self(w)) return false;
  SlotRef a = where(v, End::Over), b = where(v, End::Under);
  SlotRef x = where(w, End::Over), y = where(w, End::Under);
  if (a.comp != x.comp) return false;
  int n = static_cast<int>(comps_[a.comp].slots.size());
  return inside(a.index, b.index, x.index, n) != inside(a.index, b.index, y.index, n);
}

int GaussDiagram::lk_pair(int v, int w) const {
  if (!linked(v, w)) return 0;
  SlotRef h = flat_head(v), t = flat_tail(v);
  int n = static_cast<int>(comps_[h.comp].slots.size());
  return inside(h.index, t.index, flat_head(w).index, n) ? 1 : -1;
}

std::pair<int, int> GaussDiagram::component_index(int v) const {
  return {where(v, End::Over).comp + 1, where(v, End::Under).comp + 1};
}

int GaussDiagram::order_index(int v) const {
  SlotRef o = where(v, End::Over), u = where(v, End::Under);
  if (o.comp != u.comp || comps_[o.comp].kind != ComponentKind::Long)
    fail(ErrorCode::NotSelfCrossing, "order index needs a self-crossing of a long component");
  return u.index < o.index ? -1 : 1;
}

int GaussDiagram::total_slots() const {
  int t = 0;
  for (auto& c : comps_) t += static_cast<int>(c.slots.size());
  return t;
}

GaussDiagram GaussDiagram::restrict_to(const std::vector<int>& keep) const {
  std::vector<int> id(chord_count(), -1);
  std::vector<int> signs;
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    id[keep[i]] = i;
    signs.push_back(signs_[keep[i]]);
  }
  std::vector<Component> comps;
  for (auto& c : comps_) {
    Component nc;
    nc.kind = c.kind;
    for (auto& s : c.slots)
      if (id[s.chord] >= 0) nc.slots.push_back({id[s.chord], s.end});
    comps.push_back(std::move(nc));
  }
  return GaussDiagram(flavor_, std::move(comps), std::move(signs));
}

GaussDiagram GaussDiagram::without_chord(int v) const {
  std::vector<int> keep;
  for (int w = 0; w < chord_count(); ++w)
    if (w != v) keep.push_back(w);
  return restrict_to(keep);
}

namespace {

// Fixes chords that meet exactly one reversed strand: the count per chord is
// the number of its ends lying on a reversed arc.
// Builds a diagram from components that no longer contain chord v.
GaussDiagram drop_chord(Flavor fl, std::vector<Component> comps, std::vector<int> signs, int v) {
  for (auto& c : comps)
    for (auto& s : c.slots)
      if (s.chord > v) --s.chord;
  signs.erase(signs.begin() + v);
  return GaussDiagram(fl, std::move(comps), std::move(signs));
}

void flip_partial(Flavor fl, std::vector<Component>& comps, std::vector<int>& signs,
                  const std::vector<int>& reversed_ends_per_chord) {
  for (int w = 0; w < static_cast<int>(signs.size()); ++w) {
    if (reversed_ends_per_chord[w] != 1) continue;
    if (fl == Flavor::Virtual) signs[w] = -signs[w];
    if (fl == Flavor::Flat)
      for (auto& c : comps)
        for (auto& s : c.slots)
          if (s.chord == w) s.end = other(s.end);
  }
}

}  // namespace

std::vector<GaussDiagram> GaussDiagram::smoothing(int v, Smoothing kind) const {
  if (!is_self(v)) fail(ErrorCode::NotSelfCrossing, "smoothing needs a self-crossing");
  SlotRef h = flat_head(v), t = flat_tail(v);
  int c = h.comp;
  const Component& comp = comps_[c];
  int n = static_cast<int>(comp.slots.size());
  auto collect = [&](const std::vector<SlotRef>& refs) {
    std::vector<Slot> out;
    for (auto& r : refs) out.push_back(comp.slots[r.index]);
    return out;
  };
  std::vector<Slot> left = collect(left_half(v));
  std::vector<Slot> right = collect(right_half(v));
  std::vector<Component> comps;
  std::vector<int> signs = signs_;
  if (kind == Smoothing::Oriented) {
    Component a, b;
    a.kind = b.kind = ComponentKind::Closed;
    a.slots = left;
    b.slots = right;
    if (comp.kind == ComponentKind::Long) {
      // the part through the end of the line stays long
      int lo = std::min(h.index, t.index), hi = std::max(h.index, t.index);
      std::vector<Slot> outer;
      for (int i = 0; i < lo; ++i) outer.push_back(comp.slots[i]);
      for (int i = hi + 1; i < n; ++i) outer.push_back(comp.slots[i]);
      Component& w = h.index < t.index ? b : a;
      w.kind = ComponentKind::Long;
      w.slots = outer;
    }
    for (int i = 0; i < component_count(); ++i) {
      if (i == c) {
        comps.push_back(a);
        comps.push_back(b);
      } else {
        comps.push_back(comps_[i]);
      }
    }
    return {drop_chord(flavor_, comps, signs, v)};
  }
  // unoriented: keep one side, reverse the other
  std::vector<Slot> rev_part;
  Component nc;
  nc.kind = comp.kind;
  if (comp.kind == ComponentKind::Long) {
    int lo = std::min(h.index, t.index), hi = std::max(h.index, t.index);
    for (int i = lo + 1; i < hi; ++i) rev_part.push_back(comp.slots[i]);
    for (int i = 0; i < lo; ++i) nc.slots.push_back(comp.slots[i]);
    for (auto it = rev_part.rbegin(); it != rev_part.rend(); ++it) nc.slots.push_back(*it);
    for (int i = hi + 1; i < n; ++i) nc.slots.push_back(comp.slots[i]);
  } else {
    rev_part = right;
    nc.slots = left;
    for (auto it = right.rbegin(); it != right.rend(); ++it) nc.slots.push_back(*it);
  }
  std::vector<int> cnt(chord_count(), 0);
  for (auto& s : rev_part) ++cnt[s.chord];
  for (int i = 0; i < component_count(); ++i) comps.push_back(i == c ? nc : comps_[i]);
  flip_partial(flavor_, comps, signs, cnt);
  GaussDiagram r = drop_chord(flavor_, comps, signs, v);
  // for a long component the middle part was reversed; when that part is the
  // left half, reverse the whole component so the left half keeps its direction
  if (comp.kind == ComponentKind::Long && h.index < t.index) r = r.reversed_component(c);
  return {r};
}

GaussDiagram GaussDiagram::to_flat() const {
  if (flavor_ == Flavor::Flat) return *this;
  if (flavor_ == Flavor::Free) fail(ErrorCode::UnsupportedFlavor, "free diagrams have no arrows");
  std::vector<Component> comps = comps_;
  for (auto& c : comps)
    for (auto& s : c.slots)
      if (signs_[s.chord] < 0) s.end = other(s.end);
  return GaussDiagram(Flavor::Flat, std::move(comps), std::vector<int>(signs_.size(), 0));
}

GaussDiagram GaussDiagram::to_free() const {
  return GaussDiagram(Flavor::Free, comps_, std::vector<int>(signs_.size(), 0));
}

GaussDiagram GaussDiagram::crossing_change(int v) const {
  if (flavor_ != Flavor::Virtual) fail(ErrorCode::UnsupportedFlavor, "crossing change needs signs");
  std::vector<Component> comps = comps_;
  for (auto& c : comps)
    for (auto& s : c.slots)
      if (s.chord == v) s.end = other(s.end);
  std::vector<int> signs = signs_;
  signs[v] = -signs[v];
  return GaussDiagram(flavor_, std::move(comps), std::move(signs));
}

GaussDiagram GaussDiagram::virtualize(int v) const {
  if (v < 0 || v >= chord_count()) fail(ErrorCode::BadArgument, "no such chord");
  return without_chord(v);
}

GaussDiagram GaussDiagram::reversed_component(int c) const {
  if (c < 0 || c >= component_count()) fail(ErrorCode::BadArgument, "no such component");
  std::vector<Component> comps = comps_;
  std::reverse(comps[c].slots.begin(), comps[c].slots.end());
  std::vector<int> signs = signs_;
  std::vector<int> cnt(chord_count(), 0);
  for (auto& s : comps[c].slots) ++cnt[s.chord];
  flip_partial(flavor_, comps, signs, cnt);
  return GaussDiagram(flavor_, std::move(comps), std::move(signs));
}

GaussDiagram GaussDiagram::reversed() const {
  std::vector<Component> comps = comps_;
  for (auto& c : comps) std::reverse(c.slots.begin(), c.slots.end());
  return GaussDiagram(flavor_, std::move(comps), signs_);
}

GaussDiagram GaussDiagram::mirror() const {
  GaussDiagram d = *this;
  for (int v = 0; v < chord_count(); ++v) d = d.crossing_change(v);
  return d;
}

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
  std::vector<CatalogEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::BadToken, "catalog line " + std::to_string(lineno) + " lacks '='");
    std::string name = trim(line.substr(0, eq));
    if (find_entry(out, name)) fail(ErrorCode::BadArgument, "catalog line " + std::to_string(lineno) + " repeats '" + name + "'");
    out.push_back({name, GaussDiagram::parse(line.substr(eq + 1))});
  }
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::BadArgument, "cannot open catalog " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_catalog(ss.str());
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& cat, const std::string& name) {
  for (auto& e : cat)
    if (e.name == name) return &e;
  return nullptr;
}

GaussDiagram braid_closure(int strands, const std::vector<int>& word) {
  int m = static_cast<int>(word.size());
  std::vector<int> signs(m);
  for (int t = 0; t < m; ++t) {
    int k = std::abs(word[t]);
    if (k < 1 || k >= strands) fail(ErrorCode::BadArgument, "generator out of range");
    signs[t] = word[t] > 0 ? 1 : -1;
  }
  std::vector<bool> started(strands, false);
  std::vector<Component> comps;
  for (int p = 0; p < strands; ++p) {
    if (started[p]) continue;
    Component c;
    int cur = p;
    do {
      started[cur] = true;
      for (int t = 0; t < m; ++t) {
        int k = std::abs(word[t]);
        if (cur != k - 1 && cur != k) continue;
        bool from_left = cur == k - 1;
        // the strand moving left to right passes under a positive generator
        End e = (from_left == (word[t] > 0)) ? End::Under : End::Over;
        c.slots.push_back({t, e});
        cur = from_left ? k : k - 1;
      }
    } while (cur != p);
    comps.push_back(std::move(c));
  }
  return GaussDiagram(Flavor::Virtual, std::move(comps), std::move(signs));
}

}  // namespace chordal
