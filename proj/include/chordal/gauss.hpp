#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chordal {

enum class ErrorCode {
  BadToken,
  UnbalancedLabel,
  RoleConflict,
  SignMissing,
  SignConflict,
  BadComponentKind,
  NotSelfCrossing,
  UnsupportedFlavor,
  BadArgument,
  UnknownName,
  UnknownIndex,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class Flavor { Virtual, Flat, Free };
enum class ComponentKind { Closed, Long };

// For Flat chords Over is the arrow tail and Under the head.
// For Free chords the two ends are recorded as Over/Under only to tell them apart.
enum class End : std::uint8_t { Over = 0, Under = 1 };

inline End other(End e) { return e == End::Over ? End::Under : End::Over; }

struct Slot {
  int chord;
  End end;
  bool operator==(const Slot&) const = default;
};

struct Component {
  ComponentKind kind = ComponentKind::Closed;
  std::vector<Slot> slots;
  bool operator==(const Component&) const = default;
};

struct SlotRef {
  int comp = -1;
  int index = -1;
  bool operator==(const SlotRef&) const = default;
};

enum class Smoothing { Oriented, Unoriented };

// Chords are numbered 0..chord_count()-1. Text labels are 1-based.
class GaussDiagram {
 public:
  GaussDiagram() = default;
  // signs: one per chord; ignored (forced to 0) unless flavor is Virtual.
  GaussDiagram(Flavor flavor, std::vector<Component> comps, std::vector<int> signs);

  static GaussDiagram parse(const std::string& text);
  std::string serialize() const;

  Flavor flavor() const { return flavor_; }
  int chord_count() const { return static_cast<int>(signs_.size()); }
  int component_count() const { return static_cast<int>(comps_.size()); }
  const std::vector<Component>& components() const { return comps_; }
  const Component& component(int c) const { return comps_[c]; }
  const std::vector<int>& signs() const { return signs_; }

  int sign(int v) const;
  SlotRef where(int v, End e) const { return ends_[v][static_cast<int>(e)]; }
  const Slot& at(SlotRef r) const { return comps_[r.comp].slots[r.index]; }

  // Flat arrow ends: for Virtual chords the arrow is the one of the positive
  // crossing obtained by switching, so it is reversed when sgn = -1.
  SlotRef flat_tail(int v) const;
  SlotRef flat_head(int v) const;

  bool is_self(int v) const;
  // Slots strictly after `from` and strictly before `to` along the component.
  std::vector<SlotRef> arc_between(SlotRef from, SlotRef to) const;
  // Left half: from the flat head of v forward to its flat tail.
  std::vector<SlotRef> left_half(int v) const;
  std::vector<SlotRef> right_half(int v) const;
  // Positive half: from the actual arrow head (under end) forward to the over end.
  std::vector<SlotRef> positive_half(int v) const;

  bool linked(int v, int w) const;
  // +1 if w is linked with v and the flat head of w is on the left half of v,
  // -1 if its flat tail is there, 0 otherwise.
  int lk_pair(int v, int w) const;

  std::pair<int, int> component_index(int v) const;  // 1-based (over, under)
  int order_index(int v) const;                      // long components only

  // Oriented: the left half becomes a new component followed by the right half.
  // Unoriented: one component keeping the direction of the left half.
  std::vector<GaussDiagram> smoothing(int v, Smoothing kind) const;

  GaussDiagram to_flat() const;
  GaussDiagram to_free() const;
  GaussDiagram crossing_change(int v) const;
  GaussDiagram virtualize(int v) const;
  GaussDiagram reversed() const;
  GaussDiagram reversed_component(int c) const;
  GaussDiagram mirror() const;
  GaussDiagram without_chord(int v) const;
  // Keeps the listed chords (in the given order of new ids) and drops the rest.
  GaussDiagram restrict_to(const std::vector<int>& keep) const;

  int total_slots() const;
  bool operator==(const GaussDiagram& o) const {
    return flavor_ == o.flavor_ && comps_ == o.comps_ && signs_ == o.signs_;
  }

 private:
  void index_ends();

  Flavor flavor_ = Flavor::Virtual;
  std::vector<Component> comps_;
  std::vector<int> signs_;
  std::vector<std::array<SlotRef, 2>> ends_;
};

struct BasedDiagram {
  GaussDiagram d;
  int mark = 0;
};

struct CatalogEntry {
  std::string name;
  GaussDiagram diagram;
};

std::vector<CatalogEntry> parse_catalog(const std::string& text);
std::vector<CatalogEntry> load_catalog(const std::string& path);
const CatalogEntry* find_entry(const std::vector<CatalogEntry>& cat, const std::string& name);

// Closure of a braid word; generator k>0 is sigma_k, k<0 its inverse.
GaussDiagram braid_closure(int strands, const std::vector<int>& word);

}  // namespace chordal
