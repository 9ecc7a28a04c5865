#pragma once

#include <climits>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chordal/gauss.hpp"

namespace chordal {

enum class MoveKind { R1Add, R1Remove, R2Add, R2Remove, R3 };

const char* to_string(MoveKind k);

struct Gap {
  int comp = 0;
  int index = 0;
  bool operator==(const Gap&) const = default;
};

// R1Add: gap a, first_end, sign.
// R2Add: gaps a <= b, over_at_a, parallel, sign of the chord inserted first at a.
// R1Remove: chords[0]. R2Remove: chords[0..1]. R3: chords[0..2] and variant.
struct MoveInstance {
  MoveKind kind = MoveKind::R1Add;
  Gap a, b;
  std::array<int, 3> chords{-1, -1, -1};
  End first_end = End::Over;
  int sign = 1;
  bool over_at_a = true;
  bool parallel = false;
  int variant = 0;

  std::string to_json() const;
  static MoveInstance from_json(const std::string& s);
};

// map[v] is the new id of chord v, or -1 if it did not survive.
struct Correspondence {
  std::vector<int> map;
  int target_count = 0;
  Correspondence then(const Correspondence& next) const;
  static Correspondence identity(int n);
};

struct MoveResult {
  GaussDiagram d;
  Correspondence f;
  std::vector<int> created;
};

std::vector<Gap> gaps(const GaussDiagram& d);
std::vector<MoveInstance> enumerate_moves(const GaussDiagram& d, int max_crossings = INT_MAX);
std::vector<MoveInstance> enumerate_moves(const GaussDiagram& d, MoveKind kind, int max_crossings = INT_MAX);
MoveResult apply_move(const GaussDiagram& d, const MoveInstance& m);

// Chord pairs that an R2 move can remove.
std::vector<std::pair<int, int>> i2_pairs(const GaussDiagram& d);

// Chords whose two ends are adjacent (removable by R1).
std::vector<int> r1_chords(const GaussDiagram& d);

// Orientation data of an R3 triangle: chords indexed by strand pair.
struct Triangle {
  int tm, tb, mb;      // chords
  int ot, om, ob;      // +1 if the first named crossing comes first on that strand
  int stm, stb, smb;   // signs of the lift realizing the move (actual signs if Virtual)
  MoveInstance move;
};
std::vector<Triangle> triangles(const GaussDiagram& d);

struct WalkStep {
  MoveInstance move;
  GaussDiagram d;
  Correspondence f;
};

std::vector<WalkStep> random_walk(const GaussDiagram& d, int steps, int max_crossings, std::mt19937_64& rng,
                                  const std::function<bool(const GaussDiagram&)>& accept = nullptr);

// Rotates the overcrossing of the mark by n half-turns.
BasedDiagram wrap(const BasedDiagram& b, int n);

// Canonical key of a based diagram: least serialization over base slots and
// relabelings; component numbering is kept.
std::string canonical_key(const BasedDiagram& b);
std::string canonical_key(const GaussDiagram& d);

struct PathStep {
  MoveInstance move;
  BasedDiagram after;
};

struct SearchBudget {
  int max_crossings = 8;
  int max_depth = 10;
  long max_states = 2000000;
  bool planar_only = false;
};

// Bidirectional breadth-first search through moves that keep the mark.
std::optional<std::vector<PathStep>> bounded_bfs(const BasedDiagram& from, const BasedDiagram& to,
                                                 const SearchBudget& budget);

// Replays a path and checks that it ends at `to` up to canonical form.
bool replay_path(const BasedDiagram& from, const std::vector<PathStep>& path, const BasedDiagram& to);

std::string path_to_jsonl(const BasedDiagram& from, const std::vector<PathStep>& path);

// Components of the graph on crossings of d joined by based equivalence,
// explored up to the budget. Each edge also records whether the I2 parity
// along it is even.
struct CrossingGraph {
  std::vector<int> component;  // per chord of d
  std::vector<int> parity;     // parity relative to the component root
  bool parity_consistent = true;
};
CrossingGraph explore_crossing_graph(const GaussDiagram& d, const SearchBudget& budget);

}  // namespace chordal
