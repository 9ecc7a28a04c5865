#pragma once

#include <Eigen/Core>
#include <vector>

#include "chordal/gauss.hpp"

namespace chordal {

// Edge-end of the ribbon graph: role of the chord end plus direction.
enum class Dir : std::uint8_t { In = 0, Out = 1 };

struct EdgeEnd {
  End role;
  Dir dir;
  bool operator==(const EdgeEnd&) const = default;
};

// A closed walk on the ribbon graph, recorded as its passages through vertices.
struct Passage {
  int chord;
  EdgeEnd in;
  EdgeEnd out;
};
using Walk = std::vector<Passage>;

// Halves of a self-crossing: Left/Right by the flat arrow, Plus from the under
// end to the over end, Minus the complement of Plus.
enum class Half { Left, Right, Plus, Minus };

// Carter surface of a Virtual or Flat diagram: vertices are chords, edges are
// arcs between consecutive slots (long components closed up), rotation at a
// vertex is fixed by the crossing sign.
class Surface {
 public:
  explicit Surface(const GaussDiagram& d);

  const GaussDiagram& diagram() const { return d_; }
  int genus() const { return genus_; }
  int face_count() const { return faces_; }
  int surface_components() const { return pieces_; }

  Walk component_walk(int comp) const;
  Walk left_half_walk(int v) const;
  Walk right_half_walk(int v) const;
  Walk half_walk(int v, Half h) const;

  // Algebraic intersection of two closed walks, by pushing b to its left.
  int inter(const Walk& a, const Walk& b) const;

  // First homology of the ribbon graph: one cycle per non-tree edge. Surface
  // classes are compared through the (degenerate) intersection form.
  int cycle_rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<Walk>& cycle_basis() const { return basis_; }
  const Eigen::MatrixXi& form() const { return form_; }
  int form_rank() const;
  Eigen::VectorXi coords(const Walk& w) const;
  int pair(const Eigen::VectorXi& x, const Eigen::VectorXi& y) const;
  // x is an integer multiple of y in surface homology.
  bool is_multiple(const Eigen::VectorXi& x, const Eigen::VectorXi& y) const;

 private:
  int edge_out(SlotRef s) const;          // edge leaving slot s
  SlotRef next_slot(SlotRef s) const;
  int rot_pos(int chord, EdgeEnd e) const;
  EdgeEnd rot_at(int chord, int pos) const;

  GaussDiagram d_;
  std::vector<int> offset_;
  std::vector<SlotRef> edge_slot_;
  int genus_ = 0;
  int faces_ = 0;
  int pieces_ = 0;
  std::vector<int> tree_edge_;  // 1 if in spanning forest
  std::vector<int> basis_edge_;
  std::vector<Walk> basis_;
  Eigen::MatrixXi form_;
};

}  // namespace chordal
