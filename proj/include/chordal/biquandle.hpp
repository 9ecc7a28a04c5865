#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chordal/gauss.hpp"

namespace chordal {

// Finite biquandle on {0..n-1}: x∘y = circ(x,y), x∗y = star(x,y).
class FiniteBiquandle {
 public:
  FiniteBiquandle(int n, std::vector<int> circ, std::vector<int> star);

  static FiniteBiquandle parse(const std::string& text);
  static FiniteBiquandle load(const std::string& path);
  std::string serialize() const;

  static FiniteBiquandle trivial(int n);
  static FiniteBiquandle dihedral(int m);  // x∘y = 2y-x, x∗y = x
  static FiniteBiquandle shift(int m);     // x∘y = x∗y = x+1

  int size() const { return n_; }
  int circ(int x, int y) const { return circ_[x * n_ + y]; }
  int star(int x, int y) const { return star_[x * n_ + y]; }
  // x with circ(x,y) = z, and y with star(y,x) = z.
  int circ_solve(int z, int y) const { return circ_inv_[z * n_ + y]; }
  int star_solve(int z, int x) const { return star_inv_[z * n_ + x]; }

  // Empty if all axioms hold, else a description of the first failure.
  std::optional<std::string> axiom_violation() const;

 private:
  int n_;
  std::vector<int> circ_, star_, circ_inv_, star_inv_;
};

// Crossing rule. HeadForward: the strand through the flat arrow head is
// updated forward, the strand through the tail is read backward:
//   positive: u_out = u_in ∘ o_out, o_in = o_out ∗ u_in
//   negative: o_out = o_in ∗ u_out, u_in = u_out ∘ o_in
// SignInverse: o_out = o_in ∗ u_in, u_out = u_in ∘ o_in at positive
// crossings and the inverse relations at negative ones.
enum class ColoringRule { HeadForward, SignInverse };

// Arcs run between consecutive slots of a component. A closed component with
// k > 0 slots has k arcs, a long one k+1, an empty closed one 1.
struct ArcLayout {
  std::vector<int> offset;
  int count = 0;
  explicit ArcLayout(const GaussDiagram& d);
  int in(const GaussDiagram& d, SlotRef r) const;
  int out(const GaussDiagram& d, SlotRef r) const;
};

using Coloring = std::vector<int>;  // color per arc

std::vector<Coloring> colorings(const GaussDiagram& d, const FiniteBiquandle& b,
                                ColoringRule rule = ColoringRule::HeadForward);
bool is_coloring(const GaussDiagram& d, const FiniteBiquandle& b, const Coloring& c,
                 ColoringRule rule = ColoringRule::HeadForward);

// Quotients B̃+ and B̃- of B×B; class id is the least x*n+y in the class.
struct TildeQuotient {
  int n = 0;
  std::vector<int> plus, minus;
  int cls(int sign, int x, int y) const { return (sign > 0 ? plus : minus)[x * n + y]; }
  int count(int sign) const;
};
TildeQuotient tilde_quotient(const FiniteBiquandle& b);

// Local value at v for one coloring: the pair (color entering the flat tail,
// color leaving the flat head).
std::pair<int, int> local_pair(const GaussDiagram& d, const ArcLayout& arcs, const Coloring& c, int v);

// Multiset of classes per chord, keys "+[x,y]" or "-[x,y]" naming the least
// representative.
using ClassMultiset = std::map<std::string, int>;
std::string class_name(const TildeQuotient& q, int sign, int cls);
std::vector<ClassMultiset> biquandle_index(const GaussDiagram& d, const FiniteBiquandle& b);
// Image of a multiset under (x,y)* = (y,x).
ClassMultiset involution(const TildeQuotient& q, const ClassMultiset& m);

}  // namespace chordal
