#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chordal/gauss.hpp"
#include "chordal/indices.hpp"

namespace chordal {

// Signed singular based matrix (G, s, d, b, eps). Index 0 is s. When graded,
// grading[g] is the sign of g (grading[0] unused) and eps = grading[d].
// d = -1 gives a plain based matrix with no distinguished element.
struct BasedMatrix {
  std::vector<std::string> labels;
  int d = 1;
  Eigen::MatrixXi b;
  int eps = 1;
  std::vector<int> grading;

  int size() const { return static_cast<int>(labels.size()); }
  bool graded() const { return !grading.empty(); }
  std::string to_json() const;
  // Order-dependent serialization used for canonical keys.
  std::string serialize() const;
};

// eps is sgn(v) when graded and +1 otherwise; the ungraded matrix only sees
// the flattened diagram.
BasedMatrix based_matrix_of(const GaussDiagram& d, int v, bool graded);
// Based matrix of a knot diagram with no distinguished crossing.
BasedMatrix knot_based_matrix(const GaussDiagram& d);

struct SpecialElements {
  std::vector<int> annihilating;
  std::vector<int> core;
  std::vector<std::pair<int, int>> complementary;
};
SpecialElements find_special(const BasedMatrix& t);
bool complementary(const BasedMatrix& t, int g1, int g2);

// Elementary extensions. M3 takes the row of g1 against the old elements; the
// row of g2 is b(s,h) - row and b(g1,g2) is then forced. sign1 is used when
// graded (g2 gets -sign1).
BasedMatrix extend_m1(const BasedMatrix& t, int sign = 1);
BasedMatrix extend_m2(const BasedMatrix& t, int sign = 1);
BasedMatrix extend_m3(const BasedMatrix& t, const std::vector<int>& row, int sign1 = 1);
// Inverse excisions; throw BadArgument when not applicable.
BasedMatrix excise(const BasedMatrix& t, const std::vector<int>& elements);
BasedMatrix move_N(const BasedMatrix& t, int g);

// Greedy excision of special elements other than d.
BasedMatrix reduce(const BasedMatrix& t);
// Primitive representative, least serialization over relabelings, N moves and
// the exchange of a core d with an annihilating one.
BasedMatrix reduce_primitive(const BasedMatrix& t);
std::string canonical_key(const BasedMatrix& t);

// Graded forms with b^ab(g,s) = a sgn(g) b(g,s), b^ab(s,h) = b sgn(h) b(s,h) and
//   b^ab(g,h) = ab sgn(g)sgn(h) b(g,h) + (1 - b sgn(h))/2 b^ab(g,s)
//             + (1 - a sgn(g))/2 b^ab(s,h),
// which makes complementary elements give equal rows and columns.
Eigen::MatrixXi b_alpha_beta(const BasedMatrix& t, int alpha, int beta);
// The variant with -(1 - a sgn(g))/2 b(g,s) - (1 - b sgn(h))/2 b(s,h) in the
// last two terms; complementary rows differ under it.
Eigen::MatrixXi b_alpha_beta_literal(const BasedMatrix& t, int alpha, int beta);

// Values of iota^{ab}(g) = b^{ab}(d,g) on loop elements by kind and sign.
struct AlphaBetaLoops {
  int annihilating_plus;
  int annihilating_minus;
  int core_plus;
  int core_minus;
};
AlphaBetaLoops alpha_beta_loops(const BasedMatrix& t, int alpha, int beta);
// Linking invariant of iota^{ab} on a graded matrix: sum of sgn(g)[iota(g)]
// over g != s whose (value, sign) is not a loop value.
std::map<int, long> p_alpha_beta(const BasedMatrix& t, int alpha, int beta);
std::map<int, long> intersection_index(const GaussDiagram& d, int v, int alpha, int beta);
std::string int_poly_to_string(const std::map<int, long>& p);

}  // namespace chordal
