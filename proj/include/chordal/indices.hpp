#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chordal/gauss.hpp"
#include "chordal/moves.hpp"

namespace chordal {

using IndexValue = std::string;

// A crossing index. Signed evaluators carry an involution on their values.
struct IndexEvaluator {
  std::string name;
  bool is_signed = false;
  std::function<std::vector<IndexValue>(const GaussDiagram&)> evaluate;
  std::function<IndexValue(const IndexValue&)> involution;

  IndexValue value(const GaussDiagram& d, int v) const { return evaluate(d)[v]; }
  IndexValue star(const IndexValue& x) const { return is_signed ? involution(x) : x; }
};

// Element of the group generated by index values, with [x*] = -[x]; orbits of
// self-dual values get coefficients in Z/2.
struct IndexPolynomial {
  std::map<std::string, long> z;
  std::map<std::string, int> z2;

  void add(const IndexValue& x, long c, const std::function<IndexValue(const IndexValue&)>& inv);
  bool is_zero() const { return z.empty() && z2.empty(); }
  std::string to_string() const;
  bool operator==(const IndexPolynomial&) const = default;
};

// Exponent -> coefficient.
using Poly = std::map<int, long>;
std::string poly_to_string(const Poly& p);

// Gaussian indices.
int gaussian_Ind(const GaussDiagram& d, int v);        // chord combinatorics
int gaussian_n(const GaussDiagram& d, int v);          // intersection on the surface
int linking_sum(const GaussDiagram& d, int v);         // sum of lk_pair over chords
std::vector<int> gaussian_Ind_all(const GaussDiagram& d);
std::vector<int> gaussian_n_all(const GaussDiagram& d);

Poly turaev_u(const GaussDiagram& d);
int wriggle(const GaussDiagram& d);

// Homological parity: true if [D^l_v] is a multiple of the class of its component.
bool hp_vanishes(const GaussDiagram& d, int v);
// f_gamma(v) = [D^l_v] . gamma for gamma given in cycle-basis coordinates.
int f_gamma(const GaussDiagram& d, int v, const std::vector<int>& gamma);

// Element of Z/m (m = 0 means Z) stored as a symmetric residue.
struct Residue {
  long value = 0;
  long modulus = 0;
  std::string to_string() const;
  bool operator==(const Residue&) const = default;
};
long reduce_mod(long x, long m);

// Derived parity of order k starting from p = n.
std::vector<Residue> derived_parity(const GaussDiagram& d, int order);

// Secondary index of p = n: coset of Z/<n(v)> -> coefficient, zero coset dropped.
using CosetSum = std::map<long, long>;
CosetSum secondary_index(const GaussDiagram& d, int v);
std::string coset_sum_to_string(const CosetSum& s, long modulus);

// Weak parity and projection.
std::vector<int> weak_parity_Ind2(const GaussDiagram& d);
std::pair<GaussDiagram, Correspondence> parity_projection(const GaussDiagram& d, const std::vector<int>& psi);
// Ind on the projection for even chords, "•" for odd ones.
std::vector<IndexValue> induced_Ind(const GaussDiagram& d);

std::pair<int, long> vkp_index(const GaussDiagram& d, int v, int m);

// Invariant summary of a flat diagram, used as an equality proxy.
std::string fingerprint(const GaussDiagram& d);
std::string smoothing_fingerprint(const GaussDiagram& d, int v, Smoothing kind);

// Evaluators by name: sign, component, order, Ind, n, secondary, derived1,
// derived2, induced, vkp1, vkp2, smooth_or, smooth_un, biquandle indices are
// separate.
IndexEvaluator evaluator(const std::string& name);
std::vector<std::string> evaluator_names();

IndexEvaluator hat_adapter(const IndexEvaluator& sigma);
IndexEvaluator tilde_adapter(const IndexEvaluator& iota);
IndexEvaluator bar_adapter(const IndexEvaluator& sigma);

// Sum of [sigma(v)] over chords whose value is not in the loop set.
IndexPolynomial lk_polynomial(const GaussDiagram& d, const IndexEvaluator& sigma,
                              const std::vector<IndexValue>& loops);

// Values on the four kinks added at the first gap of a component, by loop type.
struct LoopValues {
  IndexValue l_plus, l_minus, r_plus, r_minus;
  bool pairing_ok = false;
};
LoopValues loop_values(const IndexEvaluator& iota, const GaussDiagram& d, int comp);

// Oriented parity checks along a trajectory; values are compared mod modulus
// (0 means in Z). Triangles with a mixed crossing are skipped.
struct ParityReport {
  int r1_sites = 0;
  int r3_sites = 0;
  std::vector<std::string> violations;
};
// Incidence signs of the chords of an R3 triangle (tm, tb, mb order): the
// lifted crossing sign, negated for the crossing of the top and bottom strands.
std::array<int, 3> triangle_incidence(const Triangle& t);
ParityReport check_oriented_parity(const std::function<std::vector<long>(const GaussDiagram&)>& p,
                                   const std::vector<GaussDiagram>& trajectory, long modulus = 0);
ParityReport check_homological_parity(const std::vector<GaussDiagram>& trajectory);

}  // namespace chordal
