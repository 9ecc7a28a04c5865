#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chordal/biquandle.hpp"
#include "chordal/gauss.hpp"
#include "chordal/indices.hpp"
#include "chordal/moves.hpp"

namespace chordal {

// Biquandle index as a signed evaluator; values are serialized class multisets.
IndexEvaluator biquandle_evaluator(const std::string& name, const FiniteBiquandle& b);

struct FuzzOptions {
  int steps = 1000;
  int cap = 12;
  std::uint64_t seed = 42;
  std::vector<std::string> indices;  // empty: every evaluator
  bool lk_invariance = true;
  bool biquandles = true;
  bool break_lk = false;             // fault injection: Ind loses its sign correction
};

struct Violation {
  std::string check;
  std::string detail;
  GaussDiagram before;               // diagram before the offending move
  std::vector<MoveInstance> moves;   // moves from before; one move for local checks
};

struct FuzzReport {
  std::string start;
  int steps = 0;
  long checks = 0;
  std::vector<std::string> skipped;  // evaluators not defined on this flavor
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

FuzzReport fuzz(const GaussDiagram& d, const FuzzOptions& opt);

// Random genus-0 diagram reached by a walk from the unknot.
GaussDiagram random_planar(int max_crossings, int steps, std::mt19937_64& rng);

// Checks that every index is a function of the crossing sign on a classical
// diagram, and that the listed classical vanishing statements hold.
std::vector<std::string> classical_violations(const GaussDiagram& d);

}  // namespace chordal
