#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chordal/gauss.hpp"
#include "chordal/moves.hpp"

namespace chordal::cli {

// Exit codes.
constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Outcome {
  nlohmann::json report;
  int status = kPass;
  std::vector<std::string> warnings;
};

// Usage errors (unknown names, bad arguments) are thrown as chordal::Error.

// Index names accepted by compute: evaluator names, the biquandle indices and
// the aliases nprime/nsecond for the derived parities.
std::vector<std::string> index_names();
std::string resolve_index(const std::string& name);

Outcome cmd_compute(const std::vector<CatalogEntry>& cat, const std::vector<std::string>& names,
                    const std::vector<std::string>& indices);

struct FuzzArgs {
  int steps = 1000;
  int cap = 12;
  unsigned long long seed = 42;
  std::vector<std::string> indices;
  bool break_lk = false;
};
Outcome cmd_fuzz(const std::vector<CatalogEntry>& cat, const std::vector<std::string>& names, const FuzzArgs& a);

// Crossings are 1-based chord ids.
Outcome cmd_substitute(const std::vector<CatalogEntry>& cat, const std::string& name, int v, int w,
                       const SearchBudget& budget);

// Certifies wrap(b, n) = wrap(b, n - 2) for n >= 2 (n = 0 gives the empty
// certificate) on crossing v, or on every crossing when v = 0. With swap set it
// certifies (D, v1) = wrap((D, v2), +-1) on every R2 pair instead.
Outcome cmd_wrapcheck(const std::vector<CatalogEntry>& cat, const std::string& name, int v, int n, bool swap,
                      const SearchBudget& budget);

Outcome cmd_reduce(const std::vector<CatalogEntry>& cat, const std::string& name, int v, bool graded);

// Plain-text rendering of a report.
std::string to_text(const nlohmann::json& report);

}  // namespace chordal::cli
