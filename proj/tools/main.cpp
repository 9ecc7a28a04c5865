#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

#ifndef CHORDAL_DEFAULT_CATALOG
#define CHORDAL_DEFAULT_CATALOG "data/catalog.txt"
#endif

using namespace chordal;

int main(int argc, char** argv) {
  CLI::App app{"chordal: indices and moves on Gauss diagrams"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string catalog_path;
  std::string out_path;
  std::string format = "json";
  SearchBudget budget;
  app.add_option("--catalog", catalog_path, "catalog file (default: $CHORDAL_CATALOG or the shipped catalog)");
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--budget-depth", budget.max_depth, "search depth");
  app.add_option("--budget-crossings", budget.max_crossings, "crossing cap during search");

  std::vector<std::string> knots, indices;
  bool all_indices = false;
  auto* compute = app.add_subcommand("compute", "index report for catalog entries");
  compute->add_option("--knot", knots, "catalog names (default: all)");
  compute->add_option("--index", indices, "index names, or all");
  compute->add_flag("--all", all_indices, "report every index");

  cli::FuzzArgs fa;
  auto* fuzz = app.add_subcommand("fuzz", "axiom checks along seeded random walks");
  fuzz->add_option("--knot", knots, "catalog names (default: all)");
  fuzz->add_option("--index", fa.indices, "restrict to these indices");
  fuzz->add_option("--steps", fa.steps, "walk length");
  fuzz->add_option("--seed", fa.seed, "random seed");
  fuzz->add_option("--cap", fa.cap, "crossing cap");
  fuzz->add_flag("--break-lk", fa.break_lk, "test mode: drop the sign correction in Ind");

  std::string name;
  int from = 0, to = 0, crossing = 0, order = 2;
  bool swap = false, graded = false;
  auto* subst = app.add_subcommand("substitute", "search for a based path from one crossing to another");
  subst->add_option("--knot", name, "catalog name")->required();
  subst->add_option("--from", from, "crossing id")->required();
  subst->add_option("--to", to, "crossing id")->required();

  auto* wrapc = app.add_subcommand("wrapcheck", "certify wrapping equivalences");
  wrapc->add_option("--knot", name, "catalog name")->required();
  wrapc->add_option("--crossing", crossing, "crossing id (default: every crossing)");
  wrapc->add_option("--n", order, "wrapping order");
  wrapc->add_flag("--swap", swap, "certify the wrapping swap on R2 pairs");

  auto* red = app.add_subcommand("reduce", "based matrix of a crossing and its primitive form");
  red->add_option("--knot", name, "catalog name")->required();
  red->add_option("--crossing", crossing, "crossing id")->required();
  red->add_flag("--graded", graded, "use the graded matrix");

  auto* list = app.add_subcommand("list", "catalog names and codes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::kPass : cli::kUsage;
  }

  if (catalog_path.empty()) {
    const char* env = std::getenv("CHORDAL_CATALOG");
    catalog_path = env ? env : CHORDAL_DEFAULT_CATALOG;
  }

  cli::Outcome out;
  try {
    auto cat = load_catalog(catalog_path);
    if (*compute) {
      if (all_indices) indices.push_back("all");
      out = cli::cmd_compute(cat, knots, indices);
    } else if (*fuzz) {
      out = cli::cmd_fuzz(cat, knots, fa);
    } else if (*subst) {
      out = cli::cmd_substitute(cat, name, from, to, budget);
    } else if (*wrapc) {
      out = cli::cmd_wrapcheck(cat, name, crossing, order, swap, budget);
    } else if (*red) {
      out = cli::cmd_reduce(cat, name, crossing, graded);
    } else if (*list) {
      out.report = nlohmann::json::array();
      for (auto& e : cat) out.report.push_back({{"name", e.name}, {"code", e.diagram.serialize()}});
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return cli::kUsage;
  }

  for (auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
  std::string text = format == "json" ? out.report.dump(2) + "\n" : cli::to_text(out.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return cli::kUsage;
    }
    f << text;
  }
  return out.status;
}
