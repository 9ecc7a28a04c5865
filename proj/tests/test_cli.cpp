#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace chordal;
using nlohmann::json;

namespace {

const std::vector<CatalogEntry>& catalog() {
  static std::vector<CatalogEntry> cat = load_catalog(CHORDAL_TEST_CATALOG);
  return cat;
}

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::BadArgument;
}

int run(const std::string& args) {
  std::string cmd = std::string(CHORDAL_BIN) + " --catalog " + CHORDAL_TEST_CATALOG + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_CASE("catalog entries parse and are unique") {
  auto& cat = catalog();
  CHECK(cat.size() >= 20u);
  std::set<std::string> names;
  for (auto& e : cat) CHECK(names.insert(e.name).second);
  for (auto n : {"unknot", "kink", "trefoil", "figure8", "virtual_trefoil", "3.1", "hopf", "flat_3.1", "free_3.1"})
    CHECK(find_entry(cat, n));
}

TEST_CASE("compute") {
  auto out = cli::cmd_compute(catalog(), {"3.1"}, {"n", "nprime"});
  REQUIRE(out.report.size() == 1u);
  auto& r = out.report[0];
  CHECK(r["indices"]["n"] == json({"-1", "-1", "2"}));
  CHECK(r["indices"]["nprime"] == json({"-1 mod 4", "1 mod 4", "-1 mod 4"}));
  CHECK(r["genus"] == 2);
  auto u = cli::cmd_compute(catalog(), {"unknot"}, {"all"});
  CHECK(u.report[0]["crossings"].empty());
  CHECK(u.report[0]["polynomials"]["u"] == "0");
  // indices undefined on a flavor are null
  auto f = cli::cmd_compute(catalog(), {"free_3.1"}, {"sign"});
  CHECK(f.report[0]["indices"]["sign"].is_null());
  CHECK(error_of([] { cli::cmd_compute(catalog(), {"nope"}, {}); }) == ErrorCode::UnknownName);
  CHECK(error_of([] { cli::cmd_compute(catalog(), {"3.1"}, {"nope"}); }) == ErrorCode::UnknownIndex);
}

TEST_CASE("compute is deterministic") {
  auto a = cli::cmd_compute(catalog(), {}, {"all"});
  auto b = cli::cmd_compute(catalog(), {}, {"all"});
  CHECK(a.report == b.report);
  CHECK(cli::to_text(a.report) == cli::to_text(b.report));
}

TEST_CASE("fuzz") {
  cli::FuzzArgs a;
  a.steps = 100;
  a.cap = 8;
  auto ok = cli::cmd_fuzz(catalog(), {"3.1", "trefoil"}, a);
  CHECK(ok.status == cli::kPass);
  CHECK(ok.report[1]["classical"].empty());
  a.break_lk = true;
  a.indices = {"Ind"};
  auto bad = cli::cmd_fuzz(catalog(), {"3.1"}, a);
  CHECK(bad.status == cli::kViolation);
  CHECK_FALSE(bad.report[0]["violations"].empty());
}

TEST_CASE("substitute") {
  SearchBudget b;
  b.max_depth = 4;
  b.max_crossings = 4;
  auto rot = cli::cmd_substitute(catalog(), "trefoil", 1, 2, b);
  CHECK(rot.report["found"] == true);
  CHECK(rot.report["length"].get<int>() <= 1);
  auto opp = cli::cmd_substitute(catalog(), "r2_parallel", 1, 2, b);
  CHECK(opp.warnings.size() == 1u);
  CHECK(opp.report["outcome"] == "BudgetExhausted");
  CHECK(opp.status == cli::kViolation);
  CHECK(error_of([&] { cli::cmd_substitute(catalog(), "trefoil", 1, 9, b); }) == ErrorCode::BadArgument);
}

TEST_CASE("wrapcheck") {
  SearchBudget b;
  auto k = cli::cmd_wrapcheck(catalog(), "kink", 1, 2, false, b);
  CHECK(k.status == cli::kPass);
  auto z = cli::cmd_wrapcheck(catalog(), "trefoil", 1, 0, false, b);
  CHECK(z.report["certificates"][0]["length"] == 0);
  auto s = cli::cmd_wrapcheck(catalog(), "r2_parallel", 0, 0, true, b);
  CHECK(s.report["certificates"].size() == 2u);
  for (auto& c : s.report["certificates"]) CHECK(c["length"] == 1);
  CHECK(error_of([&] { cli::cmd_wrapcheck(catalog(), "kink", 1, 1, false, b); }) == ErrorCode::BadArgument);
  CHECK(error_of([&] { cli::cmd_wrapcheck(catalog(), "free_3.1", 1, 2, false, b); }) == ErrorCode::UnsupportedFlavor);
}

TEST_CASE("reduce") {
  auto r = cli::cmd_reduce(catalog(), "3.1", 3, true);
  CHECK(r.report["matrix"]["d"] == "3");
  CHECK(r.report["matrix"]["eps"] == -1);
  CHECK(r.report["special"]["core"].empty());
}

TEST_CASE("exit codes") {
  CHECK(run("compute --knot 3.1 --index n") == 0);
  CHECK(run("fuzz --knot 3.1 --steps 50 --cap 8") == 0);
  CHECK(run("fuzz --knot 3.1 --steps 100 --cap 8 --index Ind --break-lk") == 1);
  CHECK(run("compute --knot nope") == 2);
  CHECK(run("compute --knot 3.1 --index nope") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("wrapcheck --knot kink --n 1") == 2);
  CHECK(run("list --format text") == 0);
}

TEST_CASE("report file") {
  std::string path = "cli_test_report.json";
  REQUIRE(run("compute --knot kink --out " + path) == 0);
  std::ifstream f(path);
  json j = json::parse(f);
  CHECK(j[0]["name"] == "kink");
  std::remove(path.c_str());
}
