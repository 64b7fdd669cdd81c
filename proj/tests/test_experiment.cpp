#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "c2wl/experiment.hpp"
#include "doctest.h"

using namespace c2wl;

namespace {

const CheckResult& find_check(const Report& r, const std::string& name) {
  for (const auto& ch : r.checks) {
    if (ch.name == name) return ch;
  }
  REQUIRE(false);
  static CheckResult dummy;
  return dummy;
}

json stripped(const Report& r) {
  json j = r.to_json();
  j.erase("timings_ms");
  return j;
}

}  // namespace

TEST_CASE("directed counterexample holds at small budgets") {
  for (auto [ell, c] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    CAPTURE(ell);
    CAPTURE(c);
    Report r = run_directed_counterexample(ell, c);
    CHECK(r.separated);
    REQUIRE(r.checks.size() == 4);
    CHECK(find_check(r, "gnn_separates").pass);
    CHECK(find_check(r, "formula_separates").pass);
    CHECK(find_check(r, "wl_colors_agree").pass);
    CHECK(find_check(r, "no_distinguisher").pass);
    CHECK(r.params["half"] == ell * c + 1);
    CHECK(r.params["num_nodes"] == 2 * (ell * c + 1) + 1);
  }
}

TEST_CASE("directed counterexample details") {
  Report r = run_directed_counterexample(1, 1);
  CHECK(find_check(r, "gnn_separates").detail == "base=accept variant=reject");
  CHECK(find_check(r, "formula_separates").detail == "base=accept variant=reject");
  CHECK(find_check(r, "wl_colors_agree").detail ==
        "agree=5/5 base_rounds=[[5],[1,3,1]] variant_rounds=[[5],[1,3,1]]");
  CHECK(find_check(r, "no_distinguisher").detail == "distinguished=0/5");
}

TEST_CASE("middle bands shrink round by round at (2,2)") {
  Report r = run_directed_counterexample(2, 2);
  CHECK(find_check(r, "wl_colors_agree").detail ==
        "agree=11/11 base_rounds=[[11],[1,1,7,1,1],[1,1,1,1,3,1,1,1,1]]"
        " variant_rounds=[[11],[1,1,7,1,1],[1,1,1,1,3,1,1,1,1]]");
}

TEST_CASE("cycle witness lists the walk") {
  Report r = run_undirected_counterexample(1, 1);
  const std::string& d = find_check(r, "cycle_witness").detail;
  CHECK(d.find("verified cycle=[") == 0);
  CHECK(d.find("]") != std::string::npos);
}

TEST_CASE("undirected counterexample holds at small budgets") {
  for (auto [ell, c] : {std::pair{1, 1}, std::pair{2, 2}}) {
    CAPTURE(ell);
    CAPTURE(c);
    Report r = run_undirected_counterexample(ell, c);
    CHECK(r.separated);
    REQUIRE(r.checks.size() == 5);
    CHECK(find_check(r, "gnn_separates").pass);
    CHECK(find_check(r, "formula_separates").pass);
    CHECK(find_check(r, "wl_colors_agree").pass);
    CHECK(find_check(r, "no_distinguisher").pass);
    CHECK(find_check(r, "cycle_witness").pass);
  }
  Report r = run_undirected_counterexample(1, 1);
  CHECK(r.params["num_nodes"] == 25);
  CHECK(find_check(r, "no_distinguisher").detail == "distinguished=0/25");
}

TEST_CASE("order model soundness sweep") {
  Report r = run_gnn_soundness(4);
  CHECK(r.separated);
  REQUIRE(r.checks.size() == 4);
  CHECK(find_check(r, "n=1").detail == "graphs=1 orders=1 accepted=1 mismatches=0");
  CHECK(find_check(r, "n=2").detail == "graphs=4 orders=2 accepted=2 mismatches=0");
  CHECK(find_check(r, "n=3").detail == "graphs=64 orders=6 accepted=6 mismatches=0");
  CHECK(find_check(r, "n=4").detail == "graphs=4096 orders=24 accepted=24 mismatches=0");
}

TEST_CASE("random round trip between colors and formulas") {
  for (auto [ell, c] : {std::pair{1, 1}, std::pair{2, 2}}) {
    CAPTURE(ell);
    CAPTURE(c);
    Report r = run_theorem1_check(ell, c, 50, 200, 42);
    CHECK(r.separated);
    CHECK(find_check(r, "matched_pairs_agree").pass);
    CHECK(find_check(r, "split_pairs_distinguished").pass);
    CHECK(find_check(r, "coverage").pass);
  }
}

TEST_CASE("reports are deterministic apart from timings") {
  CHECK(stripped(run_directed_counterexample(1, 1)) == stripped(run_directed_counterexample(1, 1)));
  CHECK(stripped(run_theorem1_check(1, 1, 10, 20, 7)) == stripped(run_theorem1_check(1, 1, 10, 20, 7)));
}

TEST_CASE("report serialization shape") {
  Report r = run_gnn_soundness(2);
  json j = r.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["version"] == "1.0.0");
  CHECK(j["command"] == "gnn_soundness");
  CHECK(j["separated"] == true);
  CHECK(j["params"]["max_nodes"] == 2);
  REQUIRE(j["checks"].is_array());
  CHECK(j["checks"][0]["name"] == "n=1");
  CHECK(j["checks"][0]["pass"] == true);
  CHECK(j["checks"][0]["detail"].is_string());
  CHECK(j["timings_ms"].is_object());
  CHECK(std::string(kVersion) == "1.0.0");
}

TEST_CASE("experiment argument validation") {
  CHECK_THROWS_AS(run_gnn_soundness(0), std::invalid_argument);
  CHECK_THROWS_AS(run_gnn_soundness(6), std::invalid_argument);
  CHECK_THROWS_AS(run_directed_counterexample(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_directed_counterexample(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_undirected_counterexample(1, -1), std::invalid_argument);
  CHECK_THROWS_AS(run_theorem1_check(1, 1, 0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_theorem1_check(1, 1, 5, 0, 1), std::invalid_argument);
}
