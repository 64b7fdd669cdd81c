#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace c2wl {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Outcome of one experiment command. The headline bit reports whether
// every check passed; serialization is deterministic except for the
// timings.
struct Report {
  std::string command;
  json params = json::object();
  bool separated = false;
  std::vector<CheckResult> checks;
  json timings_ms = json::object();
  json to_json() const;
};

// Perturbed order pair at the given round budget and count bound: the
// directed three layer model and the order axioms tell the two graphs
// apart, while the bounded refinement gives every matched node pair equal
// colors and no distinguishing formula exists within the budget.
Report run_directed_counterexample(int ell, int c);

// Same story for the gadget encodings and the undirected five layer
// model, plus the closed walk witnessing the rewired gadget.
Report run_undirected_counterexample(int ell, int c);

// Exhaustive agreement of the order model with the order definition over
// every digraph on up to max_nodes nodes (at most 5).
Report run_gnn_soundness(int max_nodes);

// Random agreement check between bounded refinement colors and logical
// indistinguishability: matched node pairs must agree on sampled formulas
// within the depth and rank budget, split pairs must admit a verified
// distinguishing formula.
Report run_theorem1_check(int ell, int c, int graph_trials, int formula_samples,
                          uint64_t seed);

}  // namespace c2wl
