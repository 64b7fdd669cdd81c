#pragma once

#include <random>
#include <string>
#include <vector>

#include "c2wl/formula.hpp"
#include "c2wl/graph.hpp"

namespace c2wl {

struct RandomGraphParams {
  int min_nodes = 1;
  int max_nodes = 6;
  int dimension = 0;
  double edge_prob = 0.3;
  bool undirected = false;
  bool forbid_two_cycles = false;  // at most one direction per node pair
};

Graph random_graph(std::mt19937_64& rng, const RandomGraphParams& params);

// Formulas over variables x and y built from the core connectives, with
// quantifier nesting at most max_depth and thresholds in [1, max_rank].
// Free variables of the result are contained in free_vars.
struct RandomFormulaParams {
  int max_depth = 2;
  int max_rank = 2;
  int max_pred = 1;                          // predicate indices 1..max_pred
  std::vector<std::string> free_vars = {"x"};
};

FormulaPtr random_c2_formula(std::mt19937_64& rng, const RandomFormulaParams& params);

}  // namespace c2wl
