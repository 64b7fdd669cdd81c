#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "c2wl/formula.hpp"
#include "c2wl/graph.hpp"

namespace c2wl {

using Assignment = std::map<std::string, int>;

// Evaluates one formula against one graph many times. Construction rewrites
// the formula to core connectives and narrows quantifier scopes (a counting
// quantifier is pushed past conjuncts that do not mention its variable, which
// preserves meaning for every threshold). Results of counting subformulas are
// memoized per free-variable assignment.
class Evaluator {
public:
  Evaluator(const Graph& g, FormulaPtr f);

  // Every free variable of the formula must be assigned to a node id.
  bool eval(const Assignment& assignment);

  const std::set<std::string>& free_vars() const { return free_; }

private:
  struct Node {
    FormulaKind kind;
    int index = 0;                // predicate index or count threshold
    int var_a = -1;               // interned variable ids
    int var_b = -1;
    std::vector<int> children;
    std::vector<int> free_vars;   // sorted interned ids
  };

  int build(const FormulaPtr& f);
  bool eval_node(int id);

  const Graph& g_;
  std::set<std::string> free_;
  std::vector<std::string> var_names_;
  std::map<std::string, int> var_ids_;
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<int> env_;
  std::map<std::pair<int, std::vector<int>>, bool> memo_;
};

// Convenience single-shot evaluation.
bool evaluate(const Graph& g, const FormulaPtr& f, const Assignment& assignment);

// Plain recursive evaluation with no rewriting or memoization; reference
// implementation for cross-checks.
bool evaluate_naive(const Graph& g, const FormulaPtr& f, const Assignment& assignment);

// Per-node truth values; the formula must have exactly one free variable.
std::vector<bool> classify(const Graph& g, const FormulaPtr& f);

}  // namespace c2wl
