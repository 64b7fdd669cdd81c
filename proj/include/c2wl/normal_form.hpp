#pragma once

#include <string>
#include <vector>

#include "c2wl/formula.hpp"

namespace c2wl {

// Mutually exclusive, jointly exhaustive relations between a pair (x, y)
// of nodes in a loop-free digraph.
enum class GammaKind {
  BothEdges,       // E(x,y) and E(y,x), x != y
  Equal,           // x = y
  OnlyForward,     // E(x,y), not E(y,x)
  OnlyBackward,    // not E(x,y), E(y,x)
  NoEdgeDistinct,  // no edge either way, x != y
};

const char* gamma_kind_name(GammaKind kind);

// The defining formula of a kind, over free variables x and y.
FormulaPtr gamma_formula(GammaKind kind);

struct NormalFormDisjunct {
  FormulaPtr alpha;  // free variables within {x}
  FormulaPtr beta;   // free variable y only
  GammaKind gamma;
};

struct NormalForm {
  std::vector<NormalFormDisjunct> disjuncts;
};

// Rewrites a formula over variables x, y into a disjunction of
// alpha(x) & beta(y) & gamma shapes, equivalent on loop-free digraphs.
// Disjuncts appear in deterministic traversal order, deduplicated; an
// unsatisfiable propositional skeleton yields the canonical single disjunct
// (x != x, y != y, Equal). Throws std::invalid_argument unless the formula
// uses only variables x and y, and std::runtime_error past the disjunct cap.
NormalForm normalize_c2(const FormulaPtr& f, size_t max_disjuncts = 100000);

// Disjunction of alpha & beta & gamma over all disjuncts.
FormulaPtr normal_form_to_formula(const NormalForm& nf);

}  // namespace c2wl
