#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "c2wl/formula.hpp"
#include "c2wl/graph.hpp"

namespace c2wl {

// Total order on 0..n-1: edge (u, w) exactly when u < w. No labels.
Graph make_linear_order(int n);

// A total order on 2n+1 nodes, n = ell * c + 1, paired with the variant
// that reverses the single edge between nodes n-1 and n+1. Node i stands
// for position i - n, so the reversal straddles the middle node.
struct PerturbedPair {
  Graph base;
  Graph variant;
  int half;  // n: nodes run over positions -n..n
};
PerturbedPair make_perturbed_order(int ell, int c);

// Undirected 3-labeled encoding of a digraph: node u keeps its id with
// label (1,0,0); edge (u, w) becomes a fresh path u - p - q - w with p
// labeled (0,1,0) and q labeled (0,0,1). Input labels are dropped.
// Edge k in the sorted edge list gets p = n + 2k, q = n + 2k + 1.
Graph gadgetise(const Graph& g);

// Gadget encoding of the perturbed order pair. The variant rewires the
// gadget of the reversed edge in place, keeping its two middle nodes, so
// base and variant differ in exactly four undirected edges. The variant
// contains a closed walk of nine nodes whose labels cycle (1,0,0),
// (0,1,0), (0,0,1); cycle lists it in order.
struct PerturbedGadgetPair {
  Graph base;
  Graph variant;
  std::array<int, 9> cycle;
};
PerturbedGadgetPair make_perturbed_gadget(int ell, int c);

struct GraphEdit {
  enum class Kind { AddEdge, RemoveEdge, FlipLabel };
  Kind kind;
  int a = 0;  // source node, or the node whose label flips
  int b = 0;  // target node, or the 1-based label position
};

// Applies one edit and returns the new graph; invalid edits throw.
Graph mutate(const Graph& g, const GraphEdit& edit);

struct NamedMutation {
  std::string name;
  Graph graph;
};

// Every single symmetric edge toggle and every single label bit flip of an
// undirected graph, in deterministic order.
std::vector<NamedMutation> undirected_edit_corpus(const Graph& g);

// Classifier for strict linear orders: one free variable x tied trivially,
// conjoined with closed totality and transitivity sentences. Uses three
// variables, so it sits outside the two variable fragment.
FormulaPtr formula_phi_lin();
FormulaPtr formula_totality();
FormulaPtr formula_transitivity();

// Closed sentences about gadget encodings, over labels P1, P2, P3:
// phi1: every node carries exactly one of the three labels.
// phi2: each P2 node has exactly two neighbors, one P1 and one P3; each P3
//       node has exactly two neighbors, one P2 and one P1; P1 nodes have
//       no P1 neighbor.
// phi3: distinct P1 nodes are joined by a three edge path in exactly one
//       direction (middle nodes P2 then P3, read from the source).
// phi4: no three gadget paths close a directed cycle.
FormulaPtr formula_phi1();
FormulaPtr formula_phi2();
FormulaPtr formula_phi3();
FormulaPtr formula_phi4();

// x = x conjoined with phi1 through phi4; free variable x.
FormulaPtr formula_phi_gadlin_fo();

// The four pair relations a distinguishing formula speaks about:
// 1 edges both ways, 2 only incoming, 3 only outgoing, 4 distinct non
// neighbors. Free variables x and y.
FormulaPtr chi_formula(int j);

// Truncations of infinitary sentences to a finite bound.
// DistinctOutdegree: nodes with equal out-degree i coincide, for i < bound.
// GadgetPsi: for all i < j < bound, when at least j+1 nodes carry P1, some
// P1 node with j P2-neighbors sends a gadget path to one with i.
enum class InfFamily { DistinctOutdegree, GadgetPsi };
FormulaPtr inf_c2_truncation(InfFamily which, int bound);

}  // namespace c2wl
