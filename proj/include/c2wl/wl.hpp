#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "c2wl/formula.hpp"
#include "c2wl/graph.hpp"

namespace c2wl {

using ColorId = int32_t;

// Multiset of colors with multiplicities capped at c; c = 0 empties it.
struct BoundedMultiset {
  std::vector<std::pair<ColorId, int32_t>> entries;  // ascending by color
  auto operator<=>(const BoundedMultiset&) const = default;
};

BoundedMultiset bound_multiset(std::vector<ColorId> colors, int c);

// Refinement signature of a node: previous color, then the capped color
// multisets over mutual, incoming only, outgoing only, and absent
// relations, in that order.
struct ColorSignature {
  ColorId prev;
  BoundedMultiset both;
  BoundedMultiset in_only;
  BoundedMultiset out_only;
  BoundedMultiset non_neighbor;
  auto operator<=>(const ColorSignature&) const = default;
};

// Interns label vectors and signatures into dense ids. Shared across graphs
// so equal ids mean equal refinement histories.
class ColorTable {
public:
  ColorId intern_label(const std::vector<uint8_t>& label);
  ColorId intern_signature(const ColorSignature& sig);
  int size() const { return next_; }

private:
  std::map<std::vector<uint8_t>, ColorId> labels_;
  std::map<ColorSignature, ColorId> signatures_;
  ColorId next_ = 0;
};

// One refinement round over one graph.
std::vector<ColorId> wl_step(const Graph& g, const std::vector<ColorId>& colors,
                             int c, ColorTable& table);

struct WlResult {
  // colors[graph][round][node]; round 0 is the label coloring.
  std::vector<std::vector<std::vector<ColorId>>> colors;
  std::shared_ptr<ColorTable> table;
};

// Runs the bounded refinement for the given number of rounds over all
// graphs with one shared table.
WlResult run_wl(const std::vector<const Graph*>& graphs, int c, int rounds);

// Class sizes in order of first appearance.
std::vector<int> partition_sizes(const std::vector<ColorId>& colors);

// Smallest r whose node partition equals the one after one more round.
// Bounded by the node count, since every earlier round refines strictly.
int stable_round(const Graph& g, int c);

// A formula with free variable x, quantifier depth at most ell, thresholds
// at most c, true at node u of ga and false at node v of gb. Returns
// nullopt exactly when both nodes get the same round-ell color.
std::optional<FormulaPtr> build_distinguishing_formula(const Graph& ga, int u,
                                                       const Graph& gb, int v,
                                                       int ell, int c);

}  // namespace c2wl
