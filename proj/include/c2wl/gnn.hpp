#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2wl/graph.hpp"
#include "json.hpp"

namespace c2wl {

// Numbers of the form sum of distinct powers of ten, stored as a bitset
// over digit positions. Adding values that share a digit would carry, so
// the sum is marked overflowed instead; the mark is sticky. Every verdict
// below only needs exact values, and a carried sum can never pass them.
class DecimalBitset {
public:
  static DecimalBitset zero();
  static DecimalBitset one_at(unsigned pos);  // 10^pos
  static DecimalBitset bitwise_or(const DecimalBitset& a, const DecimalBitset& b);
  static DecimalBitset checked_sum(const DecimalBitset& a, const DecimalBitset& b);

  bool overflowed() const { return overflow_; }
  bool test(unsigned pos) const;
  bool is_zero() const;
  bool is_one() const;
  // Digit position when exactly one digit is set and no overflow happened.
  std::optional<unsigned> single_position() const;
  // True when the digits are exactly positions 0..n-1 (the number whose
  // decimal expansion is n ones); n = 0 means zero.
  bool is_repunit(unsigned n) const;

  std::string decimal_string() const;  // "overflow" once poisoned

  auto operator<=>(const DecimalBitset&) const = default;

private:
  std::vector<uint64_t> words_;  // trailing zero words trimmed
  bool overflow_ = false;
  void trim();
};

using NodeState = std::vector<DecimalBitset>;

enum class AggKind {
  None,
  TenPowerOfCount,       // 10^(neighborhood size)
  SumOfPosition,         // checked sum of one state position
  OrPositionWhereLabel,  // or of one position over neighbors whose
                         // label position holds 1
  NeighborCounts,        // counts of neighbors marked at positions 0,1,2
};

enum class CombKind {
  TakeInAggregate,    // state becomes [aggregate]
  PairWithAggregate,  // state becomes [old position 0, aggregate]
  GadInit,            // width 7 gadget bookkeeping, see gadlin_classifier
  StoreOrIfLabel,     // nodes marked at a label position or the aggregate
                      // into a store position
  Broadcast,          // state becomes the global readout verdict
};

enum class ReadKind {
  None,
  OrderVerdict,   // width 2 states: positions distinct and sums repunit
  GadgetVerdict,  // width 7 states: three bits, see gadlin_classifier
};

enum class ClsKind { FirstPositionOne, AllPositionsOne };

struct GnnLayer {
  int in_width = 0;
  int out_width = 0;
  NeighborhoodKind direction = NeighborhoodKind::In;
  AggKind agg = AggKind::None;
  int agg_pos = 0;    // state position the aggregate reads
  int agg_label = 0;  // label position filtering the neighborhood
  CombKind comb = CombKind::TakeInAggregate;
  int comb_label = 0;  // label position guarding the store
  int comb_pos = 0;    // state position written by the store
  ReadKind read = ReadKind::None;
  json describe() const;
};

struct GnnClassifier {
  std::string name;
  bool undirected = false;  // when set, inputs must be undirected
  int input_dimension = 0;  // required label width
  std::vector<GnnLayer> layers;
  ClsKind cls = ClsKind::FirstPositionOne;
  json describe() const;
};

// Simultaneous update of all node states by one layer.
std::vector<NodeState> apply_layer(const Graph& g, const GnnLayer& layer,
                                   const std::vector<NodeState>& states);

// Per node verdicts; readout layers broadcast, so they all agree for the
// models below.
std::vector<bool> run_classifier(const Graph& g, const GnnClassifier& model);

struct GnnTrace {
  std::vector<std::vector<NodeState>> rounds;  // initial states first
  std::vector<bool> outputs;
};
GnnTrace run_classifier_trace(const Graph& g, const GnnClassifier& model);

json trace_to_json(const GnnClassifier& model, const GnnTrace& trace);

// Three layer directed model accepting exactly the strict linear orders:
// first the ten power of the indegree, then the sum of those powers over
// incoming neighbors, then a verdict that all powers are pairwise distinct
// and every sum is the matching repunit.
GnnClassifier lin_classifier();

// Five layer undirected model over gadget encodings: ten powers of the
// count of P2 neighbors travel backwards along each three edge path, then
// a verdict combines the coverage condition with local label and degree
// bits computed in the first layer.
GnnClassifier gadlin_classifier();

// Direct graph-side computation of the coverage condition the gadget
// verdict tests: with m nodes labeled P1 and N2(v) counting P2 neighbors,
// every pair i < j < m is served by a path from a P1 node with N2 = j to
// one with N2 = i. Vacuously true when m <= 1.
bool check_psi(const Graph& g);

}  // namespace c2wl
