#include "c2wl/gnn.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace c2wl {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void DecimalBitset::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

DecimalBitset DecimalBitset::zero() { return DecimalBitset{}; }

DecimalBitset DecimalBitset::one_at(unsigned pos) {
  DecimalBitset d;
  d.words_.assign(pos / 64 + 1, 0);
  d.words_[pos / 64] = uint64_t{1} << (pos % 64);
  return d;
}

DecimalBitset DecimalBitset::bitwise_or(const DecimalBitset& a, const DecimalBitset& b) {
  DecimalBitset d;
  d.words_.assign(std::max(a.words_.size(), b.words_.size()), 0);
  for (size_t i = 0; i < d.words_.size(); ++i) {
    uint64_t wa = i < a.words_.size() ? a.words_[i] : 0;
    uint64_t wb = i < b.words_.size() ? b.words_[i] : 0;
    d.words_[i] = wa | wb;
  }
  d.overflow_ = a.overflow_ || b.overflow_;
  d.trim();
  return d;
}

DecimalBitset DecimalBitset::checked_sum(const DecimalBitset& a, const DecimalBitset& b) {
  DecimalBitset d = bitwise_or(a, b);
  for (size_t i = 0; i < std::min(a.words_.size(), b.words_.size()); ++i) {
    if (a.words_[i] & b.words_[i]) d.overflow_ = true;
  }
  return d;
}

bool DecimalBitset::test(unsigned pos) const {
  size_t w = pos / 64;
  return w < words_.size() && (words_[w] >> (pos % 64)) & 1;
}

bool DecimalBitset::is_zero() const { return words_.empty() && !overflow_; }

bool DecimalBitset::is_one() const {
  auto p = single_position();
  return p.has_value() && *p == 0;
}

std::optional<unsigned> DecimalBitset::single_position() const {
  if (overflow_) return std::nullopt;
  int total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  if (total != 1) return std::nullopt;
  for (size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return unsigned(i * 64 + std::countr_zero(words_[i]));
  }
  return std::nullopt;
}

bool DecimalBitset::is_repunit(unsigned n) const {
  if (overflow_) return false;
  DecimalBitset want;
  want.words_.assign(n == 0 ? 0 : (n - 1) / 64 + 1, 0);
  for (unsigned p = 0; p < n; ++p) want.words_[p / 64] |= uint64_t{1} << (p % 64);
  return words_ == want.words_;
}

std::string DecimalBitset::decimal_string() const {
  if (overflow_) return "overflow";
  if (words_.empty()) return "0";
  unsigned high = 0;
  for (unsigned p = 0; p < unsigned(words_.size() * 64); ++p) {
    if (test(p)) high = p;
  }
  std::string s;
  for (int p = int(high); p >= 0; --p) s += test(unsigned(p)) ? '1' : '0';
  return s;
}

namespace {

const char* agg_name(AggKind k) {
  switch (k) {
    case AggKind::None: return "none";
    case AggKind::TenPowerOfCount: return "ten_power_of_count";
    case AggKind::SumOfPosition: return "sum_of_position";
    case AggKind::OrPositionWhereLabel: return "or_position_where_label";
    case AggKind::NeighborCounts: return "neighbor_counts";
  }
  return "";
}

const char* comb_name(CombKind k) {
  switch (k) {
    case CombKind::TakeInAggregate: return "take_aggregate";
    case CombKind::PairWithAggregate: return "pair_with_aggregate";
    case CombKind::GadInit: return "gadget_init";
    case CombKind::StoreOrIfLabel: return "store_or_if_label";
    case CombKind::Broadcast: return "broadcast_verdict";
  }
  return "";
}

const char* read_name(ReadKind k) {
  switch (k) {
    case ReadKind::None: return "none";
    case ReadKind::OrderVerdict: return "order_verdict";
    case ReadKind::GadgetVerdict: return "gadget_verdict";
  }
  return "";
}

const char* direction_name(NeighborhoodKind k) {
  switch (k) {
    case NeighborhoodKind::In: return "in";
    case NeighborhoodKind::Out: return "out";
    case NeighborhoodKind::Any: return "any";
    default: return "other";
  }
}

bool marked(const NodeState& s, int pos) {
  return pos < int(s.size()) && s[size_t(pos)].is_one();
}

// Global verdict of the directed order model over width 2 states
// (power of indegree, sum of neighbor powers).
bool order_verdict(const std::vector<NodeState>& states) {
  std::set<DecimalBitset> seen;
  for (const auto& s : states) {
    if (!seen.insert(s[0]).second) return false;  // duplicate power
    auto p = s[0].single_position();
    if (!p.has_value()) return false;
    if (!s[1].is_repunit(*p)) return false;
  }
  return true;
}

// Three bits of the gadget model: every node passed its label check, every
// node passed its degree check, and the travelled powers cover all pairs.
std::vector<bool> gadget_verdict(const std::vector<NodeState>& states) {
  bool labels_ok = true, degrees_ok = true;
  int m = 0;
  for (const auto& s : states) {
    if (!s[5].is_one()) labels_ok = false;
    if (!s[6].is_one()) degrees_ok = false;
    if (s[0].is_one()) ++m;
  }
  bool cover_ok = true;
  for (int j = 1; j < m && cover_ok; ++j) {
    for (int i = 0; i < j && cover_ok; ++i) {
      bool found = false;
      for (const auto& s : states) {
        if (!s[0].is_one()) continue;
        auto p = s[3].single_position();
        if (p.has_value() && int(*p) == j && s[4].test(unsigned(i))) {
          found = true;
          break;
        }
      }
      cover_ok = found;
    }
  }
  return {labels_ok, degrees_ok, cover_ok};
}

struct Counts {
  int at0 = 0, at1 = 0, at2 = 0, total = 0;
};

Counts neighbor_counts(const std::vector<NodeState>& states, const std::vector<int>& nbrs) {
  Counts c;
  for (int w : nbrs) {
    const NodeState& s = states[size_t(w)];
    if (marked(s, 0)) ++c.at0;
    if (marked(s, 1)) ++c.at1;
    if (marked(s, 2)) ++c.at2;
    ++c.total;
  }
  return c;
}

DecimalBitset bool_bit(bool b) {
  return b ? DecimalBitset::one_at(0) : DecimalBitset::zero();
}

// Width 7 state of the gadget model from the label bits and local counts:
// 0..2 label copy, 3 the ten power of the P2 count on P1 nodes, 4 the or
// accumulator (starts empty), 5 the exactly one label bit, 6 the local
// degree bit of whichever label rules apply.
NodeState gad_init(const NodeState& old, const Counts& c) {
  bool p1 = marked(old, 0), p2 = marked(old, 1), p3 = marked(old, 2);
  NodeState s(7, DecimalBitset::zero());
  s[0] = old[0];
  s[1] = old[1];
  s[2] = old[2];
  if (p1) s[3] = DecimalBitset::one_at(unsigned(c.at1));
  s[5] = bool_bit(int(p1) + int(p2) + int(p3) == 1);
  bool deg = true;
  if (p1) deg = deg && c.at0 == 0;
  if (p2) deg = deg && c.total == 2 && c.at0 == 1 && c.at2 == 1;
  if (p3) deg = deg && c.total == 2 && c.at1 == 1 && c.at0 == 1;
  s[6] = bool_bit(deg);
  return s;
}

}  // namespace

json GnnLayer::describe() const {
  json j;
  j["aggregate"] = agg_name(agg);
  if (agg != AggKind::None) j["direction"] = direction_name(direction);
  if (agg == AggKind::SumOfPosition) j["position"] = agg_pos;
  if (agg == AggKind::OrPositionWhereLabel) {
    j["position"] = agg_pos;
    j["neighbor_mark"] = agg_label;
  }
  j["combine"] = comb_name(comb);
  if (comb == CombKind::StoreOrIfLabel) {
    j["node_mark"] = comb_label;
    j["store_position"] = comb_pos;
  }
  if (read != ReadKind::None) j["readout"] = read_name(read);
  j["in_width"] = in_width;
  j["out_width"] = out_width;
  return j;
}

json GnnClassifier::describe() const {
  json j;
  j["name"] = name;
  j["undirected"] = undirected;
  j["input_dimension"] = input_dimension;
  j["layers"] = json::array();
  for (const auto& layer : layers) j["layers"].push_back(layer.describe());
  return j;
}

std::vector<NodeState> apply_layer(const Graph& g, const GnnLayer& layer,
                                   const std::vector<NodeState>& states) {
  require(int(states.size()) == g.num_nodes(), "one state per node required");
  for (const auto& s : states) {
    require(int(s.size()) == layer.in_width, "state width does not match the layer");
  }
  size_t n = size_t(g.num_nodes());

  std::vector<DecimalBitset> agg(n);
  std::vector<Counts> counts(n);
  for (size_t v = 0; v < n; ++v) {
    if (layer.agg == AggKind::None) continue;
    std::vector<int> nbrs = neighbors(g, int(v), layer.direction);
    switch (layer.agg) {
      case AggKind::TenPowerOfCount:
        agg[v] = DecimalBitset::one_at(unsigned(nbrs.size()));
        break;
      case AggKind::SumOfPosition: {
        DecimalBitset acc = DecimalBitset::zero();
        for (int w : nbrs) {
          acc = DecimalBitset::checked_sum(acc, states[size_t(w)][size_t(layer.agg_pos)]);
        }
        agg[v] = acc;
        break;
      }
      case AggKind::OrPositionWhereLabel: {
        DecimalBitset acc = DecimalBitset::zero();
        for (int w : nbrs) {
          if (marked(states[size_t(w)], layer.agg_label)) {
            acc = DecimalBitset::bitwise_or(acc, states[size_t(w)][size_t(layer.agg_pos)]);
          }
        }
        agg[v] = acc;
        break;
      }
      case AggKind::NeighborCounts:
        counts[v] = neighbor_counts(states, nbrs);
        break;
      case AggKind::None:
        break;
    }
  }

  std::vector<bool> verdict_bits;
  if (layer.read == ReadKind::OrderVerdict) {
    verdict_bits = {order_verdict(states)};
  } else if (layer.read == ReadKind::GadgetVerdict) {
    verdict_bits = gadget_verdict(states);
  }

  std::vector<NodeState> out(n);
  for (size_t v = 0; v < n; ++v) {
    const NodeState& old = states[v];
    NodeState s;
    switch (layer.comb) {
      case CombKind::TakeInAggregate:
        s = {agg[v]};
        break;
      case CombKind::PairWithAggregate:
        s = {old[0], agg[v]};
        break;
      case CombKind::GadInit:
        s = gad_init(old, counts[v]);
        break;
      case CombKind::StoreOrIfLabel:
        s = old;
        if (marked(old, layer.comb_label)) {
          s[size_t(layer.comb_pos)] =
              DecimalBitset::bitwise_or(old[size_t(layer.comb_pos)], agg[v]);
        }
        break;
      case CombKind::Broadcast:
        for (bool b : verdict_bits) s.push_back(bool_bit(b));
        break;
    }
    require(int(s.size()) == layer.out_width, "combine produced the wrong width");
    out[v] = std::move(s);
  }
  return out;
}

namespace {

std::vector<NodeState> initial_states(const Graph& g, const GnnClassifier& model) {
  require(g.dimension() == model.input_dimension,
          "graph label dimension does not match the model");
  if (model.undirected) require(is_undirected(g), "model requires an undirected graph");
  std::vector<NodeState> states(size_t(g.num_nodes()));
  for (int v = 0; v < g.num_nodes(); ++v) {
    NodeState s;
    for (int i = 0; i < model.input_dimension; ++i) {
      s.push_back(bool_bit(g.labels()[size_t(v)][size_t(i)] != 0));
    }
    states[size_t(v)] = std::move(s);
  }
  return states;
}

std::vector<bool> classify_states(const GnnClassifier& model,
                                  const std::vector<NodeState>& states) {
  std::vector<bool> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    bool b = false;
    if (model.cls == ClsKind::FirstPositionOne) {
      b = !s.empty() && s[0].is_one();
    } else {
      b = !s.empty();
      for (const auto& d : s) b = b && d.is_one();
    }
    out.push_back(b);
  }
  return out;
}

}  // namespace

std::vector<bool> run_classifier(const Graph& g, const GnnClassifier& model) {
  std::vector<NodeState> states = initial_states(g, model);
  for (const auto& layer : model.layers) states = apply_layer(g, layer, states);
  return classify_states(model, states);
}

GnnTrace run_classifier_trace(const Graph& g, const GnnClassifier& model) {
  GnnTrace trace;
  std::vector<NodeState> states = initial_states(g, model);
  trace.rounds.push_back(states);
  for (const auto& layer : model.layers) {
    states = apply_layer(g, layer, states);
    trace.rounds.push_back(states);
  }
  trace.outputs = classify_states(model, states);
  return trace;
}

json trace_to_json(const GnnClassifier& model, const GnnTrace& trace) {
  json j;
  j["model"] = model.describe();
  j["rounds"] = json::array();
  for (size_t r = 0; r < trace.rounds.size(); ++r) {
    json round;
    round["round"] = r;
    if (r > 0) round["layer"] = model.layers[r - 1].describe();
    json states = json::array();
    for (const auto& s : trace.rounds[r]) {
      json digits = json::array();
      for (const auto& d : s) digits.push_back(d.decimal_string());
      states.push_back(digits);
    }
    round["states"] = states;
    j["rounds"].push_back(round);
  }
  json outs = json::array();
  for (bool b : trace.outputs) outs.push_back(b);
  j["outputs"] = outs;
  return j;
}

GnnClassifier lin_classifier() {
  GnnClassifier m;
  m.name = "lin";
  m.undirected = false;
  m.input_dimension = 0;
  GnnLayer l1;
  l1.in_width = 0;
  l1.out_width = 1;
  l1.direction = NeighborhoodKind::In;
  l1.agg = AggKind::TenPowerOfCount;
  l1.comb = CombKind::TakeInAggregate;
  GnnLayer l2;
  l2.in_width = 1;
  l2.out_width = 2;
  l2.direction = NeighborhoodKind::In;
  l2.agg = AggKind::SumOfPosition;
  l2.agg_pos = 0;
  l2.comb = CombKind::PairWithAggregate;
  GnnLayer l3;
  l3.in_width = 2;
  l3.out_width = 1;
  l3.read = ReadKind::OrderVerdict;
  l3.comb = CombKind::Broadcast;
  m.layers = {l1, l2, l3};
  m.cls = ClsKind::FirstPositionOne;
  return m;
}

GnnClassifier gadlin_classifier() {
  GnnClassifier m;
  m.name = "gadlin";
  m.undirected = true;
  m.input_dimension = 3;
  GnnLayer l1;
  l1.in_width = 3;
  l1.out_width = 7;
  l1.direction = NeighborhoodKind::Any;
  l1.agg = AggKind::NeighborCounts;
  l1.comb = CombKind::GadInit;
  // The stored power travels backwards along each path: first the path
  // middle next to the target, then the middle next to the source, then
  // the source itself.
  GnnLayer l2;
  l2.in_width = 7;
  l2.out_width = 7;
  l2.direction = NeighborhoodKind::Any;
  l2.agg = AggKind::OrPositionWhereLabel;
  l2.agg_label = 0;
  l2.agg_pos = 3;
  l2.comb = CombKind::StoreOrIfLabel;
  l2.comb_label = 2;
  l2.comb_pos = 4;
  GnnLayer l3 = l2;
  l3.agg_label = 2;
  l3.agg_pos = 4;
  l3.comb_label = 1;
  GnnLayer l4 = l2;
  l4.agg_label = 1;
  l4.agg_pos = 4;
  l4.comb_label = 0;
  GnnLayer l5;
  l5.in_width = 7;
  l5.out_width = 3;
  l5.read = ReadKind::GadgetVerdict;
  l5.comb = CombKind::Broadcast;
  m.layers = {l1, l2, l3, l4, l5};
  m.cls = ClsKind::AllPositionsOne;
  return m;
}

bool check_psi(const Graph& g) {
  require(is_undirected(g), "coverage check requires an undirected graph");
  auto bit = [&](int v, int i) {
    const auto& l = g.labels()[size_t(v)];
    return i < int(l.size()) && l[size_t(i)] != 0;
  };
  auto count_p2 = [&](int v) {
    int k = 0;
    for (int w : neighbors(g, v, NeighborhoodKind::Any)) {
      if (bit(w, 1)) ++k;
    }
    return k;
  };
  std::vector<int> p1;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (bit(v, 0)) p1.push_back(v);
  }
  int m = int(p1.size());
  for (int j = 1; j < m; ++j) {
    for (int i = 0; i < j; ++i) {
      bool found = false;
      for (int u : p1) {
        if (found || count_p2(u) != j) continue;
        for (int p : neighbors(g, u, NeighborhoodKind::Any)) {
          if (found || !bit(p, 1)) continue;
          for (int q : neighbors(g, p, NeighborhoodKind::Any)) {
            if (found || !bit(q, 2)) continue;
            for (int w : neighbors(g, q, NeighborhoodKind::Any)) {
              if (bit(w, 0) && count_p2(w) == i) {
                found = true;
                break;
              }
            }
          }
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace c2wl
