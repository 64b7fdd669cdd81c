#include "c2wl/wl.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "c2wl/corpus.hpp"

namespace c2wl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

BoundedMultiset bound_multiset(std::vector<ColorId> colors, int c) {
  require(c >= 0, "cap must be nonnegative");
  BoundedMultiset out;
  if (c == 0) return out;
  std::sort(colors.begin(), colors.end());
  for (size_t i = 0; i < colors.size();) {
    size_t j = i;
    while (j < colors.size() && colors[j] == colors[i]) ++j;
    out.entries.emplace_back(colors[i],
                             std::min<int32_t>(static_cast<int32_t>(j - i), c));
    i = j;
  }
  return out;
}

ColorId ColorTable::intern_label(const std::vector<uint8_t>& label) {
  auto [it, inserted] = labels_.try_emplace(label, next_);
  if (inserted) ++next_;
  return it->second;
}

ColorId ColorTable::intern_signature(const ColorSignature& sig) {
  auto [it, inserted] = signatures_.try_emplace(sig, next_);
  if (inserted) ++next_;
  return it->second;
}

namespace {

ColorSignature node_signature(const Graph& g, int v,
                              const std::vector<ColorId>& colors, int c) {
  auto capped = [&](NeighborhoodKind kind) {
    std::vector<ColorId> cs;
    for (int w : neighbors(g, v, kind)) cs.push_back(colors[w]);
    return bound_multiset(std::move(cs), c);
  };
  return ColorSignature{colors[v], capped(NeighborhoodKind::Both),
                        capped(NeighborhoodKind::InOnly),
                        capped(NeighborhoodKind::OutOnly),
                        capped(NeighborhoodKind::NonNeighbor)};
}

}  // namespace

std::vector<ColorId> wl_step(const Graph& g, const std::vector<ColorId>& colors,
                             int c, ColorTable& table) {
  require(static_cast<int>(colors.size()) == g.num_nodes(),
          "one color per node required");
  std::vector<ColorId> next(colors.size());
  for (int v = 0; v < g.num_nodes(); ++v)
    next[v] = table.intern_signature(node_signature(g, v, colors, c));
  return next;
}

WlResult run_wl(const std::vector<const Graph*>& graphs, int c, int rounds) {
  require(c >= 0, "cap must be nonnegative");
  require(rounds >= 0, "round count must be nonnegative");
  WlResult result;
  result.table = std::make_shared<ColorTable>();
  result.colors.resize(graphs.size());
  for (size_t i = 0; i < graphs.size(); ++i) {
    require(graphs[i] != nullptr, "null graph");
    std::vector<ColorId> base(graphs[i]->num_nodes());
    for (int v = 0; v < graphs[i]->num_nodes(); ++v)
      base[v] = result.table->intern_label(graphs[i]->label(v));
    result.colors[i].push_back(std::move(base));
  }
  for (int r = 0; r < rounds; ++r)
    for (size_t i = 0; i < graphs.size(); ++i)
      result.colors[i].push_back(
          wl_step(*graphs[i], result.colors[i].back(), c, *result.table));
  return result;
}

std::vector<int> partition_sizes(const std::vector<ColorId>& colors) {
  std::vector<ColorId> order;
  std::vector<int> sizes;
  for (ColorId c : colors) {
    auto it = std::find(order.begin(), order.end(), c);
    if (it == order.end()) {
      order.push_back(c);
      sizes.push_back(1);
    } else {
      ++sizes[static_cast<size_t>(it - order.begin())];
    }
  }
  return sizes;
}

namespace {

// Class index per node, numbered by first appearance; two colorings induce
// the same partition exactly when these vectors match.
std::vector<int> canonical_partition(const std::vector<ColorId>& colors) {
  std::map<ColorId, int> index;
  std::vector<int> out;
  out.reserve(colors.size());
  for (ColorId c : colors)
    out.push_back(index.try_emplace(c, static_cast<int>(index.size())).first->second);
  return out;
}

}  // namespace

int stable_round(const Graph& g, int c) {
  ColorTable table;
  std::vector<ColorId> colors(g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v)
    colors[v] = table.intern_label(g.label(v));
  for (int r = 0; r <= g.num_nodes(); ++r) {
    std::vector<ColorId> next = wl_step(g, colors, c, table);
    if (canonical_partition(colors) == canonical_partition(next)) return r;
    colors = std::move(next);
  }
  throw std::logic_error("refinement failed to stabilize within node count");
}

namespace {

// Recursive construction of separating formulas from refinement history.
class Separator {
public:
  Separator(const Graph& ga, const Graph& gb, int c, WlResult wl)
      : ga_(ga), gb_(gb), c_(c), wl_(std::move(wl)) {}

  // True at nodes colored cu after round r, false at nodes colored cv.
  FormulaPtr separate(int r, ColorId cu, ColorId cv) {
    require(cu != cv, "colors must differ");
    auto key = std::make_tuple(r, cu, cv);
    auto it = pair_memo_.find(key);
    if (it != pair_memo_.end()) return it->second;
    FormulaPtr f = r == 0 ? separate_labels(cu) : separate_signatures(r, cu, cv);
    pair_memo_.emplace(key, f);
    return f;
  }

private:
  std::pair<const Graph*, int> representative(int r, ColorId color) {
    for (size_t gi = 0; gi < wl_.colors.size(); ++gi) {
      const auto& round = wl_.colors[gi][static_cast<size_t>(r)];
      for (size_t v = 0; v < round.size(); ++v)
        if (round[v] == color)
          return {gi == 0 ? &ga_ : &gb_, static_cast<int>(v)};
    }
    throw std::logic_error("color has no representative");
  }

  std::vector<ColorId> colors_present(int r) {
    std::vector<ColorId> out;
    for (const auto& per_graph : wl_.colors)
      for (ColorId c : per_graph[static_cast<size_t>(r)])
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    return out;
  }

  // Label literal conjunction of the representative node.
  FormulaPtr separate_labels(ColorId cu) {
    auto [g, v] = representative(0, cu);
    const auto& lab = g->label(v);
    std::vector<FormulaPtr> literals;
    for (size_t i = 0; i < lab.size(); ++i) {
      FormulaPtr p = mk_pred(static_cast<int>(i) + 1, "x");
      literals.push_back(lab[i] ? p : mk_not(p));
    }
    require(!literals.empty(), "round zero colors differ only via labels");
    return mk_and_all(literals);
  }

  // True exactly at nodes whose round-r color is t.
  FormulaPtr pin_color(int r, ColorId t) {
    auto key = std::make_pair(r, t);
    auto it = sigma_memo_.find(key);
    if (it != sigma_memo_.end()) return it->second;
    std::vector<FormulaPtr> parts;
    for (ColorId other : colors_present(r))
      if (other != t) parts.push_back(separate(r, t, other));
    FormulaPtr f = parts.empty() ? mk_eq("x", "x") : mk_and_all(parts);
    sigma_memo_.emplace(key, f);
    return f;
  }

  FormulaPtr separate_signatures(int r, ColorId cu, ColorId cv) {
    auto [gu, u] = representative(r, cu);
    auto [gv, v] = representative(r, cv);
    const auto& colors_u = wl_.colors[gu == &ga_ ? 0 : 1][static_cast<size_t>(r - 1)];
    const auto& colors_v = wl_.colors[gv == &ga_ ? 0 : 1][static_cast<size_t>(r - 1)];
    ColorSignature su = node_signature(*gu, u, colors_u, c_);
    ColorSignature sv = node_signature(*gv, v, colors_v, c_);
    if (su.prev != sv.prev) return separate(r - 1, su.prev, sv.prev);
    const BoundedMultiset* mu[4] = {&su.both, &su.in_only, &su.out_only,
                                    &su.non_neighbor};
    const BoundedMultiset* mv[4] = {&sv.both, &sv.in_only, &sv.out_only,
                                    &sv.non_neighbor};
    for (int j = 0; j < 4; ++j) {
      if (*mu[j] == *mv[j]) continue;
      auto [t, ku, kv] = first_difference(*mu[j], *mv[j]);
      // Quantify over the earlier coloring: the witness count of color t
      // within relation j separates the two nodes. A capped count below c
      // is exact, so the larger threshold fails on the smaller side.
      FormulaPtr sigma_y = swap_xy(pin_color(r - 1, t));
      FormulaPtr body = mk_and(sigma_y, chi_formula(j + 1));
      if (ku > kv) return mk_count_exists(ku, "y", body);
      return mk_not(mk_count_exists(kv, "y", body));
    }
    throw std::logic_error("distinct colors with equal signatures");
  }

  // Smallest color whose capped multiplicity differs, with both counts.
  static std::tuple<ColorId, int32_t, int32_t> first_difference(
      const BoundedMultiset& a, const BoundedMultiset& b) {
    size_t i = 0, j = 0;
    while (i < a.entries.size() || j < b.entries.size()) {
      ColorId ca = i < a.entries.size() ? a.entries[i].first
                                        : std::numeric_limits<ColorId>::max();
      ColorId cb = j < b.entries.size() ? b.entries[j].first
                                        : std::numeric_limits<ColorId>::max();
      if (ca < cb) return {ca, a.entries[i].second, 0};
      if (cb < ca) return {cb, 0, b.entries[j].second};
      if (a.entries[i].second != b.entries[j].second)
        return {ca, a.entries[i].second, b.entries[j].second};
      ++i;
      ++j;
    }
    throw std::logic_error("multisets are equal");
  }

  const Graph& ga_;
  const Graph& gb_;
  int c_;
  WlResult wl_;
  std::map<std::tuple<int, ColorId, ColorId>, FormulaPtr> pair_memo_;
  std::map<std::pair<int, ColorId>, FormulaPtr> sigma_memo_;
};

}  // namespace

std::optional<FormulaPtr> build_distinguishing_formula(const Graph& ga, int u,
                                                       const Graph& gb, int v,
                                                       int ell, int c) {
  require(0 <= u && u < ga.num_nodes(), "node u out of range");
  require(0 <= v && v < gb.num_nodes(), "node v out of range");
  require(ell >= 0, "round count must be nonnegative");
  require(c >= 0, "cap must be nonnegative");
  require(ga.dimension() == gb.dimension(),
          "graphs must share the label dimension");
  WlResult wl = run_wl({&ga, &gb}, c, ell);
  ColorId cu = wl.colors[0][static_cast<size_t>(ell)][static_cast<size_t>(u)];
  ColorId cv = wl.colors[1][static_cast<size_t>(ell)][static_cast<size_t>(v)];
  if (cu == cv) return std::nullopt;
  Separator sep(ga, gb, c, std::move(wl));
  return sep.separate(ell, cu, cv);
}

}  // namespace c2wl
