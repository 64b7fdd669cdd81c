#include "c2wl/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace c2wl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Graph make_linear_order(int n) {
  require(n >= 1, "order needs at least one node");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) edges.emplace_back(u, w);
  return Graph(n, 0, std::vector<std::vector<uint8_t>>(n), std::move(edges));
}

PerturbedPair make_perturbed_order(int ell, int c) {
  require(ell >= 1 && c >= 1, "ell and c must be at least 1");
  int n = ell * c + 1;
  Graph base = make_linear_order(2 * n + 1);
  std::vector<std::pair<int, int>> edges = base.edges();
  auto it = std::find(edges.begin(), edges.end(), std::make_pair(n - 1, n + 1));
  require(it != edges.end(), "missing straddling edge");
  *it = {n + 1, n - 1};
  Graph variant(base.num_nodes(), 0,
                std::vector<std::vector<uint8_t>>(base.num_nodes()),
                std::move(edges));
  return {std::move(base), std::move(variant), n};
}

Graph gadgetise(const Graph& g) {
  int n = g.num_nodes();
  int total = n + 2 * static_cast<int>(g.edges().size());
  std::vector<std::vector<uint8_t>> labels(total);
  for (int v = 0; v < n; ++v) labels[v] = {1, 0, 0};
  std::vector<std::pair<int, int>> edges;
  auto link = [&edges](int a, int b) {
    edges.emplace_back(a, b);
    edges.emplace_back(b, a);
  };
  for (size_t k = 0; k < g.edges().size(); ++k) {
    auto [u, w] = g.edges()[k];
    int p = n + 2 * static_cast<int>(k);
    int q = p + 1;
    labels[p] = {0, 1, 0};
    labels[q] = {0, 0, 1};
    link(u, p);
    link(p, q);
    link(q, w);
  }
  return Graph(total, 3, std::move(labels), std::move(edges));
}

PerturbedGadgetPair make_perturbed_gadget(int ell, int c) {
  PerturbedPair orders = make_perturbed_order(ell, c);
  int n = orders.half;
  Graph base = gadgetise(orders.base);
  const auto& base_edges = orders.base.edges();
  auto middle = [&](int u, int w) {
    auto it = std::find(base_edges.begin(), base_edges.end(), std::make_pair(u, w));
    require(it != base_edges.end(), "missing order edge");
    int k = static_cast<int>(it - base_edges.begin());
    return std::make_pair(orders.base.num_nodes() + 2 * k,
                          orders.base.num_nodes() + 2 * k + 1);
  };
  // Rewire the straddling gadget in place: its path now runs from node n+1
  // to node n-1 while both middle nodes keep their ids.
  auto [p, q] = middle(n - 1, n + 1);
  std::vector<std::pair<int, int>> edges = base.edges();
  auto drop = [&edges](int a, int b) {
    auto it = std::find(edges.begin(), edges.end(), std::make_pair(a, b));
    if (it != edges.end()) edges.erase(it);
  };
  drop(n - 1, p);
  drop(p, n - 1);
  drop(q, n + 1);
  drop(n + 1, q);
  edges.emplace_back(n + 1, p);
  edges.emplace_back(p, n + 1);
  edges.emplace_back(q, n - 1);
  edges.emplace_back(n - 1, q);
  Graph variant(base.num_nodes(), 3, base.labels(), std::move(edges));
  // Gadget paths n+1 -> n-1 (rewired), n-1 -> n, n -> n+1 close a cycle.
  auto [a2, a3] = middle(n - 1, n);
  auto [b2, b3] = middle(n, n + 1);
  std::array<int, 9> cycle{n + 1, p, q, n - 1, a2, a3, n, b2, b3};
  return {std::move(base), std::move(variant), cycle};
}

Graph mutate(const Graph& g, const GraphEdit& edit) {
  int n = g.num_nodes();
  std::vector<std::pair<int, int>> edges = g.edges();
  std::vector<std::vector<uint8_t>> labels = g.labels();
  switch (edit.kind) {
    case GraphEdit::Kind::AddEdge: {
      require(0 <= edit.a && edit.a < n && 0 <= edit.b && edit.b < n,
              "edit endpoint out of range");
      require(edit.a != edit.b, "loops are not allowed");
      require(!g.has_edge(edit.a, edit.b), "edge already present");
      edges.emplace_back(edit.a, edit.b);
      break;
    }
    case GraphEdit::Kind::RemoveEdge: {
      require(g.has_edge(edit.a, edit.b), "edge not present");
      edges.erase(std::find(edges.begin(), edges.end(),
                            std::make_pair(edit.a, edit.b)));
      break;
    }
    case GraphEdit::Kind::FlipLabel: {
      require(0 <= edit.a && edit.a < n, "edit node out of range");
      require(1 <= edit.b && edit.b <= g.dimension(),
              "label position out of range");
      labels[edit.a][edit.b - 1] ^= 1;
      break;
    }
  }
  return Graph(n, g.dimension(), std::move(labels), std::move(edges));
}

std::vector<NamedMutation> undirected_edit_corpus(const Graph& g) {
  require(is_undirected(g), "edit corpus expects an undirected graph");
  std::vector<NamedMutation> out;
  int n = g.num_nodes();
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) {
      if (!g.has_edge(u, w)) continue;
      Graph once = mutate(g, {GraphEdit::Kind::RemoveEdge, u, w});
      out.push_back({"remove " + std::to_string(u) + "-" + std::to_string(w),
                     mutate(once, {GraphEdit::Kind::RemoveEdge, w, u})});
    }
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) {
      if (g.has_edge(u, w)) continue;
      Graph once = mutate(g, {GraphEdit::Kind::AddEdge, u, w});
      out.push_back({"add " + std::to_string(u) + "-" + std::to_string(w),
                     mutate(once, {GraphEdit::Kind::AddEdge, w, u})});
    }
  for (int v = 0; v < n; ++v)
    for (int i = 1; i <= g.dimension(); ++i)
      out.push_back({"flip " + std::to_string(v) + ":" + std::to_string(i),
                     mutate(g, {GraphEdit::Kind::FlipLabel, v, i})});
  return out;
}

FormulaPtr formula_totality() {
  return mk_forall(
      "x", mk_forall("y", mk_or_all({mk_eq("x", "y"), mk_edge("x", "y"),
                                     mk_edge("y", "x")})));
}

FormulaPtr formula_transitivity() {
  return mk_forall(
      "x",
      mk_forall(
          "y", mk_forall("z", mk_implies(mk_and(mk_edge("x", "y"),
                                                mk_edge("y", "z")),
                                         mk_edge("x", "z")))));
}

FormulaPtr formula_phi_lin() {
  return mk_and_all(
      {mk_eq("x", "x"), formula_totality(), formula_transitivity()});
}

FormulaPtr formula_phi1() {
  FormulaPtr p1 = mk_pred(1, "x");
  FormulaPtr p2 = mk_pred(2, "x");
  FormulaPtr p3 = mk_pred(3, "x");
  return mk_forall(
      "x", mk_and_all({mk_or_all({p1, p2, p3}), mk_not(mk_and(p1, p2)),
                       mk_not(mk_and(p1, p3)), mk_not(mk_and(p2, p3))}));
}

namespace {

// Exactly one y with E(x, y) and label i.
FormulaPtr one_labeled_neighbor(int label) {
  return mk_count_exact(1, "y", mk_and(mk_edge("x", "y"), mk_pred(label, "y")));
}

}  // namespace

FormulaPtr formula_phi2() {
  FormulaPtr two_neighbors = mk_count_exact(2, "y", mk_edge("x", "y"));
  FormulaPtr p2_rule = mk_forall(
      "x", mk_implies(mk_pred(2, "x"),
                      mk_and_all({two_neighbors, one_labeled_neighbor(1),
                                  one_labeled_neighbor(3)})));
  FormulaPtr p3_rule = mk_forall(
      "x", mk_implies(mk_pred(3, "x"),
                      mk_and_all({two_neighbors, one_labeled_neighbor(2),
                                  one_labeled_neighbor(1)})));
  FormulaPtr p1_rule = mk_forall(
      "x", mk_implies(mk_pred(1, "x"),
                      mk_not(mk_exists(
                          "y", mk_and(mk_edge("x", "y"), mk_pred(1, "y"))))));
  return mk_and_all({p2_rule, p3_rule, p1_rule});
}

namespace {

// Exactly one path source - P2 - P3 - target along edges.
FormulaPtr one_gadget_path(const std::string& source, const std::string& target) {
  FormulaPtr inner = mk_count_exact(
      1, "z",
      mk_and_all({mk_pred(3, "z"), mk_edge("y", "z"), mk_edge("z", target)}));
  return mk_count_exact(
      1, "y", mk_and_all({mk_pred(2, "y"), mk_edge(source, "y"), inner}));
}

FormulaPtr xor_of(FormulaPtr a, FormulaPtr b) {
  return mk_and(mk_or(a, b), mk_not(mk_and(a, b)));
}

}  // namespace

FormulaPtr formula_phi3() {
  FormulaPtr guard = mk_and_all(
      {mk_pred(1, "x"), mk_pred(1, "xp"), mk_neq("x", "xp")});
  FormulaPtr body = xor_of(one_gadget_path("x", "xp"), one_gadget_path("xp", "x"));
  return mk_forall("x", mk_forall("xp", mk_implies(guard, body)));
}

FormulaPtr formula_phi4() {
  const char* names[9] = {"x1", "x2", "x3", "y1", "y2", "y3",
                          "z1", "z2", "z3"};
  std::vector<FormulaPtr> parts;
  for (int t = 0; t < 3; ++t)
    for (int i = 0; i < 3; ++i) parts.push_back(mk_pred(i + 1, names[3 * t + i]));
  for (int i = 0; i < 9; ++i)
    parts.push_back(mk_edge(names[i], names[(i + 1) % 9]));
  FormulaPtr body = mk_and_all(parts);
  for (int i = 8; i >= 0; --i) body = mk_exists(names[i], body);
  return mk_not(body);
}

FormulaPtr formula_phi_gadlin_fo() {
  return mk_and_all({mk_eq("x", "x"), formula_phi1(), formula_phi2(),
                     formula_phi3(), formula_phi4()});
}

FormulaPtr chi_formula(int j) {
  FormulaPtr exy = mk_edge("x", "y");
  FormulaPtr eyx = mk_edge("y", "x");
  switch (j) {
    case 1:
      return mk_and(exy, eyx);
    case 2:
      return mk_and(mk_not(exy), eyx);
    case 3:
      return mk_and(exy, mk_not(eyx));
    case 4:
      return mk_and_all({mk_not(exy), mk_not(eyx), mk_neq("x", "y")});
    default:
      throw std::invalid_argument("relation index must be in 1..4");
  }
}

FormulaPtr inf_c2_truncation(InfFamily which, int bound) {
  require(bound >= 1, "bound must be at least 1");
  std::vector<FormulaPtr> conjuncts;
  if (which == InfFamily::DistinctOutdegree) {
    for (int i = 0; i < bound; ++i) {
      FormulaPtr x_deg = mk_count_exact(i, "y", mk_edge("x", "y"));
      FormulaPtr y_deg = mk_count_exact(i, "x", mk_edge("y", "x"));
      conjuncts.push_back(mk_forall(
          "x", mk_forall("y", mk_implies(mk_and(x_deg, y_deg),
                                         mk_eq("x", "y")))));
    }
  } else {
    for (int j = 1; j < bound; ++j)
      for (int i = 0; i < j; ++i) {
        // Innermost: the reached P1 node has exactly i P2 neighbors.
        FormulaPtr tail = mk_count_exact(
            i, "x", mk_and(mk_pred(2, "x"), mk_edge("y", "x")));
        FormulaPtr reach = mk_exists(
            "y", mk_and_all({mk_pred(1, "y"), mk_edge("x", "y"), tail}));
        FormulaPtr via_p3 = mk_exists(
            "x", mk_and_all({mk_pred(3, "x"), mk_edge("y", "x"), reach}));
        FormulaPtr path = mk_exists(
            "y", mk_and_all({mk_pred(2, "y"), mk_edge("x", "y"), via_p3}));
        FormulaPtr witness = mk_exists(
            "x", mk_and_all({mk_count_exact(j, "y",
                                            mk_and(mk_pred(2, "y"),
                                                   mk_edge("x", "y"))),
                             mk_pred(1, "x"), path}));
        FormulaPtr guard = mk_count_exists(j + 1, "x", mk_pred(1, "x"));
        conjuncts.push_back(mk_implies(guard, witness));
      }
    if (conjuncts.empty()) return mk_forall("x", mk_eq("x", "x"));
  }
  return mk_and_all(conjuncts);
}

}  // namespace c2wl
