#include "c2wl/random_gen.hpp"

#include <algorithm>
#include <stdexcept>

namespace c2wl {

Graph random_graph(std::mt19937_64& rng, const RandomGraphParams& params) {
  if (params.min_nodes < 0 || params.max_nodes < params.min_nodes)
    throw std::invalid_argument("bad node range");
  std::uniform_int_distribution<int> node_count(params.min_nodes, params.max_nodes);
  std::bernoulli_distribution edge(params.edge_prob);
  std::bernoulli_distribution bit(0.5);
  int n = node_count(rng);
  std::vector<std::vector<uint8_t>> labels(n);
  for (auto& lab : labels) {
    lab.resize(params.dimension);
    for (auto& b : lab) b = bit(rng) ? 1 : 0;
  }
  std::vector<std::pair<int, int>> edges;
  if (params.undirected) {
    for (int u = 0; u < n; ++u)
      for (int w = u + 1; w < n; ++w)
        if (edge(rng)) {
          edges.emplace_back(u, w);
          edges.emplace_back(w, u);
        }
  } else if (params.forbid_two_cycles) {
    std::bernoulli_distribution direction(0.5);
    for (int u = 0; u < n; ++u)
      for (int w = u + 1; w < n; ++w)
        if (edge(rng)) {
          if (direction(rng))
            edges.emplace_back(u, w);
          else
            edges.emplace_back(w, u);
        }
  } else {
    for (int u = 0; u < n; ++u)
      for (int w = 0; w < n; ++w)
        if (u != w && edge(rng)) edges.emplace_back(u, w);
  }
  return Graph(n, params.dimension, std::move(labels), std::move(edges));
}

namespace {

struct FormulaGen {
  std::mt19937_64& rng;
  const RandomFormulaParams& params;

  int pick(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
  }

  std::string pick_var(const std::vector<std::string>& avail) {
    return avail[static_cast<size_t>(pick(0, static_cast<int>(avail.size()) - 1))];
  }

  FormulaPtr atom(const std::vector<std::string>& avail) {
    switch (pick(0, params.max_pred >= 1 ? 3 : 2)) {
      case 0:
        return mk_edge(pick_var(avail), pick_var(avail));
      case 1:
        return mk_eq(pick_var(avail), pick_var(avail));
      case 2:
        return mk_neq(pick_var(avail), pick_var(avail));
      default:
        return mk_pred(pick(1, params.max_pred), pick_var(avail));
    }
  }

  FormulaPtr gen(int depth, std::vector<std::string> avail, int size_budget) {
    bool can_quantify = depth > 0 && params.max_rank >= 1;
    int choice = pick(0, 9);
    if (size_budget <= 1 || choice <= 3) return atom(avail);
    if (choice <= 5 || !can_quantify) {
      if (choice == 4 || !can_quantify) {
        if (pick(0, 1) == 0) return mk_not(gen(depth, avail, size_budget - 1));
      }
      int half = size_budget / 2;
      FormulaPtr a = gen(depth, avail, half);
      FormulaPtr b = gen(depth, avail, half);
      return pick(0, 1) == 0 ? mk_and(a, b) : mk_or(a, b);
    }
    std::string v = pick(0, 1) == 0 ? "x" : "y";
    std::vector<std::string> inner = avail;
    if (std::find(inner.begin(), inner.end(), v) == inner.end()) inner.push_back(v);
    int k = pick(1, params.max_rank);
    return mk_count_exists(k, v, gen(depth - 1, inner, size_budget - 1));
  }
};

}  // namespace

FormulaPtr random_c2_formula(std::mt19937_64& rng, const RandomFormulaParams& params) {
  for (const auto& v : params.free_vars)
    if (v != "x" && v != "y")
      throw std::invalid_argument("free variables must be among x, y");
  FormulaGen gen{rng, params};
  std::vector<std::string> avail = params.free_vars;
  if (avail.empty()) {
    // Closed formulas must start with a quantifier or a variable-free shape;
    // simplest is to quantify immediately when depth allows.
    if (params.max_depth >= 1 && params.max_rank >= 1) {
      std::string v = gen.pick(0, 1) == 0 ? "x" : "y";
      return mk_count_exists(gen.pick(1, params.max_rank), v,
                             gen.gen(params.max_depth - 1, {v}, 12));
    }
    throw std::invalid_argument("closed formulas need depth and rank at least 1");
  }
  return gen.gen(params.max_depth, avail, 12);
}

}  // namespace c2wl
