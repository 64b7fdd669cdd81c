#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "c2wl/graph.hpp"
#include "c2wl/random_gen.hpp"

using namespace c2wl;

namespace {

// Total order on 0..n-1 with all forward edges.
Graph order_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) edges.emplace_back(u, w);
  return Graph(n, 0, std::vector<std::vector<uint8_t>>(n), edges);
}

// All digraphs on n nodes, one per edge-subset bitmask.
Graph digraph_from_mask(int n, uint64_t mask) {
  std::vector<std::pair<int, int>> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) {
      if (u == w) continue;
      if (mask >> bit & 1) edges.emplace_back(u, w);
      ++bit;
    }
  return Graph(n, 0, std::vector<std::vector<uint8_t>>(n), edges);
}

uint64_t factorial(int n) {
  uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

TEST_CASE("construction validates input") {
  CHECK_THROWS_AS(Graph(2, 0, {{}, {}}, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, 0, {{}, {}}, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, 0, {{}, {}}, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, 1, {{1}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(1, 1, {{2}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(-1, 0, {}, {}), std::invalid_argument);
  Graph g(3, 2, {{0, 1}, {1, 0}, {1, 1}}, {{2, 0}, {0, 1}});
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {2, 0}});
  CHECK(g.label(2) == std::vector<uint8_t>{1, 1});
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("neighborhoods on the 4 node total order") {
  Graph g = order_graph(4);
  CHECK(neighbors(g, 0, NeighborhoodKind::In).empty());
  CHECK(neighbors(g, 3, NeighborhoodKind::In) == std::vector<int>{0, 1, 2});
  CHECK(neighbors(g, 0, NeighborhoodKind::Out) == std::vector<int>{1, 2, 3});
  CHECK(neighbors(g, 1, NeighborhoodKind::InOnly) == std::vector<int>{0});
  CHECK(neighbors(g, 1, NeighborhoodKind::OutOnly) == std::vector<int>{2, 3});
  CHECK(neighbors(g, 1, NeighborhoodKind::Both).empty());
  CHECK(neighbors(g, 1, NeighborhoodKind::Any) == std::vector<int>{0, 2, 3});
  CHECK(neighbors(g, 1, NeighborhoodKind::NonNeighbor).empty());
}

TEST_CASE("neighborhood kinds partition the other nodes") {
  std::mt19937_64 rng(7);
  RandomGraphParams params;
  params.max_nodes = 8;
  params.edge_prob = 0.4;
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = random_graph(rng, params);
    for (int v = 0; v < g.num_nodes(); ++v) {
      std::vector<int> merged;
      for (auto kind : {NeighborhoodKind::Both, NeighborhoodKind::InOnly,
                        NeighborhoodKind::OutOnly, NeighborhoodKind::NonNeighbor}) {
        auto part = neighbors(g, v, kind);
        merged.insert(merged.end(), part.begin(), part.end());
      }
      std::sort(merged.begin(), merged.end());
      std::vector<int> expected;
      for (int w = 0; w < g.num_nodes(); ++w)
        if (w != v) expected.push_back(w);
      CHECK(merged == expected);
      // In = Both + InOnly, Out = Both + OutOnly.
      auto both = neighbors(g, v, NeighborhoodKind::Both);
      auto in_only = neighbors(g, v, NeighborhoodKind::InOnly);
      std::vector<int> in_merged;
      std::set_union(both.begin(), both.end(), in_only.begin(), in_only.end(),
                     std::back_inserter(in_merged));
      CHECK(in_merged == neighbors(g, v, NeighborhoodKind::In));
    }
  }
}

TEST_CASE("undirected detection") {
  CHECK(is_undirected(Graph(2, 0, {{}, {}}, {{0, 1}, {1, 0}})));
  CHECK_FALSE(is_undirected(Graph(2, 0, {{}, {}}, {{0, 1}})));
  CHECK(is_undirected(Graph(3, 0, {{}, {}, {}}, {})));
}

TEST_CASE("strict linear order on small fixtures") {
  CHECK(is_strict_linear_order(order_graph(1)));
  CHECK(is_strict_linear_order(order_graph(4)));
  CHECK(is_strict_linear_order_alt(order_graph(4)));
  // Missing comparability.
  CHECK_FALSE(is_strict_linear_order(Graph(3, 0, {{}, {}, {}}, {{0, 1}})));
  // 3-cycle is total but not transitive.
  Graph cyc(3, 0, {{}, {}, {}}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK_FALSE(is_strict_linear_order(cyc));
  CHECK_FALSE(is_strict_linear_order_alt(cyc));
}

TEST_CASE("both order tests agree on every digraph with up to 4 nodes") {
  for (int n = 0; n <= 4; ++n) {
    int pairs = n * (n - 1);
    uint64_t total = uint64_t{1} << pairs;
    uint64_t orders = 0;
    for (uint64_t mask = 0; mask < total; ++mask) {
      Graph g = digraph_from_mask(n, mask);
      bool a = is_strict_linear_order(g);
      bool b = is_strict_linear_order_alt(g);
      REQUIRE(a == b);
      if (a) ++orders;
    }
    CHECK(orders == factorial(n));
  }
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(11);
  RandomGraphParams params;
  params.max_nodes = 7;
  params.dimension = 2;
  for (int trial = 0; trial < 40; ++trial) {
    params.undirected = trial % 2 == 0;
    Graph g = random_graph(rng, params);
    std::string text = serialize_graph(g);
    Graph back = parse_graph(text);
    CHECK(back == g);
    CHECK(serialize_graph(back) == text);
  }
}

TEST_CASE("json form stores undirected edges once") {
  Graph g(2, 0, {{}, {}}, {{0, 1}, {1, 0}});
  json j = graph_to_json(g);
  CHECK(j["directed"] == false);
  CHECK(j["edges"].size() == 1);
  CHECK(graph_from_json(j) == g);
}

TEST_CASE("malformed json is rejected") {
  CHECK_THROWS_AS(parse_graph("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph("{}"), std::invalid_argument);
  json j = graph_to_json(order_graph(2));
  json bad = j;
  bad["edges"].push_back(json::array({0, 0}));
  CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad["labels"] = json::array({json::array({2}), json::array({0})});
  CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);
  bad = j;
  bad.erase("num_nodes");
  CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);
}
