#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace c2wl {

using json = nlohmann::ordered_json;

// Finite directed graph with loop-free edges and a fixed-width bit label per
// node. Node ids are 0..num_nodes-1. Edges are stored sorted and unique;
// adjacency structures are built once at construction.
class Graph {
public:
  Graph(int num_nodes, int dimension, std::vector<std::vector<uint8_t>> labels,
        std::vector<std::pair<int, int>> edges);

  int num_nodes() const { return num_nodes_; }
  int dimension() const { return dimension_; }
  const std::vector<std::vector<uint8_t>>& labels() const { return labels_; }
  const std::vector<uint8_t>& label(int v) const;
  // Sorted, duplicate-free list of ordered pairs (u, w), u != w.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int u, int w) const;
  const std::vector<int>& out_neighbors(int v) const;
  const std::vector<int>& in_neighbors(int v) const;

  bool operator==(const Graph& other) const;

private:
  int num_nodes_;
  int dimension_;
  std::vector<std::vector<uint8_t>> labels_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<char> adj_;  // row-major num_nodes x num_nodes
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

enum class NeighborhoodKind {
  In,           // w with (w, v) an edge
  Out,          // w with (v, w) an edge
  Any,          // In union Out
  Both,         // In intersect Out
  InOnly,       // In minus Out
  OutOnly,      // Out minus In
  NonNeighbor,  // every w != v that is not in Any
};

// Ascending list of the nodes in the requested neighborhood of v.
std::vector<int> neighbors(const Graph& g, int v, NeighborhoodKind kind);

// True when the edge relation is symmetric.
bool is_undirected(const Graph& g);

// Totality plus transitivity check (irreflexivity holds by construction).
bool is_strict_linear_order(const Graph& g);

// Equivalent test: irreflexive, total, and out-degrees pairwise distinct.
bool is_strict_linear_order_alt(const Graph& g);

// Canonical JSON form: directed flag, dimension, num_nodes, labels, edges.
// Undirected graphs store each edge once as (u, w) with u < w.
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

std::string serialize_graph(const Graph& g);
Graph parse_graph(const std::string& text);

}  // namespace c2wl
