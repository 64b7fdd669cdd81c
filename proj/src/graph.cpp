#include "c2wl/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace c2wl {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Graph::Graph(int num_nodes, int dimension,
             std::vector<std::vector<uint8_t>> labels,
             std::vector<std::pair<int, int>> edges)
    : num_nodes_(num_nodes),
      dimension_(dimension),
      labels_(std::move(labels)),
      edges_(std::move(edges)) {
  require(num_nodes_ >= 0, "num_nodes must be nonnegative");
  require(dimension_ >= 0, "dimension must be nonnegative");
  require(static_cast<int>(labels_.size()) == num_nodes_,
          "labels must list one vector per node");
  for (const auto& lab : labels_) {
    require(static_cast<int>(lab.size()) == dimension_,
            "every label must have exactly dimension bits");
    for (uint8_t bit : lab) require(bit <= 1, "label entries must be 0 or 1");
  }
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 0; i < edges_.size(); ++i) {
    auto [u, w] = edges_[i];
    require(0 <= u && u < num_nodes_ && 0 <= w && w < num_nodes_,
            "edge endpoint out of range");
    require(u != w, "loops are not allowed");
    require(i == 0 || edges_[i] != edges_[i - 1], "duplicate edge");
  }
  adj_.assign(static_cast<size_t>(num_nodes_) * num_nodes_, 0);
  out_.assign(num_nodes_, {});
  in_.assign(num_nodes_, {});
  for (auto [u, w] : edges_) {
    adj_[static_cast<size_t>(u) * num_nodes_ + w] = 1;
    out_[u].push_back(w);
    in_[w].push_back(u);
  }
  for (auto& v : in_) std::sort(v.begin(), v.end());
  // out_ lists are already ascending because edges_ is sorted.
}

const std::vector<uint8_t>& Graph::label(int v) const {
  require(0 <= v && v < num_nodes_, "node id out of range");
  return labels_[static_cast<size_t>(v)];
}

bool Graph::has_edge(int u, int w) const {
  require(0 <= u && u < num_nodes_ && 0 <= w && w < num_nodes_,
          "node id out of range");
  return adj_[static_cast<size_t>(u) * num_nodes_ + w] != 0;
}

const std::vector<int>& Graph::out_neighbors(int v) const {
  require(0 <= v && v < num_nodes_, "node id out of range");
  return out_[static_cast<size_t>(v)];
}

const std::vector<int>& Graph::in_neighbors(int v) const {
  require(0 <= v && v < num_nodes_, "node id out of range");
  return in_[static_cast<size_t>(v)];
}

bool Graph::operator==(const Graph& other) const {
  return num_nodes_ == other.num_nodes_ && dimension_ == other.dimension_ &&
         labels_ == other.labels_ && edges_ == other.edges_;
}

std::vector<int> neighbors(const Graph& g, int v, NeighborhoodKind kind) {
  const auto& in = g.in_neighbors(v);
  const auto& out = g.out_neighbors(v);
  std::vector<int> result;
  switch (kind) {
    case NeighborhoodKind::In:
      return in;
    case NeighborhoodKind::Out:
      return out;
    case NeighborhoodKind::Any:
      std::set_union(in.begin(), in.end(), out.begin(), out.end(),
                     std::back_inserter(result));
      return result;
    case NeighborhoodKind::Both:
      std::set_intersection(in.begin(), in.end(), out.begin(), out.end(),
                            std::back_inserter(result));
      return result;
    case NeighborhoodKind::InOnly:
      std::set_difference(in.begin(), in.end(), out.begin(), out.end(),
                          std::back_inserter(result));
      return result;
    case NeighborhoodKind::OutOnly:
      std::set_difference(out.begin(), out.end(), in.begin(), in.end(),
                          std::back_inserter(result));
      return result;
    case NeighborhoodKind::NonNeighbor: {
      std::vector<int> any;
      std::set_union(in.begin(), in.end(), out.begin(), out.end(),
                     std::back_inserter(any));
      size_t pos = 0;
      for (int w = 0; w < g.num_nodes(); ++w) {
        while (pos < any.size() && any[pos] < w) ++pos;
        bool adjacent = pos < any.size() && any[pos] == w;
        if (w != v && !adjacent) result.push_back(w);
      }
      return result;
    }
  }
  throw std::invalid_argument("unknown neighborhood kind");
}

bool is_undirected(const Graph& g) {
  for (auto [u, w] : g.edges())
    if (!g.has_edge(w, u)) return false;
  return true;
}

bool is_strict_linear_order(const Graph& g) {
  int n = g.num_nodes();
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w)
      if (!g.has_edge(u, w) && !g.has_edge(w, u)) return false;
  for (auto [u, w] : g.edges())
    for (int z : g.out_neighbors(w))
      if (z != u && !g.has_edge(u, z)) return false;
  // Transitivity plus totality forbids 2-cycles: u->w->u would force u->u.
  for (auto [u, w] : g.edges())
    if (g.has_edge(w, u)) return false;
  return true;
}

bool is_strict_linear_order_alt(const Graph& g) {
  int n = g.num_nodes();
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w)
      if (!g.has_edge(u, w) && !g.has_edge(w, u)) return false;
  std::set<size_t> degrees;
  for (int v = 0; v < n; ++v) degrees.insert(g.out_neighbors(v).size());
  return static_cast<int>(degrees.size()) == n;
}

json graph_to_json(const Graph& g) {
  bool directed = !is_undirected(g);
  json edges = json::array();
  for (auto [u, w] : g.edges()) {
    if (!directed && u > w) continue;
    edges.push_back(json::array({u, w}));
  }
  json labels = json::array();
  for (const auto& lab : g.labels()) {
    json row = json::array();
    for (uint8_t bit : lab) row.push_back(static_cast<int>(bit));
    labels.push_back(std::move(row));
  }
  json j;
  j["directed"] = directed;
  j["dimension"] = g.dimension();
  j["num_nodes"] = g.num_nodes();
  j["labels"] = std::move(labels);
  j["edges"] = std::move(edges);
  return j;
}

Graph graph_from_json(const json& j) {
  require(j.is_object(), "graph json must be an object");
  for (const char* key : {"directed", "dimension", "num_nodes", "labels", "edges"})
    require(j.contains(key), std::string("graph json missing key: ") + key);
  require(j["directed"].is_boolean(), "directed must be a boolean");
  require(j["num_nodes"].is_number_integer(), "num_nodes must be an integer");
  require(j["dimension"].is_number_integer(), "dimension must be an integer");
  require(j["labels"].is_array(), "labels must be an array");
  require(j["edges"].is_array(), "edges must be an array");
  bool directed = j["directed"].get<bool>();
  int num_nodes = j["num_nodes"].get<int>();
  int dimension = j["dimension"].get<int>();
  std::vector<std::vector<uint8_t>> labels;
  for (const auto& row : j["labels"]) {
    require(row.is_array(), "label rows must be arrays");
    std::vector<uint8_t> lab;
    for (const auto& bit : row) {
      require(bit.is_number_integer(), "label bits must be integers");
      int b = bit.get<int>();
      require(b == 0 || b == 1, "label bits must be 0 or 1");
      lab.push_back(static_cast<uint8_t>(b));
    }
    labels.push_back(std::move(lab));
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    require(e.is_array() && e.size() == 2, "edges must be pairs");
    require(e[0].is_number_integer() && e[1].is_number_integer(),
            "edge endpoints must be integers");
    int u = e[0].get<int>();
    int w = e[1].get<int>();
    edges.emplace_back(u, w);
    if (!directed) {
      require(u < w, "undirected edges must be stored once with u < w");
      edges.emplace_back(w, u);
    }
  }
  return Graph(num_nodes, dimension, std::move(labels), std::move(edges));
}

std::string serialize_graph(const Graph& g) { return graph_to_json(g).dump(2); }

Graph parse_graph(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid graph json: ") + e.what());
  }
  return graph_from_json(j);
}

}  // namespace c2wl
