#include "sis/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace sis {

namespace {

void check_length(const Graph& g, const Configuration& x) {
  if (x.size() != g.node_count())
    throw std::invalid_argument("configuration length " + std::to_string(x.size()) +
                                " does not match node count " + std::to_string(g.node_count()));
}

// FNV-1a over the node count and the sorted edge list.
std::uint64_t hash_graph(std::size_t n, const std::vector<Edge>& edges) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int k = 0; k < 8; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ULL;
    }
  };
  mix(n);
  for (const Edge& e : edges) {
    mix(e.u);
    mix(e.v);
  }
  return h;
}

}  // namespace

GraphError::GraphError(const std::string& what, std::optional<std::size_t> line)
    : std::runtime_error(line ? "line " + std::to_string(*line) + ": " + what : what),
      line_(line) {}

Graph::Graph(std::size_t node_count, std::vector<Edge> edges, std::string name,
             std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (node_count == 0) throw GraphError("graph has no nodes");
  if (!labels_.empty() && labels_.size() != node_count)
    throw GraphError("label count does not match node count");

  for (Edge& e : edges) {
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= node_count)
      throw GraphError("edge endpoint " + std::to_string(e.v) + " out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
    throw GraphError("duplicate edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));

  const std::size_t components = count_components(node_count, edges);
  if (components != 1)
    throw GraphError("graph is disconnected (" + std::to_string(components) + " components)");

  edges_ = std::move(edges);
  adjacency_.resize(node_count);
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  if (node_count <= 64) {
    masks_.assign(node_count, 0);
    for (const Edge& e : edges_) {
      masks_[e.u] |= std::uint64_t{1} << e.v;
      masks_[e.v] |= std::uint64_t{1} << e.u;
    }
  }
  fingerprint_ = hash_graph(node_count, edges_);
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  const auto nbrs = neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::string Graph::label(NodeId i) const {
  return labels_.empty() ? std::to_string(i) : labels_.at(i);
}

const std::vector<std::uint64_t>& Graph::adjacency_masks() const {
  if (node_count() > 64) throw std::logic_error("adjacency masks need N <= 64");
  return masks_;
}

Configuration::Configuration(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

Configuration Configuration::from_state(std::uint64_t state, std::size_t n) {
  if (n > 64) throw std::invalid_argument("state integers hold at most 64 agents");
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = (state >> i) & 1u;
  return Configuration(std::move(bits));
}

Configuration Configuration::from_nodes(std::size_t n, std::span<const NodeId> infected) {
  std::vector<std::uint8_t> bits(n, 0);
  for (NodeId i : infected) bits.at(i) = 1;
  return Configuration(std::move(bits));
}

Configuration Configuration::parse(const std::string& text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("configuration must be a 0/1 string");
    bits.push_back(c == '1');
  }
  return Configuration(std::move(bits));
}

std::size_t Configuration::infected_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<NodeId> Configuration::infected_nodes() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<NodeId>(i));
  return out;
}

std::uint64_t Configuration::to_state() const {
  if (bits_.size() > 64) throw std::logic_error("configuration too long for a state integer");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s |= std::uint64_t{1} << i;
  return s;
}

std::string Configuration::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

Graph load_edge_list(std::istream& in, std::string name) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = ids.try_emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b))
      throw GraphError("expected two node tokens, got '" + line + "'", line_no);
    if (fields >> extra)
      throw GraphError("unexpected third token '" + extra + "'", line_no);
    if (a == b) throw GraphError("self-loop at node '" + a + "'", line_no);

    edges.push_back({intern(a), intern(b)});
    edge_lines.push_back(line_no);
  }
  if (edges.empty()) throw GraphError("empty edge list");

  // Report duplicates against the line where they reappear.
  {
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t k) {
      const Edge& e = edges[k];
      return std::pair(std::min(e.u, e.v), std::max(e.u, e.v));
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (key(order[k]) == key(order[k - 1])) {
        const std::size_t later = std::max(edge_lines[order[k]], edge_lines[order[k - 1]]);
        const Edge& e = edges[order[k]];
        throw GraphError("duplicate edge '" + labels[e.u] + "' - '" + labels[e.v] + "'", later);
      }
    }
  }

  const std::size_t n = labels.size();
  return Graph(n, std::move(edges), std::move(name), std::move(labels));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open '" + path + "'");
  return load_edge_list(in, path);
}

std::size_t infected_edge_count(const Graph& g, const Configuration& x) {
  check_length(g, x);
  std::size_t count = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (!x[i]) continue;
    for (NodeId j : g.neighbors(i))
      if (j > i && x[j]) ++count;
  }
  return count;
}

InducedSubgraph induced_subgraph(const Graph& g, const Configuration& x) {
  check_length(g, x);
  InducedSubgraph h;
  h.nodes = x.infected_nodes();
  h.edge_count = infected_edge_count(g, x);
  h.density = h.nodes.empty() ? Rational(0)
                              : Rational(static_cast<std::int64_t>(h.edge_count),
                                         static_cast<std::int64_t>(h.nodes.size()));
  return h;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  return induced_subgraph(g, Configuration::from_nodes(g.node_count(), nodes));
}

Rational graph_density(const Graph& g) {
  return Rational(static_cast<std::int64_t>(g.edge_count()),
                  static_cast<std::int64_t>(g.node_count()));
}

std::size_t count_components(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<std::size_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  std::size_t components = node_count;
  for (const Edge& e : edges) {
    const std::size_t a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

Graph relabel(const Graph& g, std::span<const NodeId> perm) {
  if (perm.size() != g.node_count()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return Graph(g.node_count(), std::move(edges), g.name());
}

}  // namespace sis
