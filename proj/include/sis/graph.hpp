#ifndef SIS_GRAPH_HPP
#define SIS_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sis/rational.hpp"

namespace sis {

using NodeId = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raised for malformed input or graphs that violate the simple/connected
/// assumptions. `line()` is set when the error comes from a parsed file.
class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what, std::optional<std::size_t> line = std::nullopt);
  std::optional<std::size_t> line() const { return line_; }

 private:
  std::optional<std::size_t> line_;
};

/// Immutable simple, undirected, connected graph on nodes 0..N-1.
class Graph {
 public:
  /// Validates the edge set; throws GraphError on self-loops, duplicate
  /// edges, out-of-range endpoints or a disconnected result.
  Graph(std::size_t node_count, std::vector<Edge> edges, std::string name = {},
        std::vector<std::string> labels = {});

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId i) const { return adjacency_.at(i); }
  std::size_t degree(NodeId i) const { return adjacency_.at(i).size(); }
  bool has_edge(NodeId a, NodeId b) const;

  const std::string& name() const { return name_; }
  /// Original node tokens, indexed by dense id. Empty for generated graphs.
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(NodeId i) const;

  /// Per-node neighbor bitmasks; only valid for N <= 64.
  const std::vector<std::uint64_t>& adjacency_masks() const;

  /// Stable hash of (N, edge list); identifies the state space of a distribution.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::uint64_t> masks_;
  std::string name_;
  std::vector<std::string> labels_;
  std::uint64_t fingerprint_ = 0;
};

/// Network state: one bit per agent, 1 = infected.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<std::uint8_t> bits);

  static Configuration zeros(std::size_t n) { return Configuration(std::vector<std::uint8_t>(n, 0)); }
  static Configuration ones(std::size_t n) { return Configuration(std::vector<std::uint8_t>(n, 1)); }
  /// Bit i of `state` is the state of node i.
  static Configuration from_state(std::uint64_t state, std::size_t n);
  static Configuration from_nodes(std::size_t n, std::span<const NodeId> infected);
  /// Parses a bit string with node 0 leftmost, e.g. "0110".
  static Configuration parse(const std::string& bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool infected) { bits_.at(i) = infected ? 1 : 0; }

  std::size_t infected_count() const;
  std::vector<NodeId> infected_nodes() const;
  bool all_zero() const { return infected_count() == 0; }
  bool all_one() const { return infected_count() == size(); }

  /// Inverse of from_state; requires size() <= 64.
  std::uint64_t to_state() const;
  /// Node 0 leftmost.
  std::string to_string() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Subgraph induced by a node set, with its exact density |E(H)|/|V(H)|.
struct InducedSubgraph {
  std::vector<NodeId> nodes;
  std::size_t edge_count = 0;
  Rational density;
};

/// Reads the whitespace edge-list format: two node tokens per line, '#'
/// comments, blank lines skipped. Tokens are relabeled to dense ids in
/// order of first appearance.
Graph load_edge_list(std::istream& in, std::string name = {});
Graph load_edge_list_file(const std::string& path);

/// x^T A x / 2.
std::size_t infected_edge_count(const Graph& g, const Configuration& x);
InducedSubgraph induced_subgraph(const Graph& g, const Configuration& x);
InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// |E| / |V|.
Rational graph_density(const Graph& g);

std::size_t count_components(std::size_t node_count, std::span<const Edge> edges);

/// Returns a copy of g with node i renamed to perm[i].
Graph relabel(const Graph& g, std::span<const NodeId> perm);

}  // namespace sis

#endif
