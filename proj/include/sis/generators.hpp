#ifndef SIS_GENERATORS_HPP
#define SIS_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sis/graph.hpp"

namespace sis {

struct KRegular {
  std::size_t n = 0;
  std::size_t k = 0;
};

struct CompleteMultipartite {
  std::vector<std::size_t> parts;
};

/// Complete multipartite graph with a k-regular circulant inside every part.
struct MultipartiteIslands {
  std::vector<std::size_t> parts;
  std::size_t k = 0;
};

using StructuredSpec = std::variant<KRegular, CompleteMultipartite, MultipartiteIslands>;

/// Builds a member of one of the structured families. Topologies are
/// deterministic circulants; a non-zero seed additionally applies a seeded
/// random node permutation. Throws GraphError naming the violated condition
/// when the parameters are not realizable as a connected graph.
Graph generate_structured(const StructuredSpec& spec, std::uint64_t seed = 0);

// Fixture families used by tests and the CLI --gen option.
Graph make_complete(std::size_t n);
Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
/// Hub 0 with leaves 1..leaves.
Graph make_star(std::size_t leaves);
/// K_clique on nodes 0..clique-1 plus a path of `tail` nodes hanging off
/// node clique-1.
Graph make_clique_with_tail(std::size_t clique, std::size_t tail);
/// Uniform random spanning tree (random attachment) plus extra random edges
/// until `edges` edges exist.
Graph make_random_connected(std::size_t n, std::size_t edges, std::uint64_t seed);

/// Parses a generator spec:
///   complete:N  path:N  cycle:N  star:LEAVES  clique_tail:K:T
///   kregular:N:K  multipartite:A,B,...  islands:A,B,...:K
///   random:N:M:SEED
Graph generate_from_spec(const std::string& spec);

}  // namespace sis

#endif
