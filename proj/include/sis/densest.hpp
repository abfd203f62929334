#ifndef SIS_DENSEST_HPP
#define SIS_DENSEST_HPP

#include <vector>

#include "sis/graph.hpp"

namespace sis {

/// Exact densest induced subgraph (max |E(H)|/|V(H)|).
///
/// Parametric min-cut: for a candidate density a/b the integer network
/// with node weights b*deg(v) - 2a and edge arcs of capacity b has positive
/// optimum iff some subgraph is denser than a/b. Starting from d(G), each
/// improving set's density becomes the next candidate until no subgraph
/// beats it. Among densest subgraphs the largest (their union) is returned.
InducedSubgraph densest_subgraph_exact(const Graph& g);

/// Greedy min-degree peeling; returns the densest suffix of the removal
/// order. Density is at least half the optimum.
InducedSubgraph densest_subgraph_peel(const Graph& g);

/// Order in which peeling removes nodes (lowest current degree first,
/// smallest id on ties).
std::vector<NodeId> peeling_order(const Graph& g);

}  // namespace sis

#endif
