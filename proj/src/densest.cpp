#include "sis/densest.hpp"

#include <set>

#include "sis/maxflow.hpp"

namespace sis {

namespace {

struct CutOutcome {
  std::int64_t value = 0;  // max_S sum_{v in S} w_v - b cut(S)
  std::vector<bool> minimal;
  std::vector<bool> maximal;
};

// max_S 2b(e(S) - (a/b)|S|) over node sets S.
CutOutcome solve_parametric(const Graph& g, const Rational& density) {
  const std::size_t n = g.node_count();
  const std::int64_t a = density.num();
  const std::int64_t b = density.den();
  const std::size_t source = n;
  const std::size_t sink = n + 1;

  MaxFlow<std::int64_t> flow(n + 2);
  std::int64_t positive = 0;
  for (NodeId v = 0; v < n; ++v) {
    const std::int64_t w = static_cast<std::int64_t>(g.degree(v)) * b - 2 * a;
    if (w > 0) {
      flow.add_edge(source, v, w);
      positive += w;
    } else if (w < 0) {
      flow.add_edge(v, sink, -w);
    }
  }
  for (const Edge& e : g.edges()) flow.add_edge(e.u, e.v, b, b);
  const std::int64_t cut = flow.solve(source, sink);

  CutOutcome out;
  out.value = positive - cut;
  const auto from_source = flow.reachable_from(source);
  const auto to_sink = flow.reaching(sink);
  out.minimal.assign(n, false);
  out.maximal.assign(n, false);
  for (NodeId v = 0; v < n; ++v) {
    out.minimal[v] = from_source[v];
    out.maximal[v] = !to_sink[v];
  }
  return out;
}

std::vector<NodeId> members(const std::vector<bool>& in) {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v]) out.push_back(static_cast<NodeId>(v));
  return out;
}

}  // namespace

InducedSubgraph densest_subgraph_exact(const Graph& g) {
  Rational best = graph_density(g);
  while (true) {
    const CutOutcome outcome = solve_parametric(g, best);
    if (outcome.value <= 0) {
      InducedSubgraph h = induced_subgraph(g, members(outcome.maximal));
      if (h.nodes.empty() || h.density != best)
        throw std::logic_error("densest subgraph extraction inconsistent");
      return h;
    }
    const InducedSubgraph improved = induced_subgraph(g, members(outcome.minimal));
    if (!(improved.density > best)) throw std::logic_error("densest subgraph search stalled");
    best = improved.density;
  }
}

std::vector<NodeId> peeling_order(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> degree(n);
  std::set<std::pair<std::size_t, NodeId>> queue;
  for (NodeId v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    queue.insert({degree[v], v});
  }
  std::vector<bool> removed(n, false);
  std::vector<NodeId> order;
  order.reserve(n);
  while (!queue.empty()) {
    const NodeId v = queue.begin()->second;
    queue.erase(queue.begin());
    removed[v] = true;
    order.push_back(v);
    for (NodeId u : g.neighbors(v)) {
      if (removed[u]) continue;
      queue.erase({degree[u], u});
      --degree[u];
      queue.insert({degree[u], u});
    }
  }
  return order;
}

InducedSubgraph densest_subgraph_peel(const Graph& g) {
  const std::vector<NodeId> order = peeling_order(g);
  const std::size_t n = g.node_count();

  // Edges remaining after removing the first k nodes.
  std::vector<bool> removed(n, false);
  std::size_t edges_left = g.edge_count();
  Rational best = graph_density(g);
  std::size_t best_removed = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const NodeId v = order[k];
    for (NodeId u : g.neighbors(v))
      if (!removed[u]) --edges_left;
    removed[v] = true;
    const Rational d(static_cast<std::int64_t>(edges_left), static_cast<std::int64_t>(n - k - 1));
    if (d > best) {
      best = d;
      best_removed = k + 1;
    }
  }
  std::vector<NodeId> keep(order.begin() + static_cast<std::ptrdiff_t>(best_removed), order.end());
  return induced_subgraph(g, keep);
}

}  // namespace sis
