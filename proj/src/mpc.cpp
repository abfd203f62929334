#include "sis/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sis/kernels.hpp"
#include "sis/maxflow.hpp"

namespace sis {

namespace {

SolverResult make_result(const Graph& g, const EpidemicParams& p, Configuration x,
                         SolverMethod method, TiePolicy tie) {
  SolverResult r;
  r.infected_count = x.infected_count();
  r.infected_edges = infected_edge_count(g, x);
  r.log_value = log_weight(p, r.infected_count, r.infected_edges);
  r.degeneracy = classify_degeneracy(x);
  r.configuration = std::move(x);
  r.method = method;
  r.tie_policy = tie;
  r.lambda_over_mu = p.effective_rate();
  r.gamma = p.gamma();
  return r;
}

bool gamma_below_one(const EpidemicParams& p) {
  if (p.exact_gamma()) return *p.exact_gamma() < Rational(1);
  return p.gamma() < 1.0;
}

std::vector<bool> membership(const Graph& g, std::span<const NodeId> s) {
  std::vector<bool> in(g.node_count(), false);
  for (NodeId v : s) {
    if (v >= g.node_count()) throw std::invalid_argument("node " + std::to_string(v) + " out of range");
    in[v] = true;
  }
  return in;
}

std::size_t edges_within(const Graph& g, const std::vector<bool>& in) {
  std::size_t count = 0;
  for (const Edge& e : g.edges())
    if (in[e.u] && in[e.v]) ++count;
  return count;
}

}  // namespace

std::string to_string(TiePolicy t) { return t == TiePolicy::minimal ? "minimal" : "maximal"; }

std::string to_string(SolverMethod m) { return m == SolverMethod::mincut ? "mincut" : "bruteforce"; }

std::string to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::all_zero: return "all_zero";
    case Degeneracy::all_one: return "all_one";
    case Degeneracy::non_degenerate: return "non_degenerate";
  }
  return "?";
}

TiePolicy parse_tie_policy(const std::string& text) {
  if (text == "minimal") return TiePolicy::minimal;
  if (text == "maximal") return TiePolicy::maximal;
  throw std::invalid_argument("tie policy must be 'minimal' or 'maximal', got '" + text + "'");
}

Degeneracy classify_degeneracy(const Configuration& x) {
  const std::size_t k = x.infected_count();
  if (k == 0) return Degeneracy::all_zero;
  if (k == x.size()) return Degeneracy::all_one;
  return Degeneracy::non_degenerate;
}

double neg_log_g(const Graph& g, const EpidemicParams& p, std::span<const NodeId> s) {
  const auto in = membership(g, s);
  const auto size = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  return -log_weight(p, size, edges_within(g, in));
}

MarginalGain marginal_gain(const Graph& g, std::span<const NodeId> base_set, NodeId added_node) {
  const auto in = membership(g, base_set);
  if (added_node >= g.node_count()) throw std::invalid_argument("added node out of range");
  MarginalGain gain;
  gain.base_set.assign(base_set.begin(), base_set.end());
  gain.added_node = added_node;
  for (NodeId j : g.neighbors(added_node))
    if (in[j]) ++gain.new_infected_edges;
  return gain;
}

SubmodularCheck check_submodular_inequality(const Graph& g, const EpidemicParams& p,
                                            std::span<const NodeId> a1, std::span<const NodeId> a2,
                                            NodeId i) {
  if (gamma_below_one(p))
    throw std::invalid_argument("submodularity is only guaranteed for gamma >= 1");
  const auto in1 = membership(g, a1);
  const auto in2 = membership(g, a2);
  if (i >= g.node_count()) throw std::invalid_argument("node i out of range");
  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (in2[v] && !in1[v]) throw std::invalid_argument("a2 is not a subset of a1");
  if (in1[i]) throw std::invalid_argument("node i already belongs to a1");

  std::vector<NodeId> a1_plus(a1.begin(), a1.end());
  std::vector<NodeId> a2_plus(a2.begin(), a2.end());
  a1_plus.push_back(i);
  a2_plus.push_back(i);

  SubmodularCheck c;
  c.lhs = neg_log_g(g, p, a1_plus) - neg_log_g(g, p, a1);
  c.rhs = neg_log_g(g, p, a2_plus) - neg_log_g(g, p, a2);
  c.n1 = static_cast<std::size_t>(std::count(in1.begin(), in1.end(), true));
  c.n2 = static_cast<std::size_t>(std::count(in2.begin(), in2.end(), true));
  c.e1 = edges_within(g, in1);
  c.e2 = edges_within(g, in2);
  c.m1 = marginal_gain(g, a1, i).new_infected_edges;
  c.m2 = marginal_gain(g, a2, i).new_infected_edges;
  c.counts_ordered = c.n1 >= c.n2 && c.e1 >= c.e2 && c.m1 >= c.m2;
  const double slack = 1e-9 * (1.0 + std::abs(c.lhs) + std::abs(c.rhs));
  c.holds = c.lhs <= c.rhs + slack;
  return c;
}

SolverResult solve_mpc_mincut(const Graph& g, const EpidemicParams& p, TiePolicy tie) {
  if (gamma_below_one(p))
    throw RegimeError("exact min-cut solver requires gamma >= 1 (got gamma = " +
                      std::to_string(p.gamma()) + ")");

  // Maximize f(S) = a|S| + b e(S). With e(S) = (sum_{i in S} deg i - cut(S)) / 2
  // this is sum_{i in S} w_i - (b/2) cut(S), w_i = a + (b/2) deg i.
  const std::size_t n = g.node_count();
  const double a = p.log_ratio();
  const double half_b = p.log_gamma() / 2.0;

  std::vector<double> weight(n);
  double scale = 1.0;
  for (NodeId i = 0; i < n; ++i) {
    weight[i] = a + half_b * static_cast<double>(g.degree(i));
    scale += std::abs(weight[i]);
  }
  scale += half_b * 2.0 * static_cast<double>(g.edge_count());
  const double epsilon = 1e-12 * scale;
  for (double& w : weight)
    if (!std::isfinite(w)) throw std::domain_error("non-finite node weight in cut network");

  const std::size_t source = n;
  const std::size_t sink = n + 1;
  MaxFlow<double> flow(n + 2, epsilon);
  for (NodeId i = 0; i < n; ++i) {
    if (weight[i] > epsilon) flow.add_edge(source, i, weight[i]);
    else if (weight[i] < -epsilon) flow.add_edge(i, sink, -weight[i]);
  }
  if (half_b > 0.0)
    for (const Edge& e : g.edges()) flow.add_edge(e.u, e.v, half_b, half_b);
  flow.solve(source, sink);

  std::vector<std::uint8_t> bits(n, 0);
  if (tie == TiePolicy::minimal) {
    const auto side = flow.reachable_from(source);
    for (NodeId i = 0; i < n; ++i) bits[i] = side[i];
  } else {
    const auto to_sink = flow.reaching(sink);
    for (NodeId i = 0; i < n; ++i) bits[i] = !to_sink[i];
  }
  return make_result(g, p, Configuration(std::move(bits)), SolverMethod::mincut, tie);
}

std::vector<std::uint8_t> best_pairs(const EpidemicParams& p, std::size_t node_count,
                                     std::size_t edge_count, std::span<const std::uint8_t> attained) {
  const std::size_t stride = edge_count + 1;
  std::optional<std::pair<std::int64_t, std::int64_t>> best;
  for (std::size_t n = 0; n <= node_count; ++n) {
    for (std::size_t e = 0; e <= edge_count; ++e) {
      if (!attained[n * stride + e]) continue;
      const auto cand = std::pair(static_cast<std::int64_t>(n), static_cast<std::int64_t>(e));
      if (!best || log_weight_sign(p, cand.first - best->first, cand.second - best->second) > 0)
        best = cand;
    }
  }
  std::vector<std::uint8_t> winners(attained.size(), 0);
  if (!best) return winners;
  for (std::size_t n = 0; n <= node_count; ++n)
    for (std::size_t e = 0; e <= edge_count; ++e)
      if (attained[n * stride + e] &&
          log_weight_sign(p, static_cast<std::int64_t>(n) - best->first,
                          static_cast<std::int64_t>(e) - best->second) == 0)
        winners[n * stride + e] = 1;
  return winners;
}

SolverResult solve_mpc_bruteforce(const Graph& g, const EpidemicParams& p, TiePolicy tie,
                                  std::size_t limit) {
  check_enumeration_limit(g, limit);
  const auto& adj = g.adjacency_masks();
  const auto attained = kernels::attained_pairs_parallel(adj, g.edge_count());
  const auto winners = best_pairs(p, g.node_count(), g.edge_count(), attained);
  const auto state = kernels::select_state_parallel(
      adj, g.edge_count(), winners,
      tie == TiePolicy::minimal ? kernels::Extreme::fewest : kernels::Extreme::most);
  if (!state) throw std::logic_error("brute force found no maximizer");
  return make_result(g, p, Configuration::from_state(*state, g.node_count()),
                     SolverMethod::bruteforce, tie);
}

bool SweepResult::all_succeeded() const {
  return std::all_of(points.begin(), points.end(),
                     [](const SweepPoint& pt) { return pt.result.has_value(); });
}

std::vector<PhaseBoundary> find_boundaries(
    std::span<const SweepPoint> points,
    std::span<const std::pair<std::size_t, std::size_t>> adjacent) {
  std::vector<PhaseBoundary> out;
  for (const auto& [before, after] : adjacent) {
    const auto& a = points[before].result;
    const auto& b = points[after].result;
    if (a && b && a->degeneracy != b->degeneracy)
      out.push_back({before, after, a->degeneracy, b->degeneracy});
  }
  return out;
}

SweepResult sweep(const Graph& g, std::span<const EpidemicParams> grid, TiePolicy tie) {
  SweepResult out;
  out.points.reserve(grid.size());
  for (const auto& params : grid) out.points.push_back({params, std::nullopt, {}});

  const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::int64_t k = 0; k < count; ++k) {
    auto& point = out.points[static_cast<std::size_t>(k)];
    try {
      point.result = solve_mpc_mincut(g, point.params, tie);
    } catch (const std::exception& e) {
      point.error = e.what();
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> adjacent;
  for (std::size_t k = 1; k < grid.size(); ++k) adjacent.emplace_back(k - 1, k);
  out.boundaries = find_boundaries(out.points, adjacent);
  return out;
}

}  // namespace sis
