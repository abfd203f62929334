#include "sis/conditions.hpp"

#include <cmath>
#include <limits>

#include "sis/densest.hpp"
#include "sis/kernels.hpp"

namespace sis {

namespace {

int compare_to_one(const std::optional<Rational>& exact, double value) {
  if (exact) return *exact == Rational(1) ? 0 : (*exact > Rational(1) ? 1 : -1);
  if (value == 1.0) return 0;
  return value > 1.0 ? 1 : -1;
}

void require_regime_two(const EpidemicParams& p) {
  if (compare_to_one(p.exact_gamma(), p.gamma()) < 0 ||
      compare_to_one(p.exact_ratio(), p.effective_rate()) > 0)
    throw RegimeError("structural conditions need 0 < lambda/mu <= 1 and gamma >= 1");
}

double log_threshold(const EpidemicParams& p, const Rational& density) {
  return p.log_ratio() + density.to_double() * p.log_gamma();
}

struct Candidate {
  std::int64_t n = 0;
  std::int64_t e = 0;
  std::vector<NodeId> nodes;
};

// Prefers the higher stationary weight; keeps the incumbent on ties.
bool heavier(const EpidemicParams& p, const Candidate& a, const Candidate& b) {
  return log_weight_sign(p, a.n - b.n, a.e - b.e) > 0;
}

Candidate candidate_of(const Graph& g, std::vector<NodeId> nodes) {
  const InducedSubgraph h = induced_subgraph(g, nodes);
  return {static_cast<std::int64_t>(h.nodes.size()), static_cast<std::int64_t>(h.edge_count),
          h.nodes};
}

// Heaviest proper induced subgraph found by exhaustive enumeration.
Candidate heaviest_proper_exhaustive(const Graph& g, const EpidemicParams& p) {
  const auto& adj = g.adjacency_masks();
  const std::size_t n = g.node_count(), m = g.edge_count();
  auto attained = kernels::attained_pairs_parallel(adj, m);
  attained[n * (m + 1) + m] = 0;
  const auto winners = best_pairs(p, n, m, attained);
  const auto state = kernels::select_state_parallel(adj, m, winners, kernels::Extreme::fewest);
  if (!state) throw std::logic_error("no proper subgraph found");
  return candidate_of(g, Configuration::from_state(*state, n).infected_nodes());
}

// Heaviest proper subgraph among a polynomial candidate family.
Candidate heaviest_proper_heuristic(const Graph& g, const EpidemicParams& p,
                                    const InducedSubgraph& densest) {
  const std::size_t n = g.node_count();
  std::optional<Candidate> best;
  auto offer = [&](std::vector<NodeId> nodes) {
    if (nodes.size() == n) return;
    Candidate c = candidate_of(g, std::move(nodes));
    if (!best || heavier(p, c, *best)) best = std::move(c);
  };
  offer({});
  offer(densest.nodes);
  const auto order = peeling_order(g);
  for (std::size_t k = 1; k < n; ++k)
    offer(std::vector<NodeId>(order.begin() + static_cast<std::ptrdiff_t>(k), order.end()));
  offer(solve_mpc_mincut(g, p, TiePolicy::minimal).configuration.infected_nodes());
  offer(solve_mpc_mincut(g, p, TiePolicy::maximal).configuration.infected_nodes());
  return *best;
}

ConditionReport dense_report(const Graph& g, const EpidemicParams& p, const InducedSubgraph& densest,
                             ConditionName name) {
  ConditionReport r;
  r.name = name;
  r.exact = p.is_exact();
  // sign of b ln r + a ln gamma  for  d = a/b
  const int sign = log_weight_sign(p, densest.density.den(), densest.density.num());
  r.on_boundary = sign == 0;
  r.lhs = log_threshold(p, densest.density);
  r.rhs = 0.0;
  const bool dense_enough = sign > 0;
  if (name == ConditionName::cor_x0) {
    r.verdict = dense_enough ? Verdict::fails : Verdict::holds;
    r.detail = "log(lambda/mu * gamma^d(densest)) <= 0 with d(densest) = " +
               densest.density.to_string();
  } else {
    r.verdict = dense_enough ? Verdict::holds : Verdict::fails;
    r.detail = "exists H with log(lambda/mu * gamma^d(H)) > 0; d(densest) = " +
               densest.density.to_string();
    if (dense_enough) r.witness = densest;
  }
  (void)g;
  return r;
}

ConditionReport xn_report(const Graph& g, const EpidemicParams& p, const InducedSubgraph& densest,
                          const ConditionOptions& opts) {
  const Rational dg = graph_density(g);
  const auto n = static_cast<std::int64_t>(g.node_count());
  const auto m = static_cast<std::int64_t>(g.edge_count());
  ConditionReport r;
  r.exact = p.is_exact();

  if (densest.density == dg) {
    r.name = ConditionName::thm3_case1;
    const int sign = log_weight_sign(p, n, m);
    r.on_boundary = sign == 0;
    r.lhs = log_threshold(p, dg);
    r.rhs = 0.0;
    r.verdict = sign <= 0 ? Verdict::holds : Verdict::fails;
    r.detail = "densest subgraph has the network density " + dg.to_string() +
               "; x* != x^N iff log(lambda/mu * gamma^d(G)) <= 0";
    return r;
  }

  r.name = ConditionName::thm3_case2;
  const bool exhaustive = g.node_count() <= std::min(opts.enumeration_limit, kMaxEnumerationLimit);
  const Candidate best =
      exhaustive ? heaviest_proper_exhaustive(g, p) : heaviest_proper_heuristic(g, p, densest);
  const InducedSubgraph h = induced_subgraph(g, best.nodes);

  const double numerator = log_threshold(p, dg);
  const double denominator = h.nodes.empty() ? p.log_ratio() : log_threshold(p, h.density);
  r.lhs = numerator / denominator;
  r.rhs = static_cast<double>(h.nodes.size()) / static_cast<double>(n);

  // N' log(r gamma^d(H)) > N log(r gamma^d(G))  <=>  r^(N'-N) gamma^(E'-E) > 1
  const int sign = log_weight_sign(p, best.n - n, best.e - m);
  r.on_boundary = sign == 0;
  if (sign > 0) {
    r.verdict = Verdict::holds;
    r.witness = h;
  } else {
    r.verdict = exhaustive ? Verdict::fails : Verdict::unknown;
  }
  r.detail = std::string(exhaustive ? "exhaustive" : "candidate-family") +
             " witness search; best proper subgraph has " + std::to_string(h.nodes.size()) +
             " nodes, density " + h.density.to_string();
  return r;
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
    case Regime::IV: return "IV";
    case Regime::boundary: return "boundary";
  }
  return "?";
}

RegimeLabel classify_regime(const EpidemicParams& p) {
  const int ratio = compare_to_one(p.exact_ratio(), p.effective_rate());
  const int gamma = compare_to_one(p.exact_gamma(), p.gamma());
  if (gamma == 0) return {Regime::boundary, "gamma = 1"};
  if (ratio <= 0)
    return gamma > 0 ? RegimeLabel{Regime::II, "0 < lambda/mu <= 1, gamma > 1"}
                     : RegimeLabel{Regime::I, "0 < lambda/mu <= 1, 0 < gamma < 1"};
  return gamma > 0 ? RegimeLabel{Regime::IV, "lambda/mu > 1, gamma > 1"}
                   : RegimeLabel{Regime::III, "lambda/mu > 1, 0 < gamma < 1"};
}

std::string to_string(ConditionName c) {
  switch (c) {
    case ConditionName::thm2_exists_dense_subgraph: return "thm2_exists_dense_subgraph";
    case ConditionName::thm3_case1: return "thm3_case1";
    case ConditionName::thm3_case2: return "thm3_case2";
    case ConditionName::cor_nondegenerate: return "cor_nondegenerate";
    case ConditionName::cor_x0: return "cor_x0";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

ConditionReport check_x0_condition(const Graph& g, const EpidemicParams& p,
                                   const ConditionOptions&) {
  require_regime_two(p);
  return dense_report(g, p, densest_subgraph_exact(g), ConditionName::cor_x0);
}

ConditionReport check_dense_subgraph_condition(const Graph& g, const EpidemicParams& p,
                                               const ConditionOptions&) {
  require_regime_two(p);
  return dense_report(g, p, densest_subgraph_exact(g), ConditionName::thm2_exists_dense_subgraph);
}

ConditionReport check_xN_condition(const Graph& g, const EpidemicParams& p,
                                   const ConditionOptions& opts) {
  require_regime_two(p);
  return xn_report(g, p, densest_subgraph_exact(g), opts);
}

ConditionReport check_nondegenerate_condition(const Graph& g, const EpidemicParams& p,
                                              const ConditionOptions& opts) {
  require_regime_two(p);
  const InducedSubgraph densest = densest_subgraph_exact(g);
  const ConditionReport dense =
      dense_report(g, p, densest, ConditionName::thm2_exists_dense_subgraph);
  const ConditionReport xn = xn_report(g, p, densest, opts);

  ConditionReport r;
  r.name = ConditionName::cor_nondegenerate;
  r.exact = p.is_exact();
  r.lhs = xn.lhs;
  r.rhs = xn.rhs;
  r.on_boundary = dense.on_boundary || xn.on_boundary;
  if (!dense.holds() || xn.verdict == Verdict::fails) {
    r.verdict = Verdict::fails;
  } else if (xn.verdict == Verdict::unknown) {
    r.verdict = Verdict::unknown;
  } else {
    r.verdict = Verdict::holds;
    r.witness = xn.witness ? xn.witness : dense.witness;
  }
  r.detail = "dense subgraph: " + to_string(dense.verdict) + "; x^N witness (" +
             to_string(xn.name) + "): " + to_string(xn.verdict);
  return r;
}

StructuredCheck check_structured_densest(const Graph& g) {
  StructuredCheck c;
  c.graph_density = graph_density(g);
  const InducedSubgraph densest = densest_subgraph_exact(g);
  c.densest_density = densest.density;
  c.holds = densest.density == c.graph_density;
  if (!c.holds) c.witness = densest;

  if (g.node_count() <= 20) {
    c.enumerated = true;
    const auto& adj = g.adjacency_masks();
    const auto n = static_cast<std::int64_t>(g.node_count());
    const auto m = static_cast<std::int64_t>(g.edge_count());
    const std::uint64_t total = std::uint64_t{1} << g.node_count();
    for (std::uint64_t s = 1; s < total; ++s) {
      const std::int64_t edges = kernels::edges_inside(adj, s);
      if (edges * n > m * std::popcount(s)) {
        c.holds = false;
        if (!c.witness)
          c.witness = induced_subgraph(g, Configuration::from_state(s, g.node_count()));
        break;
      }
    }
  }
  return c;
}

ConditionAudit audit_conditions(const Graph& g, const EpidemicParams& p,
                                const ConditionOptions& opts) {
  require_regime_two(p);
  ConditionAudit audit;
  audit.regime = classify_regime(p);

  const InducedSubgraph densest = densest_subgraph_exact(g);
  const ConditionReport dense =
      dense_report(g, p, densest, ConditionName::thm2_exists_dense_subgraph);
  const ConditionReport x0 = dense_report(g, p, densest, ConditionName::cor_x0);
  const ConditionReport xn = xn_report(g, p, densest, opts);
  const ConditionReport nondeg = check_nondegenerate_condition(g, p, opts);
  audit.reports = {dense, x0, xn, nondeg};

  audit.minimal = solve_mpc_mincut(g, p, TiePolicy::minimal);
  audit.maximal = solve_mpc_mincut(g, p, TiePolicy::maximal);
  const bool x0_optimal = audit.minimal.degeneracy == Degeneracy::all_zero;
  const bool xn_optimal = audit.maximal.degeneracy == Degeneracy::all_one;

  bool ok = true;
  auto expect = [&](bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      audit.notes.push_back("inconsistent: " + what);
    }
  };

  expect(x0.holds() == x0_optimal, "x^0 condition vs minimal maximizer");
  expect(dense.holds() != x0_optimal, "dense-subgraph condition vs minimal maximizer");
  if (xn.verdict == Verdict::holds) {
    if (xn.name == ConditionName::thm3_case1 && xn.on_boundary) {
      expect(audit.minimal.degeneracy != Degeneracy::all_one,
             "x^N condition (boundary tie) vs minimal maximizer");
      audit.notes.push_back("x^N ties with x^0 on the case-1 boundary");
    } else {
      expect(!xn_optimal, "x^N condition vs maximal maximizer");
    }
  } else if (xn.verdict == Verdict::fails) {
    expect(xn_optimal, "x^N condition vs maximal maximizer");
  } else {
    audit.notes.push_back("x^N witness search inconclusive at this size");
  }
  if (nondeg.verdict == Verdict::holds) {
    expect(audit.minimal.degeneracy == Degeneracy::non_degenerate &&
               audit.maximal.degeneracy == Degeneracy::non_degenerate,
           "non-degenerate prediction vs both maximizers");
  } else if (nondeg.verdict == Verdict::fails) {
    expect(x0_optimal || xn_optimal, "degenerate prediction vs maximizers");
  }

  if (x0.holds() && xn.verdict == Verdict::fails) audit.predicted = "x0|xN";
  else if (x0.holds()) audit.predicted = "x0";
  else if (xn.verdict == Verdict::fails) audit.predicted = "xN";
  else if (nondeg.holds()) audit.predicted = "non_degenerate";
  else audit.predicted = "unknown";

  audit.consistent = ok;
  return audit;
}

}  // namespace sis
