#ifndef SIS_MPC_HPP
#define SIS_MPC_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sis/equilibrium.hpp"
#include "sis/graph.hpp"
#include "sis/params.hpp"

namespace sis {

/// Which optimal configuration to return when the maximizer is not unique.
/// The optimal sets form a lattice; `minimal` and `maximal` are its bottom
/// and top.
enum class TiePolicy { minimal, maximal };
enum class SolverMethod { mincut, bruteforce };
enum class Degeneracy { all_zero, all_one, non_degenerate };

std::string to_string(TiePolicy t);
std::string to_string(SolverMethod m);
std::string to_string(Degeneracy d);
TiePolicy parse_tie_policy(const std::string& text);

Degeneracy classify_degeneracy(const Configuration& x);

/// Thrown when the exact solver is asked to work outside gamma >= 1.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SolverResult {
  Configuration configuration;
  std::size_t infected_count = 0;
  std::size_t infected_edges = 0;
  double log_value = 0.0;
  SolverMethod method = SolverMethod::mincut;
  TiePolicy tie_policy = TiePolicy::maximal;
  Degeneracy degeneracy = Degeneracy::all_zero;
  double lambda_over_mu = 0.0;
  double gamma = 0.0;
};

/// -|s| ln(lambda/mu) - e(s) ln(gamma).
double neg_log_g(const Graph& g, const EpidemicParams& p, std::span<const NodeId> s);

/// Number of neighbors of `added_node` inside `base_set`.
struct MarginalGain {
  std::vector<NodeId> base_set;
  NodeId added_node = 0;
  std::size_t new_infected_edges = 0;
};

MarginalGain marginal_gain(const Graph& g, std::span<const NodeId> base_set, NodeId added_node);

/// Outcome of one diminishing-returns test for a nested pair a2 within a1.
struct SubmodularCheck {
  bool holds = false;
  /// -log g(a1 + i) + log g(a1)
  double lhs = 0.0;
  /// -log g(a2 + i) + log g(a2)
  double rhs = 0.0;
  std::size_t n1 = 0, n2 = 0;
  std::size_t e1 = 0, e2 = 0;
  std::size_t m1 = 0, m2 = 0;
  /// n1 >= n2, e1 >= e2 and m1 >= m2.
  bool counts_ordered = false;
};

/// Requires a2 subset of a1, i outside a1 and gamma >= 1; throws
/// std::invalid_argument otherwise.
SubmodularCheck check_submodular_inequality(const Graph& g, const EpidemicParams& p,
                                            std::span<const NodeId> a1, std::span<const NodeId> a2,
                                            NodeId i);

/// Exact most-probable configuration through a single s-t minimum cut.
/// Throws RegimeError when gamma < 1.
SolverResult solve_mpc_mincut(const Graph& g, const EpidemicParams& p,
                              TiePolicy tie = TiePolicy::maximal);

/// Exhaustive search over all 2^N configurations. Under ties, `minimal`
/// returns the lexicographically smallest among minimum-cardinality
/// maximizers, `maximal` the lexicographically smallest among
/// maximum-cardinality maximizers.
SolverResult solve_mpc_bruteforce(const Graph& g, const EpidemicParams& p,
                                  TiePolicy tie = TiePolicy::maximal,
                                  std::size_t limit = kDefaultEnumerationLimit);

/// Index pairs (n, e) attaining the maximal weight among all attained pairs,
/// flagged in the attained_pairs layout. Exposed for the condition checkers.
std::vector<std::uint8_t> best_pairs(const EpidemicParams& p, std::size_t node_count,
                                     std::size_t edge_count, std::span<const std::uint8_t> attained);

struct SweepPoint {
  EpidemicParams params;
  std::optional<SolverResult> result;
  std::string error;
};

/// Degeneracy class changes between grid entries `before` and `after`.
struct PhaseBoundary {
  std::size_t before = 0;
  std::size_t after = 0;
  Degeneracy from = Degeneracy::all_zero;
  Degeneracy to = Degeneracy::all_zero;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<PhaseBoundary> boundaries;
  bool all_succeeded() const;
};

/// Solves every grid point independently (in parallel); consecutive grid
/// entries are treated as adjacent for boundary detection. A failing point
/// records its error and the sweep continues.
SweepResult sweep(const Graph& g, std::span<const EpidemicParams> grid,
                  TiePolicy tie = TiePolicy::maximal);

/// Boundaries between an explicit list of adjacent (before, after) index pairs.
std::vector<PhaseBoundary> find_boundaries(
    std::span<const SweepPoint> points,
    std::span<const std::pair<std::size_t, std::size_t>> adjacent);

}  // namespace sis

#endif
