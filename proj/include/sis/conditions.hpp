#ifndef SIS_CONDITIONS_HPP
#define SIS_CONDITIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sis/equilibrium.hpp"
#include "sis/graph.hpp"
#include "sis/mpc.hpp"
#include "sis/params.hpp"

namespace sis {

enum class Regime { I, II, III, IV, boundary };

/// Quadrant of the (lambda/mu, gamma) plane:
///   I    lambda/mu <= 1, gamma < 1
///   II   lambda/mu <= 1, gamma > 1
///   III  lambda/mu >  1, gamma < 1
///   IV   lambda/mu >  1, gamma > 1
/// gamma = 1 is the boundary line.
struct RegimeLabel {
  Regime regime = Regime::boundary;
  std::string rule;
};

RegimeLabel classify_regime(const EpidemicParams& p);
std::string to_string(Regime r);

enum class ConditionName {
  thm2_exists_dense_subgraph,
  thm3_case1,
  thm3_case2,
  cor_nondegenerate,
  cor_x0,
};
std::string to_string(ConditionName c);

enum class Verdict { holds, fails, unknown };
std::string to_string(Verdict v);

/// One evaluated structural condition. `lhs`/`rhs` are the two sides of the
/// tested inequality (log-domain for the density thresholds, the density
/// ratio against N'/N for the witness test).
struct ConditionReport {
  ConditionName name = ConditionName::cor_x0;
  Verdict verdict = Verdict::unknown;
  std::optional<InducedSubgraph> witness;
  double lhs = 0.0;
  double rhs = 0.0;
  /// The deciding comparison was an exact equality (a phase boundary).
  bool on_boundary = false;
  /// Decided with rational arithmetic rather than the log tolerance.
  bool exact = false;
  std::string detail;

  bool holds() const { return verdict == Verdict::holds; }
};

struct ConditionOptions {
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
};

/// Holds (x* = x^0) iff lambda * gamma^d(densest) <= mu.
ConditionReport check_x0_condition(const Graph& g, const EpidemicParams& p,
                                   const ConditionOptions& opts = {});

/// Existence of an induced subgraph with lambda * gamma^d(H) > mu; the
/// densest subgraph is the witness. Logical negation of check_x0_condition.
ConditionReport check_dense_subgraph_condition(const Graph& g, const EpidemicParams& p,
                                               const ConditionOptions& opts = {});

/// Holds when x* != x^N. Case 1 (densest subgraph has the network's own
/// density): (lambda/mu) gamma^d(G) <= 1. Case 2: a witness H != G with
/// N' log(r gamma^d(H)) > N log(r gamma^d(G)); searched exhaustively up to the
/// enumeration limit, otherwise among {densest, peeling suffixes, min-cut
/// solutions}, reporting `unknown` when none qualifies.
ConditionReport check_xN_condition(const Graph& g, const EpidemicParams& p,
                                   const ConditionOptions& opts = {});

/// Dense-subgraph condition together with the x^N witness condition.
ConditionReport check_nondegenerate_condition(const Graph& g, const EpidemicParams& p,
                                              const ConditionOptions& opts = {});

/// Densest subgraph of a structured network equals the whole graph.
struct StructuredCheck {
  bool holds = false;
  Rational graph_density;
  Rational densest_density;
  /// Exhaustive d(H) <= d(G) check was run (N <= 20).
  bool enumerated = false;
  std::optional<InducedSubgraph> witness;
};

StructuredCheck check_structured_densest(const Graph& g);

/// All condition reports for (g, p) cross-checked against both canonical
/// min-cut maximizers. Each prediction is checked against the extreme it
/// characterizes: x^0 is optimal iff the minimal maximizer is empty, x^N is
/// optimal iff the maximal maximizer is the whole network.
struct ConditionAudit {
  RegimeLabel regime;
  std::vector<ConditionReport> reports;
  SolverResult minimal;
  SolverResult maximal;
  std::string predicted;
  bool consistent = false;
  std::vector<std::string> notes;
};

ConditionAudit audit_conditions(const Graph& g, const EpidemicParams& p,
                                const ConditionOptions& opts = {});

}  // namespace sis

#endif
