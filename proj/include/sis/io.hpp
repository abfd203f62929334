#ifndef SIS_IO_HPP
#define SIS_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sis/conditions.hpp"
#include "sis/graph.hpp"
#include "sis/mpc.hpp"

namespace sis {

inline constexpr const char* kToolVersion = "0.1.0";

/// %.17g; "nan", "inf" and "-inf" for non-finite values.
std::string format_real(double v);

nlohmann::ordered_json to_json(const SolverResult& r);
nlohmann::ordered_json to_json(const InducedSubgraph& h);
nlohmann::ordered_json to_json(const ConditionReport& r);
nlohmann::ordered_json to_json(const ConditionAudit& a);
nlohmann::ordered_json to_json(const StructuredCheck& c);

/// Two-space indented dump with a trailing newline.
std::string dump_json(const nlohmann::ordered_json& j);

/// Graphviz undirected graph; every node carries state="infected"|"healthy"
/// and a matching fill color.
void write_dot(std::ostream& os, const Graph& g, const Configuration& x);

/// Header `r,gamma,infected_count,infected_edges,log_value,degenerate,r_exact,gamma_exact,error`.
void write_sweep_csv(std::ostream& os, const SweepResult& s);
nlohmann::ordered_json sweep_summary_json(const SweepResult& s, TiePolicy tie);

/// `index,label` for graphs loaded from files.
void write_node_map(std::ostream& os, const Graph& g);

/// Everything needed to re-run a command: the normalized argument vector
/// plus the resolved inputs for cross-checking.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string graph_source;
  std::uint64_t graph_fingerprint = 0;
  nlohmann::ordered_json parameters;
  std::optional<std::string> tie;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
};

nlohmann::ordered_json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::ordered_json& j);

}  // namespace sis

#endif
