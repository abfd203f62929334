#include "sis/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace sis {

namespace {

using json = nlohmann::ordered_json;

json real(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string exact_or_real(const std::optional<Rational>& exact, double v) {
  return exact ? exact->to_string() : format_real(v);
}

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const SolverResult& r) {
  return json{{"method", to_string(r.method)},
              {"tie_policy", to_string(r.tie_policy)},
              {"lambda_over_mu", real(r.lambda_over_mu)},
              {"gamma", real(r.gamma)},
              {"infected_nodes", r.configuration.infected_nodes()},
              {"infected_count", r.infected_count},
              {"infected_edges", r.infected_edges},
              {"log_value", real(r.log_value)},
              {"degenerate", to_string(r.degeneracy)}};
}

json to_json(const InducedSubgraph& h) {
  return json{{"nodes", h.nodes},
              {"node_count", h.nodes.size()},
              {"edge_count", h.edge_count},
              {"density", real(h.density.to_double())},
              {"density_exact", h.density.to_string()}};
}

json to_json(const ConditionReport& r) {
  json j{{"name", to_string(r.name)},
         {"verdict", to_string(r.verdict)},
         {"lhs", real(r.lhs)},
         {"rhs", real(r.rhs)},
         {"on_boundary", r.on_boundary},
         {"exact", r.exact},
         {"detail", r.detail}};
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

json to_json(const ConditionAudit& a) {
  json reports = json::array();
  for (const auto& r : a.reports) reports.push_back(to_json(r));
  return json{{"regime", to_string(a.regime.regime)},
              {"regime_rule", a.regime.rule},
              {"reports", reports},
              {"solver_minimal", to_json(a.minimal)},
              {"solver_maximal", to_json(a.maximal)},
              {"predicted", a.predicted},
              {"consistent", a.consistent},
              {"notes", a.notes}};
}

json to_json(const StructuredCheck& c) {
  json j{{"holds", c.holds},
         {"graph_density", real(c.graph_density.to_double())},
         {"graph_density_exact", c.graph_density.to_string()},
         {"densest_density", real(c.densest_density.to_double())},
         {"densest_density_exact", c.densest_density.to_string()},
         {"enumerated", c.enumerated}};
  j["witness"] = c.witness ? to_json(*c.witness) : json(nullptr);
  return j;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_dot(std::ostream& os, const Graph& g, const Configuration& x) {
  if (x.size() != g.node_count()) throw std::invalid_argument("configuration does not match graph");
  os << "graph " << dot_id(g.name().empty() ? "G" : g.name()) << " {\n";
  os << "  node [style=filled];\n";
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const bool infected = x[i];
    os << "  " << i << " [label=" << dot_id(g.label(i))
       << ", state=" << (infected ? "infected" : "healthy")
       << ", fillcolor=" << (infected ? "grey" : "white") << "];\n";
  }
  for (const Edge& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
}

void write_sweep_csv(std::ostream& os, const SweepResult& s) {
  os << "r,gamma,infected_count,infected_edges,log_value,degenerate,r_exact,gamma_exact,error\n";
  for (const SweepPoint& pt : s.points) {
    const EpidemicParams& p = pt.params;
    os << format_real(p.effective_rate()) << ',' << format_real(p.gamma()) << ',';
    if (pt.result) {
      os << pt.result->infected_count << ',' << pt.result->infected_edges << ','
         << format_real(pt.result->log_value) << ',' << to_string(pt.result->degeneracy);
    } else {
      os << ",,,";
    }
    os << ',' << exact_or_real(p.exact_ratio(), p.effective_rate()) << ','
       << exact_or_real(p.exact_gamma(), p.gamma()) << ',' << csv_field(pt.error) << '\n';
  }
}

json sweep_summary_json(const SweepResult& s, TiePolicy tie) {
  auto point = [&](std::size_t k) {
    const EpidemicParams& p = s.points[k].params;
    return json{{"index", k},
                {"r", real(p.effective_rate())},
                {"gamma", real(p.gamma())},
                {"r_exact", exact_or_real(p.exact_ratio(), p.effective_rate())},
                {"gamma_exact", exact_or_real(p.exact_gamma(), p.gamma())}};
  };
  json boundaries = json::array();
  for (const PhaseBoundary& b : s.boundaries)
    boundaries.push_back(json{{"before", point(b.before)},
                              {"after", point(b.after)},
                              {"from", to_string(b.from)},
                              {"to", to_string(b.to)}});
  json errors = json::array();
  for (std::size_t k = 0; k < s.points.size(); ++k)
    if (!s.points[k].result) {
      json e = point(k);
      e["error"] = s.points[k].error;
      errors.push_back(e);
    }
  return json{{"tie_policy", to_string(tie)},
              {"point_count", s.points.size()},
              {"boundaries", boundaries},
              {"errors", errors},
              {"all_succeeded", s.all_succeeded()}};
}

void write_node_map(std::ostream& os, const Graph& g) {
  os << "index,label\n";
  for (NodeId i = 0; i < g.node_count(); ++i) os << i << ',' << csv_field(g.label(i)) << '\n';
}

json to_json(const RunManifest& m) {
  json j{{"command", m.command},
         {"arguments", m.arguments},
         {"graph_source", m.graph_source},
         {"graph_fingerprint", m.graph_fingerprint},
         {"parameters", m.parameters.is_null() ? json::object() : m.parameters},
         {"outputs", m.outputs},
         {"tool_version", m.tool_version}};
  j["tie_policy"] = m.tie ? json(*m.tie) : json(nullptr);
  j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.arguments = j.at("arguments").get<std::vector<std::string>>();
  m.graph_source = j.at("graph_source").get<std::string>();
  m.graph_fingerprint = j.at("graph_fingerprint").get<std::uint64_t>();
  m.parameters = j.at("parameters");
  if (!j.at("tie_policy").is_null()) m.tie = j.at("tie_policy").get<std::string>();
  if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.tool_version = j.at("tool_version").get<std::string>();
  return m;
}

}  // namespace sis
