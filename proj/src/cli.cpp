#include "sis/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "sis/conditions.hpp"
#include "sis/densest.hpp"
#include "sis/equilibrium.hpp"
#include "sis/generators.hpp"
#include "sis/io.hpp"
#include "sis/kernels.hpp"
#include "sis/mpc.hpp"
#include "sis/simulation.hpp"

namespace sis {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string graph_path;
  std::string gen_spec;
  std::string r;
  std::string gamma;
  std::string mu = "1";
  std::string tie = "maximal";
  std::string grid;
  std::string out_dir;
  std::string format;
  std::string method = "exact";
  std::uint64_t seed = 1;
  std::optional<double> tmax;
  double burn_in = 0.1;
  std::size_t enum_limit = kDefaultEnumerationLimit;
  bool compare = false;
  bool enum_limit_given = false;
};

// Empirical TV over 2^N states needs far more events than states, so the
// compare mode has a tighter default than the exhaustive solvers.
constexpr std::size_t kDefaultCompareLimit = 16;

// Collects outputs: files under --out, otherwise the primary one on stdout.
class Sink {
 public:
  Sink(const Options& o, std::ostream& out) : out_(out) {
    if (!o.out_dir.empty()) {
      dir_ = fs::path(o.out_dir);
      fs::create_directories(*dir_);
    }
  }

  void emit(const std::string& name, const std::string& content, bool primary) {
    if (dir_) {
      std::ofstream f(*dir_ / name, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot write " + (*dir_ / name).string());
      f << content;
      if (!f) throw std::runtime_error("write failed for " + (*dir_ / name).string());
      written_.push_back(name);
    } else if (primary) {
      out_ << content;
    }
  }

  bool to_files() const { return dir_.has_value(); }
  const std::vector<std::string>& written() const { return written_; }

 private:
  std::ostream& out_;
  std::optional<fs::path> dir_;
  std::vector<std::string> written_;
};

struct LoadedGraph {
  Graph graph;
  std::string source;
  bool from_file = false;
};

LoadedGraph load_graph(const Options& o) {
  if (!o.graph_path.empty()) {
    try {
      return {load_edge_list_file(o.graph_path), "file:" + o.graph_path, true};
    } catch (const GraphError& e) {
      throw std::runtime_error(o.graph_path + ": " + e.what());
    }
  }
  if (!o.gen_spec.empty()) return {generate_from_spec(o.gen_spec), "gen:" + o.gen_spec, false};
  throw UsageError("one of --graph or --gen is required");
}

Rational require_rational(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required for this command");
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

EpidemicParams require_params(const Options& o) {
  return EpidemicParams::from_ratio(require_rational(o.r, "--r"),
                                    require_rational(o.gamma, "--gamma"));
}

std::string require_format(const Options& o, std::initializer_list<const char*> allowed) {
  const std::string f = o.format.empty() ? *allowed.begin() : o.format;
  for (const char* a : allowed)
    if (f == a) return f;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw UsageError("--format for '" + o.command + "' must be " + list);
}

TiePolicy require_tie(const Options& o) {
  try {
    return parse_tie_policy(o.tie);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit_node_map(Sink& sink, const LoadedGraph& lg) {
  if (!lg.from_file || !sink.to_files()) return;
  std::ostringstream os;
  write_node_map(os, lg.graph);
  sink.emit("node_map.csv", os.str(), false);
}

json validate_report(const LoadedGraph& lg) {
  const Graph& g = lg.graph;
  std::size_t lo = g.node_count() ? g.degree(0) : 0, hi = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    lo = std::min(lo, g.degree(i));
    hi = std::max(hi, g.degree(i));
  }
  const Rational d = graph_density(g);
  const double mean = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
  return json{{"graph_source", lg.source},
              {"nodes", g.node_count()},
              {"edges", g.edge_count()},
              {"density", d.to_double()},
              {"density_exact", d.to_string()},
              {"connected", true},
              {"components", 1},
              {"degree", json{{"min", lo}, {"max", hi}, {"mean", mean}}}};
}

json cmd_validate(const Options& o, Sink& sink, const LoadedGraph& lg) {
  require_format(o, {"json"});
  sink.emit("validate.json", dump_json(validate_report(lg)), true);
  emit_node_map(sink, lg);
  return json::object();
}

json cmd_mpc(const Options& o, Sink& sink, const LoadedGraph& lg) {
  const std::string format = require_format(o, {"json", "dot"});
  const EpidemicParams p = require_params(o);
  const TiePolicy tie = require_tie(o);
  const SolverResult result = solve_mpc_mincut(lg.graph, p, tie);
  if (format == "json") {
    sink.emit("mpc.json", dump_json(to_json(result)), true);
  } else {
    std::ostringstream os;
    write_dot(os, lg.graph, result.configuration);
    sink.emit("mpc.dot", os.str(), true);
  }
  emit_node_map(sink, lg);
  return json{{"r", p.exact_ratio()->to_string()}, {"gamma", p.exact_gamma()->to_string()},
              {"format", format}};
}

std::vector<std::pair<std::size_t, std::size_t>> grid_neighbors(std::size_t rows, std::size_t cols) {
  std::vector<std::pair<std::size_t, std::size_t>> adj;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t k = i * cols + j;
      if (j + 1 < cols) adj.emplace_back(k, k + 1);
      if (i + 1 < rows) adj.emplace_back(k, k + cols);
    }
  return adj;
}

json cmd_sweep(const Options& o, Sink& sink, const LoadedGraph& lg, bool& all_ok) {
  require_format(o, {"csv"});
  if (o.grid.empty()) throw UsageError("--grid is required for 'sweep'");
  const TiePolicy tie = require_tie(o);
  GridSpec spec;
  try {
    spec = parse_grid(o.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
  std::vector<EpidemicParams> grid;
  for (const Rational& r : spec.ratios)
    for (const Rational& g : spec.gammas) grid.push_back(EpidemicParams::from_ratio(r, g));

  SweepResult result = sweep(lg.graph, grid, tie);
  result.boundaries =
      find_boundaries(result.points, grid_neighbors(spec.ratios.size(), spec.gammas.size()));
  all_ok = result.all_succeeded();

  std::ostringstream csv;
  write_sweep_csv(csv, result);
  sink.emit("sweep.csv", csv.str(), true);
  sink.emit("sweep.json", dump_json(sweep_summary_json(result, tie)), false);
  emit_node_map(sink, lg);
  return json{{"grid", o.grid}};
}

json cmd_densest(const Options& o, Sink& sink, const LoadedGraph& lg) {
  require_format(o, {"json"});
  InducedSubgraph h;
  if (o.method == "exact") h = densest_subgraph_exact(lg.graph);
  else if (o.method == "peel") h = densest_subgraph_peel(lg.graph);
  else throw UsageError("--method must be 'exact' or 'peel'");
  json j = to_json(h);
  const Rational d = graph_density(lg.graph);
  j["method"] = o.method;
  j["graph_density"] = d.to_double();
  j["graph_density_exact"] = d.to_string();
  sink.emit("densest.json", dump_json(j), true);
  emit_node_map(sink, lg);
  return json{{"method", o.method}};
}

json cmd_simulate(const Options& o, Sink& sink, const LoadedGraph& lg) {
  const std::string format = require_format(o, {"json", "csv"});
  if (!o.tmax) throw UsageError("--tmax is required for 'simulate'");
  if (!(o.burn_in >= 0.0 && o.burn_in < 1.0)) throw UsageError("--burn-in must lie in [0, 1)");
  const Rational ratio = require_rational(o.r, "--r");
  const Rational gamma = require_rational(o.gamma, "--gamma");
  const Rational mu = require_rational(o.mu, "--mu");
  const EpidemicParams p =
      EpidemicParams::from_rates((ratio * mu).to_double(), mu.to_double(), gamma.to_double());
  const Graph& g = lg.graph;

  std::optional<StateDistribution> reference;
  const std::size_t limit = o.enum_limit_given ? o.enum_limit : kDefaultCompareLimit;
  if (o.compare) {
    check_enumeration_limit(g, limit);
    reference = equilibrium_distribution(g, p, limit);
  }

  const Trajectory tr = gillespie_run(g, p, Configuration::zeros(g.node_count()), *o.tmax, o.seed);
  const double burn_in = o.burn_in * tr.total_time;
  const MeanEstimate mean = time_average_infected(tr, burn_in);

  json summary{{"seed", tr.seed},
               {"t_max", tr.total_time},
               {"burn_in", burn_in},
               {"events", tr.events.size()},
               {"events_after_burn_in", events_after(tr, burn_in)},
               {"mean_infected", mean.mean},
               {"mean_infected_stderr", std::isfinite(mean.standard_error) ? json(mean.standard_error) : json(nullptr)},
               {"final_infected_count", tr.final_state().infected_count()}};
  if (reference) {
    summary["tv_distance"] = tv_distance(empirical_distribution(tr, burn_in, limit), *reference);
    summary["reference_mean_infected"] = mean_infected(*reference);
  } else {
    summary["tv_distance"] = nullptr;
  }

  std::ostringstream csv;
  write_trajectory_csv(csv, tr);
  sink.emit("trajectory.csv", csv.str(), format == "csv");
  sink.emit("summary.json", dump_json(summary), format == "json");
  emit_node_map(sink, lg);
  return json{{"r", ratio.to_string()},
              {"gamma", gamma.to_string()},
              {"mu", mu.to_string()},
              {"t_max", *o.tmax},
              {"burn_in_fraction", o.burn_in},
              {"compare", o.compare},
              {"enum_limit", limit}};
}

json cmd_check(const Options& o, Sink& sink, const LoadedGraph& lg) {
  require_format(o, {"json"});
  const EpidemicParams p = require_params(o);
  ConditionOptions opts;
  opts.enumeration_limit = o.enum_limit;
  const ConditionAudit audit = audit_conditions(lg.graph, p, opts);
  json j = to_json(audit);
  j["lambda_over_mu"] = p.exact_ratio()->to_string();
  j["gamma"] = p.exact_gamma()->to_string();
  sink.emit("check.json", dump_json(j), true);
  emit_node_map(sink, lg);
  return json{{"r", p.exact_ratio()->to_string()},
              {"gamma", p.exact_gamma()->to_string()},
              {"enum_limit", o.enum_limit}};
}

void add_common(CLI::App* sub, Options& o) {
  auto* graph = sub->add_option("--graph", o.graph_path, "edge-list file");
  auto* gen = sub->add_option("--gen", o.gen_spec, "generator spec, e.g. cycle:6 or kregular:20:3");
  graph->excludes(gen);
  sub->add_option("--r", o.r, "lambda/mu as a/b or decimal");
  sub->add_option("--gamma", o.gamma, "endogenous infection factor as a/b or decimal");
  sub->add_option("--tie", o.tie, "minimal|maximal (default maximal)");
  sub->add_option("--grid", o.grid, "r_min:r_max:steps x g_min:g_max:steps");
  sub->add_option("--seed", o.seed, "simulation seed");
  sub->add_option("--tmax", o.tmax, "simulated time horizon");
  sub->add_option("--out", o.out_dir, "output directory (default: primary output on stdout)");
  sub->add_option("--format", o.format, "json|dot|csv");
  sub->add_option("--enum-limit", o.enum_limit, "largest N for 2^N enumeration")
      ->check(CLI::Range(std::size_t{1}, kMaxEnumerationLimit));
}

void apply_thread_env() {
  const char* env = std::getenv("SIS_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw UsageError("SIS_THREADS must be a positive integer");
  kernels::set_thread_limit(static_cast<int>(std::min<long>(v, 1 << 16)));
}

}  // namespace

std::vector<Rational> parse_grid_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return {Rational::parse(parts[0])};
  if (parts.size() != 3) throw std::invalid_argument("axis '" + text + "' is not min:max:steps");
  const Rational lo = Rational::parse(parts[0]);
  const Rational hi = Rational::parse(parts[1]);
  std::size_t used = 0;
  long long steps = 0;
  try {
    steps = std::stoll(parts[2], &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != parts[2].size() || steps < 1 || steps > 100000)
    throw std::invalid_argument("steps in '" + text + "' must be an integer in [1, 100000]");
  if (hi < lo) throw std::invalid_argument("axis '" + text + "' has max < min");
  if (steps == 1) {
    if (lo != hi) throw std::invalid_argument("one step needs min == max in '" + text + "'");
    return {lo};
  }
  std::vector<Rational> out;
  const Rational span = hi - lo;
  for (long long k = 0; k < steps; ++k) out.push_back(lo + span * Rational(k, steps - 1));
  return out;
}

GridSpec parse_grid(const std::string& text) {
  std::string t = text;
  const std::string times = "\xC3\x97";
  for (std::size_t at; (at = t.find(times)) != std::string::npos;) t.replace(at, times.size(), "x");
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  const auto split = t.find_first_of("xX");
  if (split == std::string::npos || t.find_first_of("xX", split + 1) != std::string::npos)
    throw std::invalid_argument("grid must look like r_min:r_max:steps x g_min:g_max:steps");
  GridSpec g;
  g.ratios = parse_grid_axis(t.substr(0, split));
  g.gammas = parse_grid_axis(t.substr(split + 1));
  return g;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Most-probable configurations and equilibrium analysis of the scaled SIS process",
               "sis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::map<std::string, CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "parse a graph and print its statistics"},
      {"mpc", "most-probable configuration via min-cut"},
      {"sweep", "solve over a (lambda/mu, gamma) grid"},
      {"densest", "densest induced subgraph"},
      {"simulate", "stochastic simulation of the SIS dynamics"},
      {"check", "structural conditions cross-checked against the solver"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    subs[name] = sub;
  }
  subs["densest"]->add_option("--method", o.method, "exact|peel");
  subs["simulate"]->add_option("--mu", o.mu, "healing rate (lambda = r * mu)");
  subs["simulate"]->add_option("--burn-in", o.burn_in, "burn-in as a fraction of --tmax");
  subs["simulate"]->add_flag("--compare", o.compare, "TV distance against the exact equilibrium");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) {
      o.command = name;
      o.enum_limit_given = sub->count("--enum-limit") > 0;
    }

  try {
    apply_thread_env();
    Sink sink(o, out);
    const LoadedGraph lg = load_graph(o);

    bool all_ok = true;
    json params;
    if (o.command == "validate") params = cmd_validate(o, sink, lg);
    else if (o.command == "mpc") params = cmd_mpc(o, sink, lg);
    else if (o.command == "sweep") params = cmd_sweep(o, sink, lg, all_ok);
    else if (o.command == "densest") params = cmd_densest(o, sink, lg);
    else if (o.command == "simulate") params = cmd_simulate(o, sink, lg);
    else params = cmd_check(o, sink, lg);

    if (sink.to_files()) {
      RunManifest m;
      m.command = o.command;
      m.arguments = args;
      m.graph_source = lg.source;
      m.graph_fingerprint = lg.graph.fingerprint();
      m.parameters = params;
      if (o.command == "mpc" || o.command == "sweep") m.tie = to_string(require_tie(o));
      if (o.command == "simulate") m.seed = o.seed;
      m.outputs = sink.written();
      sink.emit("manifest.json", dump_json(to_json(m)), false);
    }
    if (!all_ok) {
      err << "sis: error: some sweep points failed; see the error column\n";
      return 1;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "sis: usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "sis: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sis
