// Acceptance gate. One PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracle.hpp"
#include "sis/cli.hpp"
#include "sis/conditions.hpp"
#include "sis/densest.hpp"
#include "sis/equilibrium.hpp"
#include "sis/generators.hpp"
#include "sis/mpc.hpp"
#include "sis/simulation.hpp"

using namespace sis;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// First failure message wins; later ones are only counted.
struct Tally {
  Outcome out;
  int failures = 0;
  void fail(const std::string& why) {
    if (failures++ == 0) out.detail = why;
    out.pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string show(const Graph& g) {
  std::ostringstream os;
  os << "N=" << g.node_count() << " edges={";
  for (const auto& e : g.edges()) os << e.u << "-" << e.v << " ";
  os << "}";
  return os.str();
}

Outcome oracle_equivalence() {
  Tally t;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int cases = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const std::size_t n = 4 + rng() % 11;
    const Graph g = oracle::random_graph(rng, n, 0.05 + 0.6 * unit(rng));
    // Even trials use exact rationals (ties show up), odd ones floating inputs.
    EpidemicParams p = EpidemicParams::from_ratio(oracle::random_ratio(rng), oracle::random_gamma(rng));
    if (trial % 2) p = EpidemicParams::from_ratio(1.0 - unit(rng), 1.0 + 3.0 * unit(rng));
    for (TiePolicy tie : {TiePolicy::minimal, TiePolicy::maximal}) {
      const SolverResult a = solve_mpc_mincut(g, p, tie);
      const SolverResult b = solve_mpc_bruteforce(g, p, tie);
      ++cases;
      t.expect(std::abs(a.log_value - b.log_value) <= 1e-9,
               "log value differs on " + show(g) + " tie=" + to_string(tie));
      t.expect(a.configuration == b.configuration,
               "infected sets differ on " + show(g) + " tie=" + to_string(tie) + ": " +
                   a.configuration.to_string() + " vs " + b.configuration.to_string());
    }
  }
  if (t.out.pass) t.out.detail = std::to_string(cases / 2) + " graphs, both tie policies";
  return t.out;
}

Outcome submodularity() {
  Tally t;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int triples = 0, counts = 0;
  while (triples < 10000) {
    const std::size_t n = 2 + rng() % 14;
    const Graph g = oracle::random_graph(rng, n, 0.05 + 0.6 * unit(rng));
    const EpidemicParams p = EpidemicParams::from_ratio(0.05 + 0.95 * unit(rng), 1.0 + 4.0 * unit(rng));
    for (int k = 0; k < 25; ++k) {
      // Random chain a2 within a1, and i outside a1.
      std::vector<NodeId> order(n);
      for (NodeId v = 0; v < n; ++v) order[v] = v;
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t size1 = rng() % n;
      const std::size_t size2 = size1 ? rng() % (size1 + 1) : 0;
      std::vector<NodeId> a1(order.begin(), order.begin() + size1);
      std::vector<NodeId> a2(order.begin(), order.begin() + size2);
      std::sort(a1.begin(), a1.end());
      std::sort(a2.begin(), a2.end());
      const NodeId i = order[size1];
      const SubmodularCheck c = check_submodular_inequality(g, p, a1, a2, i);
      ++triples;
      t.expect(c.holds, "inequality violated on " + show(g));
      t.expect(c.m1 >= c.m2, "m1 < m2 on " + show(g));
      if (!c.counts_ordered) ++counts;
    }
  }
  t.expect(counts == 0, "count ordering violated");
  if (t.out.pass) t.out.detail = std::to_string(triples) + " triples, 0 violations";
  return t.out;
}

Outcome reversibility() {
  Tally t;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_db = 0.0, worst_tv = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Graph g = oracle::random_graph(rng, n, 0.1 + 0.6 * unit(rng));
    const double mu = 0.2 + 2.0 * unit(rng);
    const auto p = EpidemicParams::from_rates(0.1 + 2.0 * unit(rng), mu, 0.5 + 2.5 * unit(rng));
    const double db = check_detailed_balance(g, p);
    worst_db = std::max(worst_db, db);
    t.expect(db <= 1e-12, "detailed balance residual " + std::to_string(db) + " on " + show(g));

    const StateDistribution pi = equilibrium_distribution(g, p);
    const StationaryResult st = stationary_by_uniformization(build_rate_matrix(g, p));
    double tv = 0.0;
    for (std::size_t s = 0; s < st.probabilities.size(); ++s)
      tv += std::abs(st.probabilities[s] - pi.probabilities[s]);
    tv *= 0.5;
    worst_tv = std::max(worst_tv, tv);
    t.expect(tv <= 1e-8, "stationary vector off by TV " + std::to_string(tv) + " on " + show(g));
  }
  if (t.out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "max residual %.2e, max TV %.2e", worst_db, worst_tv);
    t.out.detail = buf;
  }
  return t.out;
}

Outcome cycle_transition() {
  Tally t;
  const Rational half(1, 2);
  for (std::size_t n : {6u, 10u}) {
    const Graph g = make_cycle(n);
    // gamma = 1 + k/20 for k = 1..40 covers (1, 3] and hits 2 exactly.
    for (int k = 1; k <= 40; ++k) {
      const Rational gamma(20 + k, 20);
      const auto p = EpidemicParams::from_ratio(half, gamma);
      const auto lo = solve_mpc_mincut(g, p, TiePolicy::minimal);
      const auto hi = solve_mpc_mincut(g, p, TiePolicy::maximal);
      const std::string where = "C" + std::to_string(n) + " gamma=" + gamma.to_string();
      const Rational s = half * gamma;
      if (s < Rational(1)) {
        t.expect(lo.configuration.all_zero() && hi.configuration.all_zero(), "expected x0 at " + where);
      } else if (s > Rational(1)) {
        t.expect(lo.configuration.all_one() && hi.configuration.all_one(), "expected xN at " + where);
      } else {
        t.expect(lo.configuration.all_zero(), "minimal should be x0 at " + where);
        t.expect(hi.configuration.all_one(), "maximal should be xN at " + where);
        t.expect(compare_configs(g, p, Configuration::zeros(n), Configuration::ones(n)) == Ordering::equal,
                 "x0 and xN do not tie at " + where);
        t.expect(lo.log_value == 0.0 && hi.log_value == 0.0, "tie values not zero at " + where);
      }
    }
  }
  if (t.out.pass) t.out.detail = "C6 and C10, 40 points each, tie at gamma=2/1";
  return t.out;
}

Outcome clique_tail() {
  Tally t;
  const Graph g = make_clique_with_tail(5, 5);
  const auto p = EpidemicParams::from_ratio(Rational(1, 2), Rational(3, 2));
  const std::vector<NodeId> clique = {0, 1, 2, 3, 4};
  for (TiePolicy tie : {TiePolicy::minimal, TiePolicy::maximal}) {
    const auto a = solve_mpc_mincut(g, p, tie);
    const auto b = solve_mpc_bruteforce(g, p, tie);
    t.expect(a.configuration.to_string() == "1111100000", "mincut returned " + a.configuration.to_string());
    t.expect(a.configuration == b.configuration, "brute force returned " + b.configuration.to_string());
    t.expect(a.degeneracy == Degeneracy::non_degenerate, "not classified non-degenerate");
  }
  const auto nd = check_nondegenerate_condition(g, p);
  t.expect(nd.holds(), "non-degenerate condition does not hold");
  t.expect(nd.witness && nd.witness->nodes == clique, "witness is not the clique");
  t.expect(nd.witness && nd.witness->density == Rational(2), "witness density is not 2");
  t.expect(graph_density(g) == Rational(3, 2), "d(G) is not 3/2");
  t.expect(nd.witness && nd.witness->density > graph_density(g), "witness not denser than G");
  const auto audit = audit_conditions(g, p);
  t.expect(audit.predicted == "non_degenerate", "audit predicted " + audit.predicted);
  t.expect(audit.consistent, "audit inconsistent");
  if (t.out.pass) t.out.detail = "clique {0..4}, witness density 2/1 > 3/2";
  return t.out;
}

// Every connected labelled graph on up to 5 nodes, plus fixtures and random graphs up to 14.
std::vector<Graph> densest_corpus() {
  std::vector<Graph> corpus;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Edge> all;
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b) all.push_back({a, b});
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t k = 0; k < all.size(); ++k)
        if (mask >> k & 1) edges.push_back(all[k]);
      try {
        corpus.emplace_back(n, edges);
      } catch (const GraphError&) {
        // disconnected
      }
    }
  }
  for (std::size_t n = 2; n <= 14; ++n) {
    corpus.push_back(make_path(n));
    corpus.push_back(make_star(n - 1));
    if (n >= 3) corpus.push_back(make_cycle(n));
    corpus.push_back(make_complete(n));
  }
  corpus.push_back(make_clique_with_tail(5, 5));
  corpus.push_back(make_clique_with_tail(4, 9));
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 300; ++k)
    corpus.push_back(oracle::random_graph(rng, 6 + rng() % 9, 0.02 + 0.7 * unit(rng)));
  return corpus;
}

Outcome densest_exactness() {
  Tally t;
  const auto corpus = densest_corpus();
  for (const Graph& g : corpus) {
    const auto want = oracle::densest(g);
    const auto got = densest_subgraph_exact(g);
    t.expect(got.density == want.density, "density " + got.density.to_string() + " vs " +
                                              want.density.to_string() + " on " + show(g));
    std::vector<std::uint8_t> bits(g.node_count(), 0);
    for (NodeId v : got.nodes) bits[v] = 1;
    t.expect(bits == want.union_of_densest, "densest set differs on " + show(g));
  }

  int structured = 0;
  auto expect_whole = [&](const Graph& g, const std::string& what) {
    const auto c = check_structured_densest(g);
    ++structured;
    t.expect(c.holds, what + ": subgraph denser than " + c.graph_density.to_string());
    t.expect(c.enumerated || g.node_count() > 20, what + ": not enumerated");
  };
  for (std::size_t n = 3; n <= 20; ++n)
    for (std::size_t k = 2; k < n; ++k)
      if ((n * k) % 2 == 0)
        for (std::uint64_t seed : {0u, 11u})
          expect_whole(generate_structured(KRegular{n, k}, seed),
                       "kregular " + std::to_string(n) + "," + std::to_string(k));
  const std::vector<std::vector<std::size_t>> parts = {
      {1, 1}, {1, 3}, {2, 2}, {2, 5}, {3, 3}, {1, 2, 3}, {4, 4, 4}, {1, 1, 1, 1, 1}, {2, 3, 4, 5}, {6, 7}};
  for (const auto& pt : parts) expect_whole(generate_structured(CompleteMultipartite{pt}, 3), "multipartite");
  const std::vector<std::pair<std::vector<std::size_t>, std::size_t>> islands = {
      {{3, 3}, 2}, {{4, 4}, 2}, {{5, 5}, 2}, {{4, 4, 4}, 2}, {{6, 6}, 3}, {{5, 5, 5}, 4}, {{4, 4, 6}, 2}, {{6, 8}, 3},
      {{8, 8}, 4}, {{10, 10}, 5}};
  for (const auto& [pt, k] : islands)
    expect_whole(generate_structured(MultipartiteIslands{pt, k}, 5), "islands k=" + std::to_string(k));

  if (t.out.pass)
    t.out.detail = std::to_string(corpus.size()) + " corpus graphs, " + std::to_string(structured) +
                   " structured instances";
  return t.out;
}

Outcome simulation() {
  Tally t;
  const Graph g = make_star(4);
  const auto p = EpidemicParams::from_ratio(0.5, 2.0);
  const StateDistribution pi = equilibrium_distribution(g, p);
  // Long enough for comfortably more than 10^6 events after a 10% burn-in.
  const double rate = stationary_event_rate(g, p, pi);
  const double t_max = 1.15e6 / rate / 0.9;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  const auto reps = run_replicas(g, p, Configuration::zeros(5), t_max, seeds, 0.1, &pi);
  int good = 0;
  double worst = 0.0;
  std::size_t fewest = SIZE_MAX;
  for (const auto& r : reps) {
    fewest = std::min(fewest, r.events_after_burn_in);
    worst = std::max(worst, *r.tv);
    if (*r.tv < 0.02 && r.events_after_burn_in >= 1000000) ++good;
  }
  t.expect(fewest >= 1000000, "only " + std::to_string(fewest) + " events after burn-in");
  t.expect(good >= 19, std::to_string(good) + "/20 seeds under TV 0.02");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/20 seeds, worst TV %.4f, min events %zu", good, worst, fewest);
  if (t.out.pass) t.out.detail = buf;
  return t.out;
}

Outcome scale() {
  Tally t;
  std::vector<std::vector<std::size_t>> sets;
  std::vector<double> times;
  for (const char* gamma : {"2.0", "2.6"}) {
    std::ostringstream out, err;
    const auto t0 = Clock::now();
    const int code = run_cli({"mpc", "--gen", "random:5000:6600:2024", "--r", "0.33", "--gamma", gamma,
                              "--tie", "maximal"},
                             out, err);
    times.push_back(seconds_since(t0));
    if (code != 0) {
      t.fail(std::string("cmd_mpc failed: ") + err.str());
      return t.out;
    }
    t.expect(times.back() < 10.0, "gamma=" + std::string(gamma) + " took " + std::to_string(times.back()) + " s");
    const auto j = nlohmann::json::parse(out.str());
    sets.push_back(j["infected_nodes"].get<std::vector<std::size_t>>());
  }
  t.expect(std::includes(sets[1].begin(), sets[1].end(), sets[0].begin(), sets[0].end()),
           "infected set at gamma=2.0 is not inside the set at 2.6");
  char buf[160];
  std::snprintf(buf, sizeof buf, "|S(2.0)|=%zu within |S(2.6)|=%zu, %.2f s and %.2f s", sets[0].size(),
                sets[1].size(), times[0], times[1]);
  if (t.out.pass) t.out.detail = buf;
  return t.out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget;
  };
  const std::vector<Criterion> criteria = {
      {"mincut equals brute force", oracle_equivalence, 120.0},
      {"submodularity", submodularity, 0.0},
      {"reversibility", reversibility, 0.0},
      {"cycle phase transition", cycle_transition, 0.0},
      {"clique with tail is non-degenerate", clique_tail, 0.0},
      {"densest subgraph exactness", densest_exactness, 0.0},
      {"simulation matches equilibrium", simulation, 60.0},
      {"scale and monotonicity", scale, 0.0},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (criteria[k].budget > 0.0 && secs > criteria[k].budget) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(criteria[k].budget)) + " s budget)";
    }
    if (!o.pass) ++failed;
    std::printf("%s  %zu  %-36s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
