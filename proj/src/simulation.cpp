#include "sis/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "sis/io.hpp"
#include "sis/kernels.hpp"

namespace sis {

namespace {

// Complete binary tree of partial sums over the agents' rates.
class RateTree {
 public:
  explicit RateTree(std::size_t n) : leaves_(std::bit_ceil(std::max<std::size_t>(n, 1))) {
    tree_.assign(2 * leaves_, 0.0);
  }

  void set(std::size_t i, double rate) {
    std::size_t k = leaves_ + i;
    tree_[k] = rate;
    for (k /= 2; k >= 1; k /= 2) tree_[k] = tree_[2 * k] + tree_[2 * k + 1];
  }

  double total() const { return tree_[1]; }

  // Leaf whose cumulative interval contains `target`, never a zero-rate leaf.
  std::size_t find(double target) const {
    std::size_t k = 1;
    while (k < leaves_) {
      const double left = tree_[2 * k];
      if ((target < left && left > 0.0) || tree_[2 * k + 1] <= 0.0) {
        k = 2 * k;
      } else {
        target -= left;
        k = 2 * k + 1;
      }
    }
    return k - leaves_;
  }

 private:
  std::size_t leaves_;
  std::vector<double> tree_;
};

double unit_open(std::mt19937_64& rng) {
  // (0, 1]
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

double unit_closed_open(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void require_burn_in(const Trajectory& tr, double burn_in) {
  if (!(burn_in >= 0.0) || !(burn_in < tr.total_time))
    throw std::invalid_argument("burn-in must lie in [0, total_time)");
}

}  // namespace

Configuration Trajectory::final_state() const {
  Configuration x = initial;
  for (const TrajectoryEvent& ev : events) x.set(ev.agent, ev.new_state != 0);
  return x;
}

Trajectory gillespie_run(const Graph& g, const EpidemicParams& p, const Configuration& x0,
                         double t_max, std::uint64_t seed) {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw std::invalid_argument("t_max must be positive and finite");
  const std::size_t n = g.node_count();
  if (x0.size() != n) throw std::invalid_argument("initial configuration size does not match graph");

  std::size_t max_degree = 0;
  for (NodeId i = 0; i < n; ++i) max_degree = std::max(max_degree, g.degree(i));
  const double peak = std::log(p.lambda()) + static_cast<double>(max_degree) * p.log_gamma();
  if (!std::isfinite(std::exp(peak)))
    throw std::overflow_error("infection rate lambda * gamma^" + std::to_string(max_degree) +
                              " overflows a double; cap log(gamma) * degree below ~709");

  const double lambda = p.lambda();
  const double mu = p.mu();
  const double gamma = p.gamma();
  std::vector<std::uint8_t> infected(n);
  std::vector<std::uint32_t> infected_neighbors(n, 0);
  for (NodeId i = 0; i < n; ++i) infected[i] = x0[i] ? 1 : 0;
  for (const Edge& e : g.edges()) {
    infected_neighbors[e.u] += infected[e.v];
    infected_neighbors[e.v] += infected[e.u];
  }
  // gamma^k for every attainable k, so rates are reproducible across updates.
  std::vector<double> boost(max_degree + 1);
  for (std::size_t k = 0; k <= max_degree; ++k)
    boost[k] = std::exp(static_cast<double>(k) * p.log_gamma());
  if (gamma == 1.0) std::fill(boost.begin(), boost.end(), 1.0);

  auto rate_of = [&](NodeId i) {
    return infected[i] ? mu : lambda * boost[infected_neighbors[i]];
  };
  RateTree tree(n);
  for (NodeId i = 0; i < n; ++i) tree.set(i, rate_of(i));

  Trajectory tr;
  tr.initial = x0;
  tr.total_time = t_max;
  tr.seed = seed;
  tr.graph_fingerprint = g.fingerprint();

  std::mt19937_64 rng(seed);
  double t = 0.0;
  while (true) {
    const double total = tree.total();
    const double dt = -std::log(unit_open(rng)) / total;
    const double target = unit_closed_open(rng) * total;
    if (t + dt > t_max) break;
    const double next = t + dt;
    if (!(next > t)) throw std::runtime_error("simulation clock stopped advancing");
    t = next;
    const auto agent = static_cast<NodeId>(tree.find(target));
    infected[agent] ^= 1;
    tr.events.push_back({t, agent, infected[agent]});
    tree.set(agent, rate_of(agent));
    for (NodeId j : g.neighbors(agent)) {
      if (infected[agent]) ++infected_neighbors[j];
      else --infected_neighbors[j];
      if (!infected[j]) tree.set(j, rate_of(j));
    }
  }
  return tr;
}

StateDistribution empirical_distribution(const Trajectory& tr, double burn_in, std::size_t limit) {
  require_burn_in(tr, burn_in);
  const std::size_t n = tr.initial.size();
  if (n > std::min(limit, kMaxEnumerationLimit))
    throw EnumerationLimitError(n, std::min(limit, kMaxEnumerationLimit));

  StateDistribution d;
  d.node_count = n;
  d.graph_fingerprint = tr.graph_fingerprint;
  d.log_partition = std::numeric_limits<double>::quiet_NaN();
  d.probabilities.assign(std::size_t{1} << n, 0.0);

  std::uint64_t state = tr.initial.to_state();
  double previous = 0.0;
  auto credit = [&](double end) {
    const double start = std::max(previous, burn_in);
    if (end > start) d.probabilities[state] += end - start;
  };
  for (const TrajectoryEvent& ev : tr.events) {
    credit(ev.time);
    state ^= std::uint64_t{1} << ev.agent;
    previous = ev.time;
  }
  credit(tr.total_time);

  const double window = tr.total_time - burn_in;
  for (double& v : d.probabilities) v /= window;
  return d;
}

MeanEstimate time_average_infected(const Trajectory& tr, double burn_in, std::size_t batches) {
  require_burn_in(tr, burn_in);
  batches = std::max<std::size_t>(batches, 1);
  const double window = tr.total_time - burn_in;
  const double width = window / static_cast<double>(batches);
  std::vector<double> area(batches, 0.0);

  std::size_t count = tr.initial.infected_count();
  double previous = 0.0;
  auto credit = [&](double end) {
    double start = std::max(previous, burn_in);
    while (end > start) {
      auto k = static_cast<std::size_t>((start - burn_in) / width);
      k = std::min(k, batches - 1);
      const double edge = k + 1 == batches ? tr.total_time : burn_in + width * static_cast<double>(k + 1);
      const double stop = std::min(end, edge);
      area[k] += static_cast<double>(count) * (stop - start);
      if (stop <= start) break;
      start = stop;
    }
  };
  for (const TrajectoryEvent& ev : tr.events) {
    credit(ev.time);
    count = ev.new_state ? count + 1 : count - 1;
    previous = ev.time;
  }
  credit(tr.total_time);

  MeanEstimate m;
  m.batches = batches;
  double total = 0.0;
  for (double a : area) total += a;
  m.mean = total / window;
  if (batches < 2) {
    m.standard_error = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  double ss = 0.0;
  for (double a : area) {
    const double diff = a / width - m.mean;
    ss += diff * diff;
  }
  const double b = static_cast<double>(batches);
  m.standard_error = std::sqrt(ss / (b - 1.0) / b);
  return m;
}

std::size_t events_after(const Trajectory& tr, double burn_in) {
  const auto it = std::upper_bound(tr.events.begin(), tr.events.end(), burn_in,
                                   [](double t, const TrajectoryEvent& ev) { return t < ev.time; });
  return static_cast<std::size_t>(tr.events.end() - it);
}

double tv_distance(const StateDistribution& p1, const StateDistribution& p2) {
  if (p1.node_count != p2.node_count || p1.graph_fingerprint != p2.graph_fingerprint ||
      p1.probabilities.size() != p2.probabilities.size())
    throw std::invalid_argument("distributions are over different graphs");
  double sum = 0.0;
  for (std::size_t k = 0; k < p1.probabilities.size(); ++k)
    sum += std::abs(p1.probabilities[k] - p2.probabilities[k]);
  return std::min(1.0, sum / 2.0);
}

double stationary_event_rate(const Graph& g, const EpidemicParams& p, const StateDistribution& pi) {
  double rate = 0.0;
  for (std::uint64_t s = 0; s < pi.probabilities.size(); ++s) {
    if (pi.probabilities[s] == 0.0) continue;
    const Configuration x = Configuration::from_state(s, g.node_count());
    double exit = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i) exit += transition_rate(g, p, x, i);
    rate += pi.probabilities[s] * exit;
  }
  return rate;
}

double mean_infected(const StateDistribution& pi) {
  double mean = 0.0;
  for (std::uint64_t s = 0; s < pi.probabilities.size(); ++s)
    mean += pi.probabilities[s] * std::popcount(s);
  return mean;
}

std::vector<ReplicaSummary> run_replicas(const Graph& g, const EpidemicParams& p,
                                         const Configuration& x0, double t_max,
                                         const std::vector<std::uint64_t>& seeds,
                                         double burn_in_fraction,
                                         const StateDistribution* reference) {
  std::vector<ReplicaSummary> out(seeds.size());
  std::vector<std::string> errors(seeds.size());
  const double burn_in = burn_in_fraction * t_max;
  const auto count = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      const Trajectory tr = gillespie_run(g, p, x0, t_max, seeds[idx]);
      ReplicaSummary& s = out[idx];
      s.seed = seeds[idx];
      s.events_after_burn_in = events_after(tr, burn_in);
      s.infected = time_average_infected(tr, burn_in);
      if (reference) s.tv = tv_distance(empirical_distribution(tr, burn_in), *reference);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k)
    if (!errors[k].empty())
      throw std::runtime_error("replica with seed " + std::to_string(seeds[k]) + ": " + errors[k]);
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "time,agent,new_state\n";
  for (const TrajectoryEvent& ev : tr.events)
    os << format_real(ev.time) << ',' << ev.agent << ',' << static_cast<int>(ev.new_state) << '\n';
}

}  // namespace sis
