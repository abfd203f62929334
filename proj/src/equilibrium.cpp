#include "sis/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "sis/io.hpp"
#include "sis/kernels.hpp"

namespace sis {

namespace {

void check_length(const Graph& g, const Configuration& x) {
  if (x.size() != g.node_count())
    throw std::invalid_argument("configuration length " + std::to_string(x.size()) +
                                " does not match node count " + std::to_string(g.node_count()));
}

}  // namespace

EnumerationLimitError::EnumerationLimitError(std::size_t node_count, std::size_t limit)
    : std::runtime_error("N=" + std::to_string(node_count) + " exceeds the enumeration limit of " +
                         std::to_string(limit) + "; raise it with --enum-limit (max " +
                         std::to_string(kMaxEnumerationLimit) + ")") {}

void check_enumeration_limit(const Graph& g, std::size_t limit) {
  const std::size_t effective = std::min(limit, kMaxEnumerationLimit);
  if (g.node_count() > effective) throw EnumerationLimitError(g.node_count(), effective);
}

double transition_rate(const Graph& g, const EpidemicParams& p, const Configuration& x,
                       NodeId agent) {
  check_length(g, x);
  if (agent >= g.node_count())
    throw std::out_of_range("agent " + std::to_string(agent) + " out of range");
  if (x[agent]) return p.mu();
  std::size_t infected_nbrs = 0;
  for (NodeId j : g.neighbors(agent))
    if (x[j]) ++infected_nbrs;
  return p.lambda() * std::pow(p.gamma(), static_cast<double>(infected_nbrs));
}

double log_unnormalized_prob(const Graph& g, const EpidemicParams& p, const Configuration& x) {
  check_length(g, x);
  return log_weight(p, x.infected_count(), infected_edge_count(g, x));
}

double log_partition_function(const Graph& g, const EpidemicParams& p, std::size_t limit) {
  check_enumeration_limit(g, limit);
  return kernels::log_partition_parallel(g.adjacency_masks(), p.log_ratio(), p.log_gamma());
}

double partition_function(const Graph& g, const EpidemicParams& p, std::size_t limit) {
  return std::exp(log_partition_function(g, p, limit));
}

double StateDistribution::total() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

StateDistribution equilibrium_distribution(const Graph& g, const EpidemicParams& p,
                                           std::size_t limit) {
  StateDistribution dist;
  dist.node_count = g.node_count();
  dist.graph_fingerprint = g.fingerprint();
  dist.log_partition = log_partition_function(g, p, limit);

  const auto& adj = g.adjacency_masks();
  const std::int64_t total = std::int64_t{1} << g.node_count();
  dist.probabilities.resize(static_cast<std::size_t>(total));
  // Shift by the largest term and divide by the summed weights; this keeps
  // exact ratios (0.4 rather than exp(-log 2.5)) where the weights allow it.
  double shift = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count()) reduction(max : shift)
  for (std::int64_t s = 0; s < total; ++s) {
    const auto x = static_cast<std::uint64_t>(s);
    const double lw = std::popcount(x) * p.log_ratio() + kernels::edges_inside(adj, x) * p.log_gamma();
    dist.probabilities[x] = lw;
    shift = std::max(shift, lw);
  }
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
  for (std::int64_t s = 0; s < total; ++s)
    dist.probabilities[s] = std::exp(dist.probabilities[s] - shift);
  // Serial sum so the result does not depend on the thread count.
  double sum = 0.0;
  for (double w : dist.probabilities) sum += w;
  for (double& w : dist.probabilities) w /= sum;
  return dist;
}

RateMatrix::RateMatrix(std::size_t node_count, std::vector<double> flip_rates)
    : node_count_(node_count), flip_rates_(std::move(flip_rates)) {
  if (flip_rates_.size() != (std::size_t{1} << node_count) * node_count)
    throw std::invalid_argument("rate table has the wrong size");
}

double RateMatrix::exit_rate(std::uint64_t state) const {
  double total = 0.0;
  for (std::size_t i = 0; i < node_count_; ++i) total += flip_rate(state, i);
  return total;
}

double RateMatrix::entry(std::uint64_t x, std::uint64_t y) const {
  if (x == y) return -exit_rate(x);
  const std::uint64_t diff = x ^ y;
  if (std::popcount(diff) != 1) return 0.0;
  return flip_rate(x, static_cast<std::size_t>(std::countr_zero(diff)));
}

RateMatrix build_rate_matrix(const Graph& g, const EpidemicParams& p, std::size_t limit) {
  check_enumeration_limit(g, limit);
  const std::size_t n = g.node_count();
  const auto& adj = g.adjacency_masks();
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> rates(dim * n);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::size_t i = 0; i < n; ++i) {
      double r;
      if ((x >> i) & 1u) {
        r = p.mu();
      } else {
        const int d = std::popcount(adj[i] & x);
        r = p.lambda() * std::pow(p.gamma(), d);
      }
      if (!std::isfinite(r)) throw std::overflow_error("transition rate overflow");
      rates[x * n + i] = r;
    }
  }
  return RateMatrix(n, std::move(rates));
}

double check_detailed_balance(const Graph& g, const EpidemicParams& p, std::size_t limit) {
  check_enumeration_limit(g, limit);
  return kernels::detailed_balance_residual_parallel(g.adjacency_masks(), std::log(p.lambda()),
                                                     std::log(p.mu()), p.log_gamma());
}

StationaryResult stationary_by_uniformization(const RateMatrix& q, double tolerance,
                                              std::size_t max_iterations) {
  const std::uint64_t dim = q.dimension();
  const std::size_t n = q.node_count();
  double uniform_rate = 0.0;
  for (std::uint64_t x = 0; x < dim; ++x) uniform_rate = std::max(uniform_rate, q.exit_rate(x));
  // Strictly above the largest exit rate keeps the chain aperiodic.
  uniform_rate *= 1.05;

  StationaryResult out;
  std::vector<double> current(dim, 1.0 / static_cast<double>(dim));
  std::vector<double> next(dim);
  std::vector<double> stay(dim);
  for (std::uint64_t x = 0; x < dim; ++x) stay[x] = 1.0 - q.exit_rate(x) / uniform_rate;

  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    // next[y] = current[y] * stay[y] + sum_i current[y ^ bit_i] * q(y ^ bit_i, y) / Lambda
    for (std::uint64_t y = 0; y < dim; ++y) {
      double acc = current[y] * stay[y];
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t x = y ^ (std::uint64_t{1} << i);
        acc += current[x] * q.flip_rate(x, i) / uniform_rate;
      }
      next[y] = acc;
    }
    const double mass = std::accumulate(next.begin(), next.end(), 0.0);
    double change = 0.0;
    for (std::uint64_t y = 0; y < dim; ++y) {
      next[y] /= mass;
      change += std::abs(next[y] - current[y]);
    }
    current.swap(next);
    out.last_change = change;
    if (change < tolerance) {
      ++out.iterations;
      break;
    }
  }
  out.probabilities = std::move(current);
  return out;
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
  }
  return "?";
}

Ordering compare_configs(const Graph& g, const EpidemicParams& p, const Configuration& x1,
                         const Configuration& x2) {
  check_length(g, x1);
  check_length(g, x2);
  const auto n1 = static_cast<std::int64_t>(x1.infected_count());
  const auto n2 = static_cast<std::int64_t>(x2.infected_count());
  const auto e1 = static_cast<std::int64_t>(infected_edge_count(g, x1));
  const auto e2 = static_cast<std::int64_t>(infected_edge_count(g, x2));
  const int sign = log_weight_sign(p, n1 - n2, e1 - e2);
  if (sign > 0) return Ordering::greater;
  if (sign < 0) return Ordering::less;
  return Ordering::equal;
}

void write_distribution_csv(std::ostream& os, const Graph& g, const EpidemicParams& p,
                            const StateDistribution& dist) {
  if (dist.node_count != g.node_count())
    throw std::invalid_argument("distribution does not belong to this graph");
  os << "state_bits,log_weight,probability\n";
  for (std::uint64_t s = 0; s < dist.probabilities.size(); ++s) {
    const Configuration x = Configuration::from_state(s, g.node_count());
    os << x.to_string() << ',' << format_real(log_unnormalized_prob(g, p, x)) << ','
       << format_real(dist.probabilities[s]) << '\n';
  }
}

}  // namespace sis
