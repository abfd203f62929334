#include "sis/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef SIS_HAVE_OPENMP
#include <omp.h>
#endif

namespace sis::kernels {

namespace {

std::int64_t state_count(AdjacencyMasks adj) { return std::int64_t{1} << adj.size(); }

struct Pick {
  bool found = false;
  std::uint64_t state = 0;
  int count = 0;
};

// Preference order used by select_state_*.
bool better(const Pick& candidate, const Pick& incumbent, Extreme extreme) {
  if (!candidate.found) return false;
  if (!incumbent.found) return true;
  if (candidate.count != incumbent.count)
    return extreme == Extreme::fewest ? candidate.count < incumbent.count
                                      : candidate.count > incumbent.count;
  return lex_less(candidate.state, incumbent.state);
}

Pick pick_of(AdjacencyMasks adj, std::size_t edge_count, std::span<const std::uint8_t> targets,
             std::uint64_t state) {
  const int n = std::popcount(state);
  const std::uint32_t e = edges_inside(adj, state);
  if (!targets[static_cast<std::size_t>(n) * (edge_count + 1) + e]) return {};
  return {true, state, n};
}

double residual_at(AdjacencyMasks adj, double log_lambda, double log_mu, double log_gamma,
                   std::uint64_t x) {
  const double log_ratio = log_lambda - log_mu;
  const double log_pi_x = std::popcount(x) * log_ratio + edges_inside(adj, x) * log_gamma;
  double worst = 0.0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (x & bit) continue;
    const std::uint64_t y = x | bit;
    const int infected_nbrs = std::popcount(adj[i] & x);
    const double forward = log_pi_x + log_lambda + infected_nbrs * log_gamma;
    const double log_pi_y = std::popcount(y) * log_ratio + edges_inside(adj, y) * log_gamma;
    const double backward = log_pi_y + log_mu;
    worst = std::max(worst, std::abs(std::expm1(backward - forward)));
  }
  return worst;
}

int g_thread_limit = 0;

}  // namespace

void LogSumExp::add(double v) {
  if (v > max) {
    sum = sum * std::exp(max - v) + 1.0;
    max = v;
  } else {
    sum += std::exp(v - max);
  }
}

void LogSumExp::merge(const LogSumExp& other) {
  if (other.sum == 0.0) return;
  if (sum == 0.0) {
    *this = other;
    return;
  }
  if (other.max > max) {
    sum = sum * std::exp(max - other.max) + other.sum;
    max = other.max;
  } else {
    sum += other.sum * std::exp(other.max - max);
  }
}

double LogSumExp::value() const { return max + std::log(sum); }

double log_partition_serial(AdjacencyMasks adj, double log_ratio, double log_gamma) {
  LogSumExp acc;
  const std::int64_t total = state_count(adj);
  for (std::int64_t s = 0; s < total; ++s) {
    const auto x = static_cast<std::uint64_t>(s);
    acc.add(std::popcount(x) * log_ratio + edges_inside(adj, x) * log_gamma);
  }
  return acc.value();
}

double log_partition_parallel(AdjacencyMasks adj, double log_ratio, double log_gamma) {
#ifdef SIS_HAVE_OPENMP
  const std::int64_t total = state_count(adj);
  std::vector<LogSumExp> partial(static_cast<std::size_t>(thread_count()));
#pragma omp parallel num_threads(static_cast<int>(partial.size()))
  {
    LogSumExp local;
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < total; ++s) {
      const auto x = static_cast<std::uint64_t>(s);
      local.add(std::popcount(x) * log_ratio + edges_inside(adj, x) * log_gamma);
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  LogSumExp acc;
  for (const auto& p : partial) acc.merge(p);
  return acc.value();
#else
  return log_partition_serial(adj, log_ratio, log_gamma);
#endif
}

std::vector<std::uint8_t> attained_pairs_serial(AdjacencyMasks adj, std::size_t edge_count) {
  std::vector<std::uint8_t> seen((adj.size() + 1) * (edge_count + 1), 0);
  const std::int64_t total = state_count(adj);
  for (std::int64_t s = 0; s < total; ++s) {
    const auto x = static_cast<std::uint64_t>(s);
    seen[static_cast<std::size_t>(std::popcount(x)) * (edge_count + 1) + edges_inside(adj, x)] = 1;
  }
  return seen;
}

std::vector<std::uint8_t> attained_pairs_parallel(AdjacencyMasks adj, std::size_t edge_count) {
#ifdef SIS_HAVE_OPENMP
  const std::size_t cells = (adj.size() + 1) * (edge_count + 1);
  const std::int64_t total = state_count(adj);
  std::vector<std::uint8_t> seen(cells, 0);
#pragma omp parallel num_threads(thread_count())
  {
    std::vector<std::uint8_t> local(cells, 0);
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < total; ++s) {
      const auto x = static_cast<std::uint64_t>(s);
      local[static_cast<std::size_t>(std::popcount(x)) * (edge_count + 1) + edges_inside(adj, x)] = 1;
    }
#pragma omp critical(sis_attained_pairs)
    for (std::size_t c = 0; c < cells; ++c) seen[c] |= local[c];
  }
  return seen;
#else
  return attained_pairs_serial(adj, edge_count);
#endif
}

std::optional<std::uint64_t> select_state_serial(AdjacencyMasks adj, std::size_t edge_count,
                                                 std::span<const std::uint8_t> targets,
                                                 Extreme extreme) {
  Pick best;
  const std::int64_t total = state_count(adj);
  for (std::int64_t s = 0; s < total; ++s) {
    const Pick p = pick_of(adj, edge_count, targets, static_cast<std::uint64_t>(s));
    if (better(p, best, extreme)) best = p;
  }
  if (!best.found) return std::nullopt;
  return best.state;
}

std::optional<std::uint64_t> select_state_parallel(AdjacencyMasks adj, std::size_t edge_count,
                                                   std::span<const std::uint8_t> targets,
                                                   Extreme extreme) {
#ifdef SIS_HAVE_OPENMP
  const std::int64_t total = state_count(adj);
  std::vector<Pick> partial(static_cast<std::size_t>(thread_count()));
#pragma omp parallel num_threads(static_cast<int>(partial.size()))
  {
    Pick local;
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < total; ++s) {
      const Pick p = pick_of(adj, edge_count, targets, static_cast<std::uint64_t>(s));
      if (better(p, local, extreme)) local = p;
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  Pick best;
  for (const auto& p : partial)
    if (better(p, best, extreme)) best = p;
  if (!best.found) return std::nullopt;
  return best.state;
#else
  return select_state_serial(adj, edge_count, targets, extreme);
#endif
}

double detailed_balance_residual_serial(AdjacencyMasks adj, double log_lambda, double log_mu,
                                        double log_gamma) {
  double worst = 0.0;
  const std::int64_t total = state_count(adj);
  for (std::int64_t s = 0; s < total; ++s)
    worst = std::max(worst, residual_at(adj, log_lambda, log_mu, log_gamma,
                                        static_cast<std::uint64_t>(s)));
  return worst;
}

double detailed_balance_residual_parallel(AdjacencyMasks adj, double log_lambda, double log_mu,
                                          double log_gamma) {
#ifdef SIS_HAVE_OPENMP
  double worst = 0.0;
  const std::int64_t total = state_count(adj);
#pragma omp parallel for schedule(static) reduction(max : worst) num_threads(thread_count())
  for (std::int64_t s = 0; s < total; ++s)
    worst = std::max(worst, residual_at(adj, log_lambda, log_mu, log_gamma,
                                        static_cast<std::uint64_t>(s)));
  return worst;
#else
  return detailed_balance_residual_serial(adj, log_lambda, log_mu, log_gamma);
#endif
}

int thread_count() {
#ifdef SIS_HAVE_OPENMP
  const int available = omp_get_max_threads();
  return g_thread_limit > 0 ? std::min(available, g_thread_limit) : available;
#else
  return 1;
#endif
}

void set_thread_limit(int threads) {
  if (threads > 0) g_thread_limit = threads;
}

}  // namespace sis::kernels
