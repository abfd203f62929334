#ifndef SIS_KERNELS_HPP
#define SIS_KERNELS_HPP

// Exhaustive 2^N state-space reductions. Every kernel has a plain serial
// reference (`*_serial`) and an OpenMP version (`*_parallel`) that must agree
// with it; the library calls the parallel ones. States are N-bit integers,
// bit i = agent i, with neighbor bitmasks from Graph::adjacency_masks().

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace sis::kernels {

using AdjacencyMasks = std::span<const std::uint64_t>;

/// Number of edges with both endpoints in `state`.
inline std::uint32_t edges_inside(AdjacencyMasks adj, std::uint64_t state) {
  std::uint32_t twice = 0;
  for (std::uint64_t rest = state; rest != 0; rest &= rest - 1)
    twice += static_cast<std::uint32_t>(std::popcount(adj[std::countr_zero(rest)] & state));
  return twice / 2;
}

/// True when a's bit string (node 0 first) sorts before b's.
inline bool lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  return diff != 0 && ((a >> std::countr_zero(diff)) & 1u) == 0;
}

/// Streaming log-sum-exp accumulator; merge() is associative.
struct LogSumExp {
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;

  void add(double v);
  void merge(const LogSumExp& other);
  double value() const;
};

/// log sum_x exp(|x| log_ratio + e(x) log_gamma).
double log_partition_serial(AdjacencyMasks adj, double log_ratio, double log_gamma);
double log_partition_parallel(AdjacencyMasks adj, double log_ratio, double log_gamma);

/// Flags every attained (infected count n, infected edges e) pair.
/// Result is indexed [n * (edge_count + 1) + e].
std::vector<std::uint8_t> attained_pairs_serial(AdjacencyMasks adj, std::size_t edge_count);
std::vector<std::uint8_t> attained_pairs_parallel(AdjacencyMasks adj, std::size_t edge_count);

enum class Extreme { fewest, most };

/// Among states whose (n, e) pair is flagged in `targets` (same layout as
/// attained_pairs), the one with the fewest/most infected agents; ties go to
/// the lexicographically smallest bit string.
std::optional<std::uint64_t> select_state_serial(AdjacencyMasks adj, std::size_t edge_count,
                                                 std::span<const std::uint8_t> targets,
                                                 Extreme extreme);
std::optional<std::uint64_t> select_state_parallel(AdjacencyMasks adj, std::size_t edge_count,
                                                   std::span<const std::uint8_t> targets,
                                                   Extreme extreme);

/// max over single-agent infections x -> x+i of
/// |pi(x) q(x, x+i) - pi(x+i) q(x+i, x)| / (pi(x) q(x, x+i)),
/// with pi taken from the closed-form product weights.
double detailed_balance_residual_serial(AdjacencyMasks adj, double log_lambda, double log_mu,
                                        double log_gamma);
double detailed_balance_residual_parallel(AdjacencyMasks adj, double log_lambda, double log_mu,
                                          double log_gamma);

/// Worker count used by the parallel kernels (1 without OpenMP).
int thread_count();
/// Caps the worker count; values < 1 are ignored.
void set_thread_limit(int threads);

}  // namespace sis::kernels

#endif
