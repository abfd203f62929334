#ifndef SIS_EQUILIBRIUM_HPP
#define SIS_EQUILIBRIUM_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sis/graph.hpp"
#include "sis/params.hpp"

namespace sis {

inline constexpr std::size_t kDefaultEnumerationLimit = 25;
/// Hard ceiling on --enum-limit; beyond this the 2^N tables cannot be addressed.
inline constexpr std::size_t kMaxEnumerationLimit = 40;

/// Thrown when an exhaustive operation is requested for N above the limit.
class EnumerationLimitError : public std::runtime_error {
 public:
  EnumerationLimitError(std::size_t node_count, std::size_t limit);
};

void check_enumeration_limit(const Graph& g, std::size_t limit);

/// Rate at which `agent` flips: lambda * gamma^(infected neighbors) when
/// susceptible, mu when infected.
double transition_rate(const Graph& g, const EpidemicParams& p, const Configuration& x,
                       NodeId agent);

/// log of (lambda/mu)^(1'x) * gamma^(x'Ax/2), the unnormalized stationary weight.
double log_unnormalized_prob(const Graph& g, const EpidemicParams& p, const Configuration& x);

inline double log_weight(const EpidemicParams& p, std::size_t infected, std::size_t infected_edges) {
  return static_cast<double>(infected) * p.log_ratio() +
         static_cast<double>(infected_edges) * p.log_gamma();
}

double log_partition_function(const Graph& g, const EpidemicParams& p,
                              std::size_t limit = kDefaultEnumerationLimit);
double partition_function(const Graph& g, const EpidemicParams& p,
                          std::size_t limit = kDefaultEnumerationLimit);

/// Dense PMF over all 2^N configurations, indexed by state integer
/// (bit i = agent i).
struct StateDistribution {
  std::size_t node_count = 0;
  std::uint64_t graph_fingerprint = 0;
  std::vector<double> probabilities;
  /// log Z for closed-form distributions; NaN for empirical ones.
  double log_partition = 0.0;

  double probability(std::uint64_t state) const { return probabilities.at(state); }
  double total() const;
};

StateDistribution equilibrium_distribution(const Graph& g, const EpidemicParams& p,
                                           std::size_t limit = kDefaultEnumerationLimit);

/// Generator of the CTMC. Only the N single-flip rates per state are
/// stored; the diagonal is their negated sum.
class RateMatrix {
 public:
  RateMatrix(std::size_t node_count, std::vector<double> flip_rates);

  std::size_t node_count() const { return node_count_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << node_count_; }
  /// q(x, x xor 2^agent).
  double flip_rate(std::uint64_t state, std::size_t agent) const {
    return flip_rates_[state * node_count_ + agent];
  }
  double exit_rate(std::uint64_t state) const;
  /// q(x, y) for any pair; zero unless x and y differ in exactly one bit.
  double entry(std::uint64_t x, std::uint64_t y) const;

 private:
  std::size_t node_count_;
  std::vector<double> flip_rates_;
};

RateMatrix build_rate_matrix(const Graph& g, const EpidemicParams& p,
                             std::size_t limit = kDefaultEnumerationLimit);

/// Largest relative detailed-balance violation of the closed-form PMF
/// against the transition rates.
double check_detailed_balance(const Graph& g, const EpidemicParams& p,
                              std::size_t limit = kDefaultEnumerationLimit);

/// Stationary vector of Q by power iteration on the uniformized chain
/// P = I + Q / Lambda, started from the uniform distribution. Iterates
/// until the L1 change falls below `tolerance` or `max_iterations` runs out.
struct StationaryResult {
  std::vector<double> probabilities;
  std::size_t iterations = 0;
  double last_change = 0.0;
};
StationaryResult stationary_by_uniformization(const RateMatrix& q, double tolerance = 1e-15,
                                              std::size_t max_iterations = 2'000'000);

enum class Ordering { less, equal, greater };
std::string to_string(Ordering o);

/// Orders pi(x1) against pi(x2) without Z: exact when the parameters carry
/// rationals, otherwise within kLogTieTolerance in the log domain.
Ordering compare_configs(const Graph& g, const EpidemicParams& p, const Configuration& x1,
                         const Configuration& x2);

/// CSV with header `state_bits,log_weight,probability`, node 0 leftmost.
void write_distribution_csv(std::ostream& os, const Graph& g, const EpidemicParams& p,
                            const StateDistribution& dist);

}  // namespace sis

#endif
