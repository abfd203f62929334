#ifndef SIS_SIMULATION_HPP
#define SIS_SIMULATION_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sis/equilibrium.hpp"
#include "sis/graph.hpp"
#include "sis/params.hpp"

namespace sis {

struct TrajectoryEvent {
  double time = 0.0;
  NodeId agent = 0;
  std::uint8_t new_state = 0;
};

/// One sample path of the SIS chain on [0, total_time].
struct Trajectory {
  Configuration initial;
  std::vector<TrajectoryEvent> events;
  double total_time = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t graph_fingerprint = 0;

  Configuration final_state() const;
};

/// Direct-method stochastic simulation up to t_max. Rates live in a sum
/// tree, so an event costs O(deg log N). Deterministic in `seed`.
/// Throws std::overflow_error when lambda * gamma^maxdeg is not finite.
Trajectory gillespie_run(const Graph& g, const EpidemicParams& p, const Configuration& x0,
                         double t_max, std::uint64_t seed);

/// Time-weighted occupancy over (burn_in, total_time]. Needs the dense
/// 2^N table, so N is bounded by `limit`.
StateDistribution empirical_distribution(const Trajectory& tr, double burn_in,
                                         std::size_t limit = kDefaultEnumerationLimit);

struct MeanEstimate {
  double mean = 0.0;
  /// Batch-means standard error (NaN with fewer than two batches).
  double standard_error = 0.0;
  std::size_t batches = 0;
};

/// Time-averaged infected count over (burn_in, total_time], with the window
/// split into `batches` equal slices for the error estimate.
MeanEstimate time_average_infected(const Trajectory& tr, double burn_in, std::size_t batches = 20);

/// Events strictly after burn_in.
std::size_t events_after(const Trajectory& tr, double burn_in);

/// (1/2) sum |p1 - p2|; throws std::invalid_argument for different graphs.
double tv_distance(const StateDistribution& p1, const StateDistribution& p2);

/// Sum over x of pi(x) * (total exit rate of x): the mean event rate of
/// the stationary chain.
double stationary_event_rate(const Graph& g, const EpidemicParams& p,
                             const StateDistribution& pi);

/// Mean infected count under a dense distribution.
double mean_infected(const StateDistribution& pi);

struct ReplicaSummary {
  std::uint64_t seed = 0;
  std::size_t events_after_burn_in = 0;
  MeanEstimate infected;
  std::optional<double> tv;
};

/// Independent runs, one per seed, in parallel. burn-in is
/// burn_in_fraction * t_max; TV is filled when `reference` is given.
std::vector<ReplicaSummary> run_replicas(const Graph& g, const EpidemicParams& p,
                                         const Configuration& x0, double t_max,
                                         const std::vector<std::uint64_t>& seeds,
                                         double burn_in_fraction,
                                         const StateDistribution* reference);

/// CSV `time,agent,new_state`.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

}  // namespace sis

#endif
