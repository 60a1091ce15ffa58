#pragma once

// Offline min-max task distribution over a fixed set of destinations.
//
// Every delay curve is strictly increasing in its load, so the optimum is
// found by bisecting on the common latency level u: each destination can
// absorb max_load_at(u) packets/s without exceeding u, and the smallest u
// whose total absorbable load covers the offered load x is the equalized
// level. Destinations whose zero-load latency is already above that level
// stay idle; they still count towards the max, since the objective ranges
// over every destination of the network.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fognet/queueing.hpp"

namespace fognet {

struct ComputeSet {
  std::optional<LocalDest> local;
  std::optional<CloudDest> cloud;
  std::vector<NeighborDest> neighbors;

  /// Present destinations in the order local, cloud, neighbors.
  std::vector<Destination> destinations() const;
};

struct TaskDistribution {
  double alpha_local = 0.0;
  double alpha_cloud = 0.0;
  std::vector<double> alpha_neighbors;
  double total_rate = 0.0;

  double alpha_fog() const;  // sum over neighbors
};

struct SolverTolerances {
  double u_rel = 1e-9;
  double lambda_rel = 1e-10;
  double spread_rel = 1e-6;
  double stability_margin = kStabilityMargin;
};

struct SolveResult {
  TaskDistribution distribution;
  double u_star = 0.0;
  /// Equalized level shared by every loaded destination.
  double equalized_level = 0.0;
  /// Same order as ComputeSet::destinations().
  std::vector<double> loads;
  std::vector<double> per_node_latency;
  double efficiency = 1.0;

  /// Every destination carries load.
  bool interior() const;
};

using DelayCurve = std::function<double(double)>;

/// Largest load in [0, (1 - margin) * rate_cap] whose delay stays within u.
double max_load_at(double u, const DelayCurve& delay, double rate_cap,
                   const SolverTolerances& tol = {});

/// Throws Infeasible when the destinations cannot carry x stably.
SolveResult solve_min_max(const ComputeSet& nodes, double x, const SolverTolerances& tol = {});

/// One plus total idle time over total busy time.
double efficiency(std::span<const double> latencies);

}  // namespace fognet
