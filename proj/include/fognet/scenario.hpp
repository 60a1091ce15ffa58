#pragma once

// Experiment description and Monte Carlo replication harness.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fognet/formation.hpp"
#include "fognet/queueing.hpp"

namespace fognet {

/// Where neighbors come from: uniform over a disk around the initial node,
/// with uniformly drawn computing rate and processing delay.
struct ArrivalModel {
  double disk_radius = 50.0;
  double comp_rate_min = 15.0;
  double comp_rate_max = 40.0;
  double proc_delay_min = 0.050;
  double proc_delay_max = 0.050;
};

struct ScenarioConfig {
  double x_rate = 10.0;
  ChannelParams channel;
  BandwidthScheme scheme = BandwidthScheme::Equal;
  LocalCloudSpec local_cloud;
  IdealNodeSpec ideal;
  ArrivalModel arrival;
  std::size_t n_observations = 300;
  double tau = 0.002;
  double gamma0 = 1.0;
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  std::size_t baseline_sample = 110;
  std::size_t max_iterations = 10000;
  int j_max = kDefaultMaxNetworkSize;
  bool replay_streams = false;
  /// Run phase 2 once with this gamma and no observation budget.
  std::optional<double> fixed_gamma;
  /// Stream length standing in for an unlimited budget in fixed-gamma mode.
  std::size_t fixed_gamma_budget = 100000;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
  FrameworkParams framework_params() const;
};

/// n_observations arrivals for (rep_index, iteration); a pure function of its arguments.
ArrivalStream generate_stream(const ScenarioConfig& cfg, std::size_t rep_index,
                              std::size_t iteration = 0);
ArrivalStream generate_stream(const ScenarioConfig& cfg, std::size_t rep_index,
                              std::size_t iteration, std::size_t length);

Phase1Result phase1(const ScenarioConfig& cfg);

struct ReplicationRecord {
  std::size_t index = 0;
  bool ok = false;
  std::string failure;  // exception kind when !ok

  double latency = 0.0;  // u* of the formed network
  double gamma = 0.0;
  double baseline_latency = 0.0;
  std::size_t observations = 0;
  std::size_t iterations = 0;
  double alpha_local = 0.0;
  double alpha_cloud = 0.0;
  double alpha_fog = 0.0;
  std::vector<double> per_node_latency;
  double efficiency = 1.0;
  /// Optimized latency over the best j_hat nodes of the same realization.
  double opt_latency = 0.0;
  double competitive_ratio = 1.0;
  double fog_tx_rate = 0.0;  // mean link rate of selected neighbors
  double u_hat = 0.0;
  int j_hat = 0;
};

/// One replication: framework plus secretary baseline on the same realization.
ReplicationRecord run_replication(const ScenarioConfig& cfg, const Phase1Result& p1,
                                  std::size_t rep_index);

struct Stat {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
};

struct AggregateReport {
  std::size_t replications = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  Stat latency, gamma, baseline_latency, observations, iterations;
  Stat alpha_local, alpha_cloud, alpha_fog, efficiency, competitive_ratio, fog_tx_rate;
  /// (baseline - framework) / baseline, in percent, from the two means.
  double gap_percent = 0.0;
};

Stat summarize(const std::vector<double>& values);
AggregateReport aggregate(const std::vector<ReplicationRecord>& records);

/// Replications in parallel (OpenMP when available). Same records as the
/// serial reference, in index order.
std::vector<ReplicationRecord> run_replications(const ScenarioConfig& cfg, const Phase1Result& p1);
std::vector<ReplicationRecord> run_replications_serial(const ScenarioConfig& cfg,
                                                       const Phase1Result& p1);

struct ReplicationRun {
  Phase1Result phase1;
  std::vector<ReplicationRecord> records;
  AggregateReport report;
};

/// Phase 1, all replications, aggregation. Throws Infeasible if phase 1 fails.
ReplicationRun run_replications(const ScenarioConfig& cfg);

/// gamma over `iterations` framework iterations of replication `rep_index`.
GammaTrace run_gamma_trace(const ScenarioConfig& cfg, const Phase1Result& p1,
                           std::size_t iterations, std::size_t rep_index = 0);

}  // namespace fognet
