#pragma once

// Subcommand bodies: each turns a configuration into CSV files in a directory.

#include <string>
#include <vector>

#include "fognet/analysis.hpp"
#include "fognet/config.hpp"
#include "fognet/csv.hpp"

namespace fognet {

struct OfflinePoint {
  double distance = 0.0;
  int neighbors = 0;
  double latency = 0.0;  // +inf when the split is infeasible
  double alpha_local = 0.0;
  double alpha_cloud = 0.0;
  double alpha_fog = 0.0;
  double efficiency = 1.0;
};

struct OfflineSummary {
  double distance = 0.0;
  int best_neighbors = 0;
  double best_latency = 0.0;
  double cloud_only_latency = 0.0;
  /// (cloud_only - best) / cloud_only, percent.
  double reduction_percent = 0.0;
};

struct OfflineSweep {
  std::vector<OfflinePoint> points;
  std::vector<OfflineSummary> summary;
};

/// Min-max latency against the number of identical neighbors at each distance.
OfflineSweep offline_size_sweep(const ExperimentConfig& cfg);

/// Selection setting for the closed-form analytics, honoring pinned j_hat / lambda_hat.
SelectionSetting selection_setting(const ExperimentConfig& cfg);
ArrivalDistributions arrival_distributions(const ArrivalModel& arrival);
NodeSampler node_sampler(const ArrivalModel& arrival);

void cmd_run(const ExperimentConfig& cfg, const std::string& out_dir);
/// One configuration per sweep value: the base assignments plus `axis = value`.
void cmd_sweep(const std::vector<Assignment>& base, const std::string& out_dir);
void cmd_analyze(const ExperimentConfig& cfg, const std::string& out_dir);
void cmd_offline_sweep(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace fognet
