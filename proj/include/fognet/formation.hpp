#pragma once

// Online fog network formation.
//
// Phase 1 grows a network of ideal neighbors one node at a time until the
// optimized max-latency stops improving, fixing the target size, the ideal
// latency u_hat and the per-neighbor load lambda_hat. Phase 2 scans arriving
// nodes once, in order, and keeps a node iff its latency at lambda_hat is
// within gamma * u_hat. The framework loop raises gamma by tau after every
// scan that fails to fill the network.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fognet/distribution.hpp"
#include "fognet/queueing.hpp"

namespace fognet {

struct IdealNodeSpec {
  double best_comp_rate = 40.0;
  double best_proc_delay = 0.050;
  double min_distance = 0.0;
  double worst_comp_rate = 15.0;
  double worst_proc_delay = 0.050;
  double max_distance = 50.0;

  void validate() const;
};

struct Phase1Result {
  int j_hat = 0;
  double u_hat = 0.0;
  double lambda_hat = 0.0;
  double lambda_hat_local = 0.0;
  double lambda_hat_cloud = 0.0;
  /// Optimized max-latency for 0, 1, ... ideal neighbors as probed (+inf if infeasible).
  std::vector<double> latency_by_size;
  SolveResult solve;
};

inline constexpr int kDefaultMaxNetworkSize = 64;

/// Throws Infeasible if no size up to j_max admits a stable split.
Phase1Result phase1(const IdealNodeSpec& ideal, const ChannelParams& channel,
                    BandwidthScheme scheme, const LocalCloudSpec& local_cloud, double x,
                    int j_max = kDefaultMaxNetworkSize, const SolverTolerances& tol = {});

/// Local node, cloud and the given neighbors, with link rates computed for a
/// network of `network_size` neighbors.
ComputeSet make_compute_set(const ChannelParams& channel, BandwidthScheme scheme,
                            const LocalCloudSpec& local_cloud,
                            std::span<const NodeProfile> neighbors, int network_size);

/// Sequence of beacons seen by the initial node. Immutable once built.
class ArrivalStream {
 public:
  ArrivalStream() = default;
  explicit ArrivalStream(std::vector<NodeProfile> nodes) : nodes_(std::move(nodes)) {}

  std::size_t size() const noexcept { return nodes_.size(); }
  const NodeProfile& operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const NodeProfile> nodes() const noexcept { return nodes_; }

  friend bool operator==(const ArrivalStream&, const ArrivalStream&) = default;

 private:
  std::vector<NodeProfile> nodes_;
};

struct Selection {
  std::size_t arrival_index = 0;
  NodeProfile profile;
  double tx_rate = 0.0;
  double latency = 0.0;  // at lambda_hat
};

struct FormationOutcome {
  std::vector<Selection> selected;
  double gamma_used = 1.0;
  Phase1Result phase1;
  std::size_t observations_used = 0;
  bool complete = false;

  std::vector<NodeProfile> selected_profiles() const;
};

/// Latency of a candidate taking lambda_hat over a link of bandwidth fog_bw;
/// +inf when either of its queues would be unstable.
double candidate_latency(const NodeProfile& node, double lambda_hat, double fog_bw,
                         const ChannelParams& channel);

FormationOutcome phase2(const ArrivalStream& stream, double gamma, const Phase1Result& p1,
                        const ChannelParams& channel, BandwidthScheme scheme);

/// Observe-then-threshold rule: reject the first sample_size arrivals while
/// tracking their best latency, then accept anything strictly better. When the
/// remaining arrivals no longer exceed the open slots, accept all of them.
FormationOutcome secretary_baseline(const ArrivalStream& stream, std::size_t sample_size,
                                    const Phase1Result& p1, const ChannelParams& channel,
                                    BandwidthScheme scheme);

struct FrameworkParams {
  ChannelParams channel;
  BandwidthScheme scheme = BandwidthScheme::Equal;
  LocalCloudSpec local_cloud;
  double x = 10.0;
  double gamma0 = 1.0;
  double tau = 0.002;
  std::size_t max_iterations = 10000;
  /// Reuse the iteration-0 stream for every iteration.
  bool replay_stream = false;
  SolverTolerances tol;
};

/// Arrival stream for framework iteration `iteration`.
using StreamSource = std::function<ArrivalStream(std::size_t iteration)>;

struct FrameworkResult {
  FormationOutcome outcome;
  SolveResult solve;
  std::vector<double> gamma_trace;
  std::size_t iterations = 0;
  /// Realization consumed by the successful iteration.
  ArrivalStream final_stream;
};

/// Throws IterationCapExceeded when no iteration completes within the cap.
FrameworkResult run_framework(const FrameworkParams& params, const Phase1Result& p1,
                              const StreamSource& source);

struct GammaTrace {
  std::vector<double> gamma;  // gamma in force at each iteration
  std::size_t updates = 0;
};

/// Keep running the formation stage for a fixed number of iterations, raising
/// gamma after each incomplete scan.
GammaTrace trace_gamma(const FrameworkParams& params, const Phase1Result& p1,
                       const StreamSource& source, std::size_t iterations);

}  // namespace fognet
