#pragma once

// Latency model of a fog node offloading to neighbors and a remote cloud:
// wireless service rates on shared bandwidth, M/D/1 transmission queues and
// M/D/1 computation queues with a load-proportional processing term.

#include <variant>

namespace fognet {

/// Loads are rejected once they reach (1 - kStabilityMargin) of a service rate
/// wherever a "maximum admissible load" is needed.
inline constexpr double kStabilityMargin = 1e-9;

/// dBm (or dBm/Hz) to W (or W/Hz).
double dbm_to_watts(double dbm);

struct ChannelParams {
  double tx_power = 0.1;             // W
  double beta1 = 1e-3;               // path-loss constant
  double beta2 = 4.0;                // path-loss exponent
  double fading = 1.0;               // average fading gain h
  double noise_psd = 3.981071705534986e-21;  // W/Hz (-174 dBm/Hz)
  double total_bandwidth = 3e6;      // Hz
  double packet_bits = 64.0 * 1024.0 * 8.0;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

enum class BandwidthScheme { Equal, CloudCentric };

struct NodeProfile {
  double distance = 0.0;    // m
  double comp_rate = 0.0;   // packets/s
  double proc_delay = 0.0;  // s/packet

  friend bool operator==(const NodeProfile&, const NodeProfile&) = default;
};

struct LocalCloudSpec {
  double local_comp_rate = 20.0;    // packets/s
  double local_proc_delay = 0.050;  // s/packet
  double cloud_proc_delay = 0.025;  // s/packet
  double cloud_distance = 120.0;    // m

  void validate() const;
};

struct BandwidthShare {
  double fog = 0.0;    // Hz per neighbor link
  double cloud = 0.0;  // Hz on the cloud link
};

/// Per-link bandwidth when `neighbors` fog links and one cloud link share `total`.
BandwidthShare bandwidth_per_node(BandwidthScheme scheme, double total, int neighbors);

/// beta1 within 1 m, beta1 * d^-beta2 beyond.
double channel_gain(const ChannelParams& params, double distance);

/// Packets per second over a link of bandwidth `bw` at distance `distance`.
double service_rate(const ChannelParams& params, double bw, double distance);

/// M/D/1 waiting time plus one deterministic service time.
/// Throws UnstableQueue when lambda >= mu.
double transmission_delay(double lambda, double mu);

/// M/D/1 computation queue: waiting, application fetch (1/mu) and
/// processing (omega * lambda). Throws UnstableQueue when lambda >= mu.
double fog_compute_delay(double lambda, double mu, double omega);

/// The cloud computes without queueing.
double cloud_compute_delay(double lambda, double omega_c);

struct LocalDest {
  double comp_rate;
  double proc_delay;
};
struct CloudDest {
  double tx_rate;
  double proc_delay;
};
struct NeighborDest {
  double tx_rate;
  NodeProfile profile;
};
using Destination = std::variant<LocalDest, CloudDest, NeighborDest>;

/// End-to-end latency of a destination at load lambda. Throws UnstableQueue.
double total_delay(const Destination& dest, double lambda);

/// Same as total_delay but +inf outside the stability region.
double total_delay_or_inf(const Destination& dest, double lambda);

/// Largest service rate bounding the load a destination can take.
double stability_cap(const Destination& dest);

}  // namespace fognet
