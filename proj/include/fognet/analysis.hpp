#pragma once

// Closed-form formation analytics: a lower bound on the probability that an
// arriving node passes the threshold, the resulting probability of filling
// the network within N observations, the worst-case limit of gamma, and the
// smallest gamma that forms the network almost surely.

#include <cstddef>
#include <cstdint>
#include <functional>

#include "fognet/formation.hpp"
#include "fognet/queueing.hpp"

namespace fognet {

/// Right-continuous CDF together with its left limit.
class Cdf {
 public:
  Cdf(std::function<double(double)> right, std::function<double(double)> left)
      : right_(std::move(right)), left_(std::move(left)) {}

  /// Uniform on [lo, hi]; a point mass when lo == hi.
  static Cdf uniform(double lo, double hi);
  /// Distance of a point uniform over a disk of the given radius: r^2 / R^2.
  static Cdf disk(double radius);

  double at(double x) const { return right_(x); }      // P(X <= x)
  double below(double x) const { return left_(x); }    // P(X < x)

 private:
  std::function<double(double)> right_;
  std::function<double(double)> left_;
};

struct ArrivalDistributions {
  Cdf distance;
  Cdf comp_rate;
  Cdf proc_delay;
};

/// Everything the selection-probability bound depends on.
struct SelectionSetting {
  IdealNodeSpec ideal;
  Phase1Result p1;
  ChannelParams channel;
  BandwidthScheme scheme = BandwidthScheme::Equal;
};

/// Per-attribute acceptance limits of the three independent events at gamma.
struct EventThresholds {
  double max_distance = 0.0;   // d <= max_distance (negative: unreachable)
  double min_comp_rate = 0.0;  // mu_n >= min_comp_rate
  double max_proc_delay = 0.0; // omega_n <= max_proc_delay
  double ideal_tx_rate = 0.0;  // ideal link rate at the phase-1 network size
  double fog_bandwidth = 0.0;
};

EventThresholds event_thresholds(double gamma, const SelectionSetting& s);

/// Lower bound p'_s on the per-arrival selection probability.
double p_select(double gamma, const SelectionSetting& s, const ArrivalDistributions& dists);

/// P(Binomial(n, p_s) >= j_hat).
double p_form(double p_s, std::size_t n, std::size_t j_hat);

/// Worst-case neighbor latency at lambda_hat over u_hat; +inf when that
/// neighbor's queues are unstable.
double gamma_bar(const SelectionSetting& s);

inline constexpr double kFormationTarget = 1.0 - 1e-6;

/// Smallest gamma in [1, gamma_bar] with p_form >= kFormationTarget, to 1e-4.
/// Throws NotReached otherwise.
double gamma_bar_s(const SelectionSetting& s, const ArrivalDistributions& dists, std::size_t n,
                   std::size_t j_hat, double tolerance = 1e-4);

double competitive_ratio(double alg_latency, double opt_latency);

/// Sampling model matching ArrivalDistributions for the Monte Carlo check.
struct NodeSampler {
  double disk_radius = 50.0;
  double comp_rate_min = 15.0, comp_rate_max = 40.0;
  double proc_delay_min = 0.05, proc_delay_max = 0.10;
};

struct EventEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double frequency() const { return samples ? static_cast<double>(hits) / samples : 0.0; }
  double standard_error() const;
};

/// Monte Carlo frequency of the three-event intersection, evaluated directly
/// on the delay inequalities of each sampled node. Parallel kernel.
EventEstimate estimate_selection_events(double gamma, const SelectionSetting& s,
                                        const NodeSampler& sampler, std::uint64_t samples,
                                        std::uint64_t seed);
/// Serial reference of the same estimator; identical output.
EventEstimate estimate_selection_events_serial(double gamma, const SelectionSetting& s,
                                               const NodeSampler& sampler,
                                               std::uint64_t samples, std::uint64_t seed);

}  // namespace fognet
