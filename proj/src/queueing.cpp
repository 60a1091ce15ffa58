#include "fognet/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fognet/errors.hpp"

namespace fognet {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Shared M/D/1 core: lambda / (2 mu (mu - lambda)) + 1 / mu.
double md1(double lambda, double mu) {
  if (!(lambda < mu)) {
    throw UnstableQueue("arrival rate " + std::to_string(lambda) +
                        " not below service rate " + std::to_string(mu));
  }
  return lambda / (2.0 * mu * (mu - lambda)) + 1.0 / mu;
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void ChannelParams::validate() const {
  require(tx_power > 0, "tx_power must be positive");
  require(beta1 > 0, "beta1 must be positive");
  require(beta2 >= 2, "beta2 must be at least 2");
  require(fading > 0 && fading <= 1, "fading must lie in (0, 1]");
  require(noise_psd > 0, "noise_psd must be positive");
  require(total_bandwidth > 0, "total_bandwidth must be positive");
  require(packet_bits > 0, "packet_bits must be positive");
}

void LocalCloudSpec::validate() const {
  require(local_comp_rate > 0, "local_comp_rate must be positive");
  require(local_proc_delay > 0, "local_proc_delay must be positive");
  require(cloud_proc_delay > 0, "cloud_proc_delay must be positive");
  require(cloud_distance > 0, "cloud_distance must be positive");
}

BandwidthShare bandwidth_per_node(BandwidthScheme scheme, double total, int neighbors) {
  const double j = static_cast<double>(neighbors);
  switch (scheme) {
    case BandwidthScheme::Equal:
      return {total / (j + 1.0), total / (j + 1.0)};
    case BandwidthScheme::CloudCentric:
      return {total / (j + 2.0), 2.0 * total / (j + 2.0)};
  }
  return {};
}

double channel_gain(const ChannelParams& params, double distance) {
  if (distance <= 1.0) return params.beta1;
  return params.beta1 * std::pow(distance, -params.beta2);
}

double service_rate(const ChannelParams& params, double bw, double distance) {
  const double snr = channel_gain(params, distance) * params.fading * params.tx_power /
                     (bw * params.noise_psd);
  return bw / params.packet_bits * std::log2(1.0 + snr);
}

double transmission_delay(double lambda, double mu) { return md1(lambda, mu); }

double fog_compute_delay(double lambda, double mu, double omega) {
  return md1(lambda, mu) + omega * lambda;
}

double cloud_compute_delay(double lambda, double omega_c) { return omega_c * lambda; }

double total_delay(const Destination& dest, double lambda) {
  struct Visitor {
    double lambda;
    double operator()(const LocalDest& d) const {
      return fog_compute_delay(lambda, d.comp_rate, d.proc_delay);
    }
    double operator()(const CloudDest& d) const {
      return transmission_delay(lambda, d.tx_rate) + cloud_compute_delay(lambda, d.proc_delay);
    }
    double operator()(const NeighborDest& d) const {
      return transmission_delay(lambda, d.tx_rate) +
             fog_compute_delay(lambda, d.profile.comp_rate, d.profile.proc_delay);
    }
  };
  return std::visit(Visitor{lambda}, dest);
}

double stability_cap(const Destination& dest) {
  struct Visitor {
    double operator()(const LocalDest& d) const { return d.comp_rate; }
    double operator()(const CloudDest& d) const { return d.tx_rate; }
    double operator()(const NeighborDest& d) const {
      return std::min(d.tx_rate, d.profile.comp_rate);
    }
  };
  return std::visit(Visitor{}, dest);
}

double total_delay_or_inf(const Destination& dest, double lambda) {
  if (!(lambda < stability_cap(dest))) return std::numeric_limits<double>::infinity();
  return total_delay(dest, lambda);
}

}  // namespace fognet
