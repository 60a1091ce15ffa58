#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fognet/analysis.hpp"
#include "fognet/rng.hpp"

namespace fognet {

namespace {

constexpr std::uint64_t kChunk = 1u << 14;

struct EventCheck {
  double gamma;
  double lambda_hat;
  double fog_bw;
  double ideal_tx_rate;
  double best_comp_rate;
  double best_proc_delay;
  const ChannelParams* channel;

  bool operator()(double distance, double comp_rate, double proc_delay) const {
    const double tx = service_rate(*channel, fog_bw, distance);
    const bool link = tx > lambda_hat &&
                      1.0 / (tx - lambda_hat) <= gamma / (ideal_tx_rate - lambda_hat);
    const bool compute = comp_rate > lambda_hat &&
                         1.0 / (comp_rate - lambda_hat) <= gamma / (best_comp_rate - lambda_hat);
    const bool processing = proc_delay <= gamma * best_proc_delay;
    return link && compute && processing;
  }
};

EventCheck make_check(double gamma, const SelectionSetting& s) {
  const double fog_bw = bandwidth_per_node(s.scheme, s.channel.total_bandwidth, s.p1.j_hat).fog;
  return {gamma,
          s.p1.lambda_hat,
          fog_bw,
          service_rate(s.channel, fog_bw, s.ideal.min_distance),
          s.ideal.best_comp_rate,
          s.ideal.best_proc_delay,
          &s.channel};
}

std::uint64_t chunk_hits(const EventCheck& check, const NodeSampler& sampler,
                         std::uint64_t seed, std::uint64_t chunk, std::uint64_t count) {
  Rng rng(seed, Purpose::EventSamples, chunk);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double d = sampler.disk_radius * std::sqrt(rng.uniform01());
    const double mu = rng.uniform(sampler.comp_rate_min, sampler.comp_rate_max);
    const double omega = rng.uniform(sampler.proc_delay_min, sampler.proc_delay_max);
    hits += check(d, mu, omega) ? 1 : 0;
  }
  return hits;
}

std::uint64_t chunk_size(std::uint64_t chunk, std::uint64_t samples) {
  return std::min(kChunk, samples - chunk * kChunk);
}

}  // namespace

EventEstimate estimate_selection_events(double gamma, const SelectionSetting& s,
                                        const NodeSampler& sampler, std::uint64_t samples,
                                        std::uint64_t seed) {
  const auto check = make_check(gamma, s);
  const auto chunks = static_cast<std::int64_t>((samples + kChunk - 1) / kChunk);
  std::uint64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    hits += chunk_hits(check, sampler, seed, uc, chunk_size(uc, samples));
  }
  return {samples, hits};
}

EventEstimate estimate_selection_events_serial(double gamma, const SelectionSetting& s,
                                               const NodeSampler& sampler,
                                               std::uint64_t samples, std::uint64_t seed) {
  const auto check = make_check(gamma, s);
  std::uint64_t hits = 0;
  for (std::uint64_t c = 0; c * kChunk < samples; ++c) {
    hits += chunk_hits(check, sampler, seed, c, chunk_size(c, samples));
  }
  return {samples, hits};
}

}  // namespace fognet
