#include "fognet/formation.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "fognet/errors.hpp"

namespace fognet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<SolveResult> try_solve(const ComputeSet& set, double x, const SolverTolerances& tol) {
  try {
    return solve_min_max(set, x, tol);
  } catch (const Infeasible&) {
    return std::nullopt;
  }
}

}  // namespace

void IdealNodeSpec::validate() const {
  if (!(best_comp_rate >= worst_comp_rate && worst_comp_rate > 0))
    throw std::invalid_argument("ideal comp rates must satisfy best >= worst > 0");
  if (!(best_proc_delay <= worst_proc_delay && best_proc_delay > 0))
    throw std::invalid_argument("ideal proc delays must satisfy 0 < best <= worst");
  if (!(min_distance <= max_distance && min_distance >= 0))
    throw std::invalid_argument("ideal distances must satisfy 0 <= min <= max");
}

ComputeSet make_compute_set(const ChannelParams& channel, BandwidthScheme scheme,
                            const LocalCloudSpec& local_cloud,
                            std::span<const NodeProfile> neighbors, int network_size) {
  const auto bw = bandwidth_per_node(scheme, channel.total_bandwidth, network_size);
  ComputeSet set;
  set.local = LocalDest{local_cloud.local_comp_rate, local_cloud.local_proc_delay};
  set.cloud = CloudDest{service_rate(channel, bw.cloud, local_cloud.cloud_distance),
                        local_cloud.cloud_proc_delay};
  set.neighbors.reserve(neighbors.size());
  for (const auto& n : neighbors) {
    set.neighbors.push_back({service_rate(channel, bw.fog, n.distance), n});
  }
  return set;
}

Phase1Result phase1(const IdealNodeSpec& ideal, const ChannelParams& channel,
                    BandwidthScheme scheme, const LocalCloudSpec& local_cloud, double x,
                    int j_max, const SolverTolerances& tol) {
  const NodeProfile best{ideal.min_distance, ideal.best_comp_rate, ideal.best_proc_delay};
  const auto solve_size = [&](int size) {
    const std::vector<NodeProfile> nodes(static_cast<std::size_t>(size), best);
    return try_solve(make_compute_set(channel, scheme, local_cloud, nodes, size), x, tol);
  };

  Phase1Result out;
  std::vector<std::optional<SolveResult>> solves;
  solves.push_back(solve_size(0));
  out.latency_by_size.push_back(solves.back() ? solves.back()->u_star : kInf);

  int j_hat = j_max;
  for (int size = 1; size <= j_max; ++size) {
    solves.push_back(solve_size(size));
    out.latency_by_size.push_back(solves.back() ? solves.back()->u_star : kInf);
    // inf - inf is NaN, which keeps the search going.
    const double delta = out.latency_by_size[size - 1] - out.latency_by_size[size];
    if (delta < 0) {
      j_hat = size - 1;
      break;
    }
  }
  if (!solves[j_hat]) {
    throw Infeasible("no network of up to " + std::to_string(j_max) +
                     " ideal neighbors carries the offered load");
  }

  out.j_hat = j_hat;
  out.solve = *solves[j_hat];
  out.u_hat = out.solve.u_star;
  out.lambda_hat_local = out.solve.loads[0];
  out.lambda_hat_cloud = out.solve.loads[1];
  out.lambda_hat = j_hat > 0 ? (x - out.lambda_hat_local - out.lambda_hat_cloud) / j_hat : 0.0;
  return out;
}

std::vector<NodeProfile> FormationOutcome::selected_profiles() const {
  std::vector<NodeProfile> out;
  out.reserve(selected.size());
  for (const auto& s : selected) out.push_back(s.profile);
  return out;
}

double candidate_latency(const NodeProfile& node, double lambda_hat, double fog_bw,
                         const ChannelParams& channel) {
  return total_delay_or_inf(NeighborDest{service_rate(channel, fog_bw, node.distance), node},
                            lambda_hat);
}

namespace {

Selection make_selection(const ArrivalStream& stream, std::size_t n, double fog_bw,
                         double latency, const ChannelParams& channel) {
  return {n, stream[n], service_rate(channel, fog_bw, stream[n].distance), latency};
}

}  // namespace

FormationOutcome phase2(const ArrivalStream& stream, double gamma, const Phase1Result& p1,
                        const ChannelParams& channel, BandwidthScheme scheme) {
  FormationOutcome out;
  out.gamma_used = gamma;
  out.phase1 = p1;
  const auto target = static_cast<std::size_t>(p1.j_hat);
  const double fog_bw = bandwidth_per_node(scheme, channel.total_bandwidth, p1.j_hat).fog;
  const double threshold = gamma * p1.u_hat;

  std::size_t n = 0;
  while (out.selected.size() < target && n < stream.size()) {
    const double d = candidate_latency(stream[n], p1.lambda_hat, fog_bw, channel);
    if (d <= threshold) out.selected.push_back(make_selection(stream, n, fog_bw, d, channel));
    ++n;
  }
  out.observations_used = n;
  out.complete = out.selected.size() == target;
  return out;
}

FormationOutcome secretary_baseline(const ArrivalStream& stream, std::size_t sample_size,
                                    const Phase1Result& p1, const ChannelParams& channel,
                                    BandwidthScheme scheme) {
  if (sample_size >= stream.size() && stream.size() > 0)
    throw std::invalid_argument("secretary sample must be shorter than the stream");
  FormationOutcome out;
  out.phase1 = p1;
  const auto target = static_cast<std::size_t>(p1.j_hat);
  const double fog_bw = bandwidth_per_node(scheme, channel.total_bandwidth, p1.j_hat).fog;

  double sample_best = kInf;
  std::size_t n = 0;
  while (out.selected.size() < target && n < stream.size()) {
    const double d = candidate_latency(stream[n], p1.lambda_hat, fog_bw, channel);
    const std::size_t remaining = stream.size() - n;
    const std::size_t open = target - out.selected.size();
    if (remaining <= open) {
      out.selected.push_back(make_selection(stream, n, fog_bw, d, channel));
    } else if (n < sample_size) {
      sample_best = std::min(sample_best, d);
    } else if (d < sample_best) {
      out.selected.push_back(make_selection(stream, n, fog_bw, d, channel));
    }
    ++n;
  }
  out.observations_used = n;
  out.complete = out.selected.size() == target;
  return out;
}

FrameworkResult run_framework(const FrameworkParams& params, const Phase1Result& p1,
                              const StreamSource& source) {
  FrameworkResult result;
  if (p1.j_hat == 0) {
    result.outcome.gamma_used = params.gamma0;
    result.outcome.phase1 = p1;
    result.outcome.complete = true;
    result.gamma_trace.push_back(params.gamma0);
    result.solve = solve_min_max(
        make_compute_set(params.channel, params.scheme, params.local_cloud, {}, 0), params.x,
        params.tol);
    return result;
  }

  for (std::size_t it = 0; it < params.max_iterations; ++it) {
    // Every earlier iteration failed, so gamma has been raised `it` times.
    const double gamma = params.gamma0 + static_cast<double>(it) * params.tau;
    auto stream = source(params.replay_stream ? 0 : it);
    auto outcome = phase2(stream, gamma, p1, params.channel, params.scheme);
    result.gamma_trace.push_back(gamma);
    result.iterations = it + 1;
    if (outcome.complete) {
      const auto nodes = outcome.selected_profiles();
      result.solve = solve_min_max(
          make_compute_set(params.channel, params.scheme, params.local_cloud, nodes, p1.j_hat),
          params.x, params.tol);
      result.outcome = std::move(outcome);
      result.final_stream = std::move(stream);
      return result;
    }
  }
  throw IterationCapExceeded("gamma never admitted " + std::to_string(p1.j_hat) +
                             " selections within " + std::to_string(params.max_iterations) +
                             " iterations");
}

GammaTrace trace_gamma(const FrameworkParams& params, const Phase1Result& p1,
                       const StreamSource& source, std::size_t iterations) {
  GammaTrace trace;
  trace.gamma.reserve(iterations);
  for (std::size_t it = 0; it < iterations; ++it) {
    const double gamma = params.gamma0 + static_cast<double>(trace.updates) * params.tau;
    trace.gamma.push_back(gamma);
    if (p1.j_hat == 0) continue;
    const auto outcome =
        phase2(source(params.replay_stream ? 0 : it), gamma, p1, params.channel, params.scheme);
    if (!outcome.complete) ++trace.updates;
  }
  return trace;
}

}  // namespace fognet
