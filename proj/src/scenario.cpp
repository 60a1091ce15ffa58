#include "fognet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fognet/errors.hpp"
#include "fognet/rng.hpp"

namespace fognet {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ConfigError(msg);
}

double solved_latency(const ScenarioConfig& cfg, const Phase1Result& p1,
                      const std::vector<NodeProfile>& nodes) {
  return solve_min_max(make_compute_set(cfg.channel, cfg.scheme, cfg.local_cloud, nodes, p1.j_hat),
                       cfg.x_rate)
      .u_star;
}

// Offline benchmark: the j_hat individually fastest nodes of the realization.
double best_subset_latency(const ScenarioConfig& cfg, const Phase1Result& p1,
                           const ArrivalStream& stream) {
  const double fog_bw = bandwidth_per_node(cfg.scheme, cfg.channel.total_bandwidth, p1.j_hat).fog;
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(stream.size());
  for (std::size_t n = 0; n < stream.size(); ++n) {
    ranked.emplace_back(candidate_latency(stream[n], p1.lambda_hat, fog_bw, cfg.channel), n);
  }
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(p1.j_hat), ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());
  std::vector<NodeProfile> best;
  for (std::size_t k = 0; k < keep; ++k) best.push_back(stream[ranked[k].second]);
  return solved_latency(cfg, p1, best);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(x_rate > 0, "x_rate must be positive");
  try {
    channel.validate();
    local_cloud.validate();
    ideal.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require(arrival.disk_radius > 0, "disk_radius must be positive");
  require(arrival.comp_rate_min > 0 && arrival.comp_rate_min <= arrival.comp_rate_max,
          "comp_rate range must be nonempty and positive");
  require(arrival.proc_delay_min > 0 && arrival.proc_delay_min <= arrival.proc_delay_max,
          "proc_delay range must be nonempty and positive");
  require(n_observations >= 1, "n_observations must be at least 1");
  require(tau > 0, "tau must be positive");
  require(gamma0 >= 1, "gamma0 must be at least 1");
  require(replications >= 1, "replications must be at least 1");
  require(baseline_sample < n_observations, "baseline_sample must be below n_observations");
  require(max_iterations >= 1, "max_iterations must be at least 1");
  require(j_max >= 1, "j_max must be at least 1");
  require(!fixed_gamma || *fixed_gamma >= 1, "fixed_gamma must be at least 1");
  require(fixed_gamma_budget >= n_observations, "fixed_gamma_budget must cover n_observations");
}

FrameworkParams ScenarioConfig::framework_params() const {
  FrameworkParams p;
  p.channel = channel;
  p.scheme = scheme;
  p.local_cloud = local_cloud;
  p.x = x_rate;
  p.gamma0 = gamma0;
  p.tau = tau;
  p.max_iterations = max_iterations;
  p.replay_stream = replay_streams;
  return p;
}

ArrivalStream generate_stream(const ScenarioConfig& cfg, std::size_t rep_index,
                              std::size_t iteration) {
  return generate_stream(cfg, rep_index, iteration, cfg.n_observations);
}

ArrivalStream generate_stream(const ScenarioConfig& cfg, std::size_t rep_index,
                              std::size_t iteration, std::size_t length) {
  Rng rng(cfg.seed, Purpose::Arrivals, rep_index, iteration);
  const auto& a = cfg.arrival;
  std::vector<NodeProfile> nodes(length);
  // i.i.d. draws, so the arrival order is already a uniformly random permutation.
  for (auto& node : nodes) {
    node.distance = a.disk_radius * std::sqrt(rng.uniform01());  // area-uniform
    node.comp_rate = rng.uniform(a.comp_rate_min, a.comp_rate_max);
    node.proc_delay = rng.uniform(a.proc_delay_min, a.proc_delay_max);
  }
  return ArrivalStream(std::move(nodes));
}

Phase1Result phase1(const ScenarioConfig& cfg) {
  return phase1(cfg.ideal, cfg.channel, cfg.scheme, cfg.local_cloud, cfg.x_rate, cfg.j_max);
}

ReplicationRecord run_replication(const ScenarioConfig& cfg, const Phase1Result& p1,
                                  std::size_t rep_index) {
  ReplicationRecord rec;
  rec.index = rep_index;
  rec.u_hat = p1.u_hat;
  rec.j_hat = p1.j_hat;
  try {
    FrameworkResult fr;
    if (cfg.fixed_gamma) {
      auto stream = generate_stream(cfg, rep_index, 0, cfg.fixed_gamma_budget);
      fr.outcome = phase2(stream, *cfg.fixed_gamma, p1, cfg.channel, cfg.scheme);
      if (!fr.outcome.complete) {
        throw IterationCapExceeded("fixed gamma did not fill the network within the budget");
      }
      fr.solve = solve_min_max(make_compute_set(cfg.channel, cfg.scheme, cfg.local_cloud,
                                                fr.outcome.selected_profiles(), p1.j_hat),
                               cfg.x_rate);
      fr.gamma_trace = {*cfg.fixed_gamma};
      fr.iterations = 1;
      const auto head = stream.nodes().first(cfg.n_observations);
      fr.final_stream = ArrivalStream({head.begin(), head.end()});
    } else {
      fr = run_framework(cfg.framework_params(), p1,
                         [&](std::size_t it) { return generate_stream(cfg, rep_index, it); });
    }

    rec.latency = fr.solve.u_star;
    rec.gamma = fr.outcome.gamma_used;
    rec.observations = fr.outcome.observations_used;
    rec.iterations = fr.iterations;
    rec.alpha_local = fr.solve.distribution.alpha_local;
    rec.alpha_cloud = fr.solve.distribution.alpha_cloud;
    rec.alpha_fog = fr.solve.distribution.alpha_fog();
    rec.per_node_latency = fr.solve.per_node_latency;
    rec.efficiency = fr.solve.efficiency;
    if (!fr.outcome.selected.empty()) {
      double sum = 0.0;
      for (const auto& s : fr.outcome.selected) sum += s.tx_rate;
      rec.fog_tx_rate = sum / static_cast<double>(fr.outcome.selected.size());
    }

    if (p1.j_hat == 0) {
      rec.baseline_latency = rec.latency;
      rec.opt_latency = rec.latency;
    } else {
      const auto base =
          secretary_baseline(fr.final_stream, cfg.baseline_sample, p1, cfg.channel, cfg.scheme);
      rec.baseline_latency = solved_latency(cfg, p1, base.selected_profiles());
      rec.opt_latency = best_subset_latency(cfg, p1, fr.final_stream);
    }
    rec.competitive_ratio = rec.latency / rec.opt_latency;
    rec.ok = true;
  } catch (const Infeasible&) {
    rec.failure = "infeasible";
  } catch (const IterationCapExceeded&) {
    rec.failure = "iteration_cap";
  } catch (const std::exception& e) {
    rec.failure = std::string("error: ") + e.what();
  }
  return rec;
}

Stat summarize(const std::vector<double>& values) {
  Stat s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

AggregateReport aggregate(const std::vector<ReplicationRecord>& records) {
  AggregateReport r;
  r.replications = records.size();
  std::vector<double> lat, gam, base, obs, its, al, ac, af, eff, cr, tx;
  for (const auto& rec : records) {
    if (!rec.ok) {
      ++r.failures;
      continue;
    }
    ++r.successes;
    lat.push_back(rec.latency);
    gam.push_back(rec.gamma);
    base.push_back(rec.baseline_latency);
    obs.push_back(static_cast<double>(rec.observations));
    its.push_back(static_cast<double>(rec.iterations));
    al.push_back(rec.alpha_local);
    ac.push_back(rec.alpha_cloud);
    af.push_back(rec.alpha_fog);
    eff.push_back(rec.efficiency);
    cr.push_back(rec.competitive_ratio);
    tx.push_back(rec.fog_tx_rate);
  }
  r.latency = summarize(lat);
  r.gamma = summarize(gam);
  r.baseline_latency = summarize(base);
  r.observations = summarize(obs);
  r.iterations = summarize(its);
  r.alpha_local = summarize(al);
  r.alpha_cloud = summarize(ac);
  r.alpha_fog = summarize(af);
  r.efficiency = summarize(eff);
  r.competitive_ratio = summarize(cr);
  r.fog_tx_rate = summarize(tx);
  if (r.successes > 0 && r.baseline_latency.mean > 0) {
    r.gap_percent = 100.0 * (r.baseline_latency.mean - r.latency.mean) / r.baseline_latency.mean;
  }
  return r;
}

ReplicationRun run_replications(const ScenarioConfig& cfg) {
  ReplicationRun run;
  run.phase1 = phase1(cfg);
  run.records = run_replications(cfg, run.phase1);
  run.report = aggregate(run.records);
  return run;
}

GammaTrace run_gamma_trace(const ScenarioConfig& cfg, const Phase1Result& p1,
                           std::size_t iterations, std::size_t rep_index) {
  return trace_gamma(cfg.framework_params(), p1,
                     [&](std::size_t it) { return generate_stream(cfg, rep_index, it); },
                     iterations);
}

}  // namespace fognet
