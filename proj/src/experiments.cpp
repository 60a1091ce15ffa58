#include "fognet/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

#include "fognet/errors.hpp"
#include "fognet/parallel.hpp"

namespace fognet {

namespace {

using I = std::int64_t;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

CsvTable table(const ExperimentConfig& cfg, std::vector<std::string> header) {
  CsvTable t(std::move(header));
  t.add_metadata("config_hash", hex(cfg.hash()));
  t.add_metadata("seed", std::to_string(cfg.scenario.seed));
  t.add_metadata("tool_version", kToolVersion);
  return t;
}

std::string path_in(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

// Outputs are already written; the exit status still has to say nothing formed.
void require_some_success(const std::vector<ReplicationRecord>& records) {
  bool capped = false;
  for (const auto& r : records) {
    if (r.ok) return;
    capped = capped || r.failure == "iteration_cap";
  }
  if (capped) throw IterationCapExceeded("every replication hit the iteration cap");
}

}  // namespace

OfflineSweep offline_size_sweep(const ExperimentConfig& cfg) {
  const auto& sc = cfg.scenario;
  OfflineSweep out;
  for (double d : cfg.offline.distances) {
    OfflineSummary sum;
    sum.distance = d;
    sum.best_latency = kInf;
    const NodeProfile node{d, cfg.offline.comp_rate, cfg.offline.proc_delay};
    for (int j = 0; j <= cfg.offline.max_neighbors; ++j) {
      const std::vector<NodeProfile> nodes(static_cast<std::size_t>(j), node);
      OfflinePoint p;
      p.distance = d;
      p.neighbors = j;
      try {
        const auto r = solve_min_max(make_compute_set(sc.channel, sc.scheme, sc.local_cloud, nodes, j),
                                     sc.x_rate);
        p.latency = r.u_star;
        p.alpha_local = r.distribution.alpha_local;
        p.alpha_cloud = r.distribution.alpha_cloud;
        p.alpha_fog = r.distribution.alpha_fog();
        p.efficiency = r.efficiency;
      } catch (const Infeasible&) {
        p.latency = kInf;
      }
      if (p.latency < sum.best_latency) {
        sum.best_latency = p.latency;
        sum.best_neighbors = j;
      }
      out.points.push_back(p);
    }
    // Everything offloaded to the cloud over the whole band.
    ComputeSet cloud_only;
    cloud_only.cloud = CloudDest{
        service_rate(sc.channel, bandwidth_per_node(sc.scheme, sc.channel.total_bandwidth, 0).cloud,
                     sc.local_cloud.cloud_distance),
        sc.local_cloud.cloud_proc_delay};
    try {
      sum.cloud_only_latency = solve_min_max(cloud_only, sc.x_rate).u_star;
    } catch (const Infeasible&) {
      sum.cloud_only_latency = kInf;
    }
    sum.reduction_percent = std::isfinite(sum.cloud_only_latency)
                                ? 100.0 * (sum.cloud_only_latency - sum.best_latency) / sum.cloud_only_latency
                                : 100.0;
    out.summary.push_back(sum);
  }
  return out;
}

SelectionSetting selection_setting(const ExperimentConfig& cfg) {
  const auto& sc = cfg.scenario;
  SelectionSetting s;
  s.ideal = sc.ideal;
  s.channel = sc.channel;
  s.scheme = sc.scheme;
  s.p1 = phase1(sc);
  if (cfg.analysis.j_hat) s.p1.j_hat = *cfg.analysis.j_hat;
  if (cfg.analysis.lambda_hat) s.p1.lambda_hat = *cfg.analysis.lambda_hat;
  return s;
}

ArrivalDistributions arrival_distributions(const ArrivalModel& a) {
  return {Cdf::disk(a.disk_radius), Cdf::uniform(a.comp_rate_min, a.comp_rate_max),
          Cdf::uniform(a.proc_delay_min, a.proc_delay_max)};
}

NodeSampler node_sampler(const ArrivalModel& a) {
  return {a.disk_radius, a.comp_rate_min, a.comp_rate_max, a.proc_delay_min, a.proc_delay_max};
}

void cmd_run(const ExperimentConfig& cfg, const std::string& out_dir) {
  ensure_dir(out_dir);
  ThreadCountScope threads(cfg.threads);
  const auto run = run_replications(cfg.scenario);

  auto reps = table(cfg, {"replication", "ok", "failure", "latency_s", "gamma", "baseline_latency_s",
                          "opt_latency_s", "competitive_ratio", "observations", "iterations",
                          "alpha_local", "alpha_cloud", "alpha_fog", "efficiency", "fog_tx_rate_pps"});
  for (const auto& r : run.records) {
    reps.add_row({I(r.index), I(r.ok), r.failure, r.latency, r.gamma, r.baseline_latency,
                  r.opt_latency, r.competitive_ratio, I(r.observations), I(r.iterations),
                  r.alpha_local, r.alpha_cloud, r.alpha_fog, r.efficiency, r.fog_tx_rate});
  }
  reps.write(path_in(out_dir, "replications.csv"));

  const auto& a = run.report;
  auto summary = table(cfg, {"metric", "mean", "standard_error"});
  auto add = [&](const char* name, const Stat& s) { summary.add_row({std::string(name), s.mean, s.se}); };
  summary.add_row({std::string("replications"), double(a.replications), 0.0});
  summary.add_row({std::string("successes"), double(a.successes), 0.0});
  summary.add_row({std::string("failures"), double(a.failures), 0.0});
  summary.add_row({std::string("j_hat"), double(run.phase1.j_hat), 0.0});
  summary.add_row({std::string("u_hat_s"), run.phase1.u_hat, 0.0});
  summary.add_row({std::string("lambda_hat_pps"), run.phase1.lambda_hat, 0.0});
  add("latency_s", a.latency);
  add("baseline_latency_s", a.baseline_latency);
  summary.add_row({std::string("gap_percent"), a.gap_percent, 0.0});
  add("gamma", a.gamma);
  add("competitive_ratio", a.competitive_ratio);
  add("observations", a.observations);
  add("iterations", a.iterations);
  add("alpha_local", a.alpha_local);
  add("alpha_cloud", a.alpha_cloud);
  add("alpha_fog", a.alpha_fog);
  add("efficiency", a.efficiency);
  add("fog_tx_rate_pps", a.fog_tx_rate);
  summary.write(path_in(out_dir, "summary.csv"));
  require_some_success(run.records);
}

void cmd_sweep(const std::vector<Assignment>& base, const std::string& out_dir) {
  const auto base_cfg = build_config(base);
  const auto& axis = base_cfg.sweep.axis;
  if (axis.empty()) throw ConfigError("sweep needs sweep.axis and sweep.values");
  ensure_dir(out_dir);
  ThreadCountScope threads(base_cfg.threads);

  auto latency = table(base_cfg, {axis, "j_hat", "u_hat_s", "latency_s", "latency_se",
                                  "baseline_latency_s", "baseline_latency_se", "gap_percent",
                                  "competitive_ratio", "successes", "failures"});
  auto local = table(base_cfg, {axis, "alpha_local", "alpha_local_se"});
  auto size = table(base_cfg, {axis, "neighbors", "ideal_latency_s"});
  auto trace = table(base_cfg, {axis, "iteration", "gamma"});
  auto tx = table(base_cfg, {axis, "fog_tx_rate_pps", "fog_tx_rate_se"});
  auto split = table(base_cfg, {axis, "alpha_local", "alpha_cloud", "alpha_fog"});
  auto obs = table(base_cfg, {axis, "gamma", "gamma_se", "observations", "observations_se",
                              "iterations", "iterations_se"});
  auto eff = table(base_cfg, {axis, "efficiency", "efficiency_se", "alpha_cloud", "alpha_cloud_se"});

  std::vector<ReplicationRecord> all;
  for (const auto& value : base_cfg.sweep.values) {
    auto assignments = base;
    assignments.push_back({axis, value, 0});
    const auto cfg = build_config(assignments);
    const auto& sc = cfg.scenario;
    const auto run = run_replications(sc);
    const auto& a = run.report;
    all.insert(all.end(), run.records.begin(), run.records.end());

    latency.add_row({value, I(run.phase1.j_hat), run.phase1.u_hat, a.latency.mean, a.latency.se,
                     a.baseline_latency.mean, a.baseline_latency.se, a.gap_percent,
                     a.competitive_ratio.mean, I(a.successes), I(a.failures)});
    local.add_row({value, a.alpha_local.mean, a.alpha_local.se});
    for (std::size_t j = 0; j < run.phase1.latency_by_size.size(); ++j) {
      size.add_row({value, I(j), run.phase1.latency_by_size[j]});
    }
    if (!sc.fixed_gamma && run.phase1.j_hat > 0) {
      const auto g = run_gamma_trace(sc, run.phase1, cfg.trace_iterations);
      for (std::size_t i = 0; i < g.gamma.size(); ++i) trace.add_row({value, I(i), g.gamma[i]});
    }
    tx.add_row({value, a.fog_tx_rate.mean, a.fog_tx_rate.se});
    split.add_row({value, a.alpha_local.mean, a.alpha_cloud.mean, a.alpha_fog.mean});
    obs.add_row({value, a.gamma.mean, a.gamma.se, a.observations.mean, a.observations.se,
                 a.iterations.mean, a.iterations.se});
    eff.add_row({value, a.efficiency.mean, a.efficiency.se, a.alpha_cloud.mean, a.alpha_cloud.se});
  }

  latency.write(path_in(out_dir, "latency.csv"));
  local.write(path_in(out_dir, "local_fraction.csv"));
  size.write(path_in(out_dir, "network_size.csv"));
  trace.write(path_in(out_dir, "gamma_trace.csv"));
  tx.write(path_in(out_dir, "fog_tx_rate.csv"));
  split.write(path_in(out_dir, "task_split.csv"));
  obs.write(path_in(out_dir, "observations.csv"));
  eff.write(path_in(out_dir, "efficiency.csv"));
  require_some_success(all);
}

void cmd_analyze(const ExperimentConfig& cfg, const std::string& out_dir) {
  ensure_dir(out_dir);
  ThreadCountScope threads(cfg.threads);
  const auto s = selection_setting(cfg);
  const auto dists = arrival_distributions(cfg.scenario.arrival);
  const auto j_hat = static_cast<std::size_t>(s.p1.j_hat);

  auto curves = table(cfg, {"n_observations", "gamma", "p_select", "p_form"});
  const auto steps = static_cast<std::size_t>(std::floor((cfg.analysis.gamma_max - 1.0) / cfg.analysis.gamma_step + 1e-9));
  for (std::size_t n : cfg.analysis.n_values) {
    for (std::size_t k = 0; k <= steps; ++k) {
      const double g = 1.0 + static_cast<double>(k) * cfg.analysis.gamma_step;
      const double ps = p_select(g, s, dists);
      curves.add_row({I(n), g, ps, p_form(ps, n, j_hat)});
    }
  }
  curves.write(path_in(out_dir, "formation_probability.csv"));

  const double gbar = gamma_bar(s);
  auto summary = table(cfg, {"n_observations", "j_hat", "lambda_hat_pps", "u_hat_s", "gamma_bar",
                             "gamma_bar_s", "p_select_at_gamma_bar_s", "mc_frequency", "mc_standard_error"});
  for (std::size_t n : cfg.analysis.n_values) {
    double gs = kNaN;
    try {
      gs = gamma_bar_s(s, dists, n, j_hat);
    } catch (const NotReached&) {
    }
    double ps = kNaN, freq = kNaN, se = kNaN;
    if (std::isfinite(gs)) {
      ps = p_select(gs, s, dists);
      const auto est = estimate_selection_events(gs, s, node_sampler(cfg.scenario.arrival),
                                                 cfg.analysis.mc_samples, cfg.scenario.seed);
      freq = est.frequency();
      se = est.standard_error();
    }
    summary.add_row({I(n), I(s.p1.j_hat), s.p1.lambda_hat, s.p1.u_hat, gbar, gs, ps, freq, se});
  }
  summary.write(path_in(out_dir, "analysis_summary.csv"));
}

void cmd_offline_sweep(const ExperimentConfig& cfg, const std::string& out_dir) {
  ensure_dir(out_dir);
  const auto sweep = offline_size_sweep(cfg);
  auto points = table(cfg, {"distance_m", "neighbors", "latency_s", "alpha_local", "alpha_cloud",
                            "alpha_fog", "efficiency"});
  for (const auto& p : sweep.points) {
    points.add_row({p.distance, I(p.neighbors), p.latency, p.alpha_local, p.alpha_cloud, p.alpha_fog,
                    p.efficiency});
  }
  points.write(path_in(out_dir, "offline_sweep.csv"));
  auto summary = table(cfg, {"distance_m", "best_neighbors", "best_latency_s", "cloud_only_latency_s",
                             "reduction_percent"});
  for (const auto& s : sweep.summary) {
    summary.add_row({s.distance, I(s.best_neighbors), s.best_latency, s.cloud_only_latency,
                     s.reduction_percent});
  }
  summary.write(path_in(out_dir, "offline_summary.csv"));
}

}  // namespace fognet
