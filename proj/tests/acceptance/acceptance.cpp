// One line per acceptance criterion; exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "fognet/analysis.hpp"
#include "fognet/config.hpp"
#include "fognet/errors.hpp"
#include "fognet/experiments.hpp"
#include "fognet/scenario.hpp"
#include "oracles/simplex_grid.hpp"

using namespace fognet;

namespace {

int failures = 0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

void report(const char* name, double limit_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    v.pass = false;
    v.detail += " [over time limit]";
  }
  if (!v.pass) ++failures;
  std::printf("%s  %-28s %s (%.2fs, limit %.0fs)\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), secs,
              limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double uni(std::mt19937_64& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

Verdict equal_latency() {
  std::mt19937_64 g(101);
  int accepted = 0, bad = 0;
  double worst_spread = 0, worst_gamma = 0;
  while (accepted < 500) {
    ComputeSet s;
    const int dests = std::uniform_int_distribution<int>(2, 8)(g);
    s.local = LocalDest{uni(g, 10, 40), uni(g, 0.01, 0.1)};
    s.cloud = CloudDest{uni(g, 5, 40), uni(g, 0.01, 0.05)};
    for (int k = 2; k < dests; ++k) s.neighbors.push_back({uni(g, 5, 40), {uni(g, 1, 50), uni(g, 10, 40), uni(g, 0.01, 0.1)}});
    double cap = 0;
    for (const auto& d : s.destinations()) cap += stability_cap(d);
    SolveResult r;
    try {
      r = solve_min_max(s, uni(g, 0.2, 0.9) * cap);
    } catch (const Infeasible&) {
      continue;
    }
    if (!r.interior()) continue;
    ++accepted;
    const auto [lo, hi] = std::minmax_element(r.per_node_latency.begin(), r.per_node_latency.end());
    const double spread = (*hi - *lo) / r.u_star;
    worst_spread = std::max(worst_spread, spread);
    worst_gamma = std::max(worst_gamma, std::abs(r.efficiency - 1.0));
    bad += spread > 1e-6 || std::abs(r.efficiency - 1.0) > 1e-6;
  }
  return {bad == 0, fmt("500 interior instances, worst spread/u* %.2e, worst |G-1| %.2e, violations %.0f",
                        worst_spread, worst_gamma, bad)};
}

Verdict oracle_equivalence() {
  std::mt19937_64 g(202);
  int n = 0, bad = 0;
  double worst = 0;
  while (n < 100) {
    const double mu_i = uni(g, 10, 40), om_i = uni(g, 0.01, 0.1);
    const double mu_c = uni(g, 5, 30), om_c = uni(g, 0.01, 0.05);
    const double tx = uni(g, 3, 30), mu_j = uni(g, 10, 40), om_j = uni(g, 0.01, 0.1);
    const double x = uni(g, 0.1, 0.9) * (mu_i + mu_c + std::min(tx, mu_j));
    ComputeSet s;
    s.local = LocalDest{mu_i, om_i};
    s.cloud = CloudDest{mu_c, om_c};
    s.neighbors = {NeighborDest{tx, {10.0, mu_j, om_j}}};
    SolveResult r;
    try {
      r = solve_min_max(s, x);
    } catch (const Infeasible&) {
      continue;
    }
    const auto o = oracle::crossing_search(oracle::local_curve(mu_i, om_i), oracle::cloud_curve(mu_c, om_c),
                                           oracle::neighbor_curve(tx, mu_j, om_j), x, 1e-4);
    if (!std::isfinite(o.u)) continue;
    ++n;
    const double err = std::abs(r.u_star - o.u);
    worst = std::max(worst, err);
    bad += err > 1e-3;
  }
  return {bad == 0, fmt("100 three-destination instances, worst |u*-grid| %.2e s, violations %.0f", worst, bad)};
}

Verdict offline_size() {
  ExperimentConfig cfg;
  cfg.scenario.local_cloud.local_comp_rate = 20.0;
  cfg.scenario.local_cloud.cloud_distance = 150.0;
  cfg.scenario.scheme = BandwidthScheme::Equal;
  cfg.offline = {{10.0, 40.0}, 20.0, 0.05, 10};
  const auto a = offline_size_sweep(cfg);
  const auto b = offline_size_sweep(cfg);
  bool deterministic = a.points.size() == b.points.size();
  for (std::size_t k = 0; deterministic && k < a.points.size(); ++k) {
    deterministic = a.points[k].latency == b.points[k].latency;
  }
  const auto& at10 = a.summary[0];
  const auto& at40 = a.summary[1];
  const bool ok = at40.best_neighbors == 3 && at10.best_neighbors == 5 && at10.reduction_percent >= 40.0 &&
                  at10.reduction_percent <= 48.0 && deterministic;
  return {ok, fmt("best J %.0f at 40 m, %.0f at 10 m; cloud-only excess at 10 m %.2f%%; deterministic %.0f",
                  at40.best_neighbors, at10.best_neighbors, at10.reduction_percent, deterministic)};
}

Verdict formation_probability() {
  ScenarioConfig cfg;
  cfg.local_cloud.cloud_distance = 100.0;
  SelectionSetting s;
  s.ideal = cfg.ideal;
  s.ideal.worst_proc_delay = 0.10;
  s.channel = cfg.channel;
  s.scheme = BandwidthScheme::Equal;
  s.p1 = phase1(cfg);
  s.p1.j_hat = 6;
  s.p1.lambda_hat = 1.4;
  const ArrivalDistributions d{Cdf::disk(50.0), Cdf::uniform(15.0, 40.0), Cdf::uniform(0.05, 0.10)};
  const double gamma = 2.08;
  const double closed = p_select(gamma, s, d);
  const auto est = estimate_selection_events(gamma, s, NodeSampler{50.0, 15.0, 40.0, 0.05, 0.10}, 1000000, 1);
  const double z = std::abs(est.frequency() - closed) / est.standard_error();
  const double pf = p_form(closed, 300, 6);
  return {z <= 3.0 && pf >= 0.999,
          fmt("p_select %.5f vs event frequency %.5f (%.2f SE); p_form(N=300, J=6) %.9f", closed, est.frequency(), z,
              pf)};
}

Verdict gamma_convergence() {
  ScenarioConfig cfg;
  cfg.local_cloud.cloud_distance = 120.0;
  cfg.tau = 0.005;
  const auto p1 = phase1(cfg);
  const auto trace = run_gamma_trace(cfg, p1, 700);
  const double last = trace.gamma.back();
  return {last >= 1.15 && last <= 1.30,
          fmt("gamma after 700 iterations %.3f (%.0f updates), target [1.15, 1.30]", last, double(trace.updates))};
}

struct Dominance {
  std::vector<ReplicationRecord> completed;
  std::vector<double> gaps;
  std::vector<double> u_hat;
  bool dominates = true;
};

const Dominance& dominance_runs() {
  static const Dominance d = [] {
    Dominance out;
    for (int x = 10; x <= 19; ++x) {
      ScenarioConfig cfg;
      cfg.local_cloud.cloud_distance = 140.0;
      cfg.x_rate = x;
      cfg.replications = 500;
      const auto run = run_replications(cfg);
      out.dominates = out.dominates && run.report.failures == 0 &&
                      run.report.latency.mean <= run.report.baseline_latency.mean;
      out.gaps.push_back(run.report.gap_percent);
      for (const auto& r : run.records) {
        if (r.ok) out.completed.push_back(r);
      }
    }
    return out;
  }();
  return d;
}

Verdict baseline_dominance() {
  const auto& d = dominance_runs();
  const double gap19 = d.gaps.back();
  const double min_gap = *std::min_element(d.gaps.begin(), d.gaps.end());
  return {d.dominates && gap19 >= 12.0 && gap19 <= 27.0,
          fmt("500 paired replications per rate; smallest gap %.2f%%, gap at x=19 %.2f%%", min_gap, gap19)};
}

Verdict competitive_bound() {
  const auto& d = dominance_runs();
  int checked = 0, violations = 0;
  for (const auto& r : d.completed) {
    if (std::abs(r.efficiency - 1.0) > 1e-6) continue;
    ++checked;
    violations += r.latency > r.gamma * r.u_hat + 1e-9;
  }
  return {violations == 0 && checked > 0,
          fmt("%.0f completed replications, %.0f with equalized latencies, violations %.0f",
              double(d.completed.size()), checked, violations)};
}

Verdict property_suites() {
  std::mt19937_64 g(303);
  int cases = 0, bad = 0;
  // delays increase with load
  for (int t = 0; t < 1000; ++t, ++cases) {
    const double mu = uni(g, 1, 50), om = uni(g, 0.001, 0.2);
    double a = uni(g, 0, mu), b = uni(g, 0, mu);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    bad += !(transmission_delay(a, mu) < transmission_delay(b, mu) &&
             fog_compute_delay(a, mu, om) < fog_compute_delay(b, mu, om) &&
             cloud_compute_delay(a, om) < cloud_compute_delay(b, om));
  }
  // bandwidth conservation
  for (int t = 0; t < 1000; ++t, ++cases) {
    const double B = uni(g, 1e5, 1e7);
    const int J = std::uniform_int_distribution<int>(0, 100)(g);
    const auto e = bandwidth_per_node(BandwidthScheme::Equal, B, J);
    const auto c = bandwidth_per_node(BandwidthScheme::CloudCentric, B, J);
    bad += std::abs((J + 1) * e.fog - B) > 1e-9 * B || std::abs(J * c.fog + c.cloud - B) > 1e-9 * B;
  }
  // gamma traces step by exactly tau
  ScenarioConfig cfg;
  const auto p1 = phase1(cfg);
  for (int t = 0; t < 1000; ++t, ++cases) {
    auto params = cfg.framework_params();
    params.max_iterations = 100000;
    const auto r = run_framework(params, p1, [&](std::size_t it) { return generate_stream(cfg, t, it); });
    for (std::size_t k = 1; k < r.gamma_trace.size(); ++k) {
      bad += std::abs(r.gamma_trace[k] - r.gamma_trace[k - 1] - params.tau) > 1e-12;
    }
  }
  // stream determinism
  for (int t = 0; t < 1000; ++t, ++cases) {
    auto c = cfg;
    c.seed = g();
    bad += !(generate_stream(c, t, t % 7) == generate_stream(c, t, t % 7));
  }
  // formation probability monotonicity
  for (int t = 0; t < 1000; ++t, ++cases) {
    const auto n = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 2000)(g));
    const auto j = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, static_cast<int>(n))(g));
    double p = uni(g, 0, 1), q = uni(g, 0, 1);
    if (p > q) std::swap(p, q);
    bad += p_form(p, n, j) > p_form(q, n, j) + 1e-12 || p_form(p, n, j) > p_form(p, n + 1, j) + 1e-12 ||
           (j > 1 && p_form(p, n, j) > p_form(p, n, j - 1) + 1e-12);
  }
  return {bad == 0, fmt("%.0f generated cases over 5 properties, violations %.0f", cases, bad)};
}

}  // namespace

int main() {
  report("equal-latency optimality", 10, equal_latency);
  report("oracle equivalence", 60, oracle_equivalence);
  report("offline size sweep", 5, offline_size);
  report("formation probability", 30, formation_probability);
  report("gamma convergence", 120, gamma_convergence);
  report("baseline dominance", 300, baseline_dominance);
  report("competitive bound", 300, competitive_bound);
  report("property suites", 60, property_suites);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
