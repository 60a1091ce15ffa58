#include "fognet/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fognet/errors.hpp"

namespace fognet {

std::vector<Destination> ComputeSet::destinations() const {
  std::vector<Destination> out;
  out.reserve(neighbors.size() + 2);
  if (local) out.emplace_back(*local);
  if (cloud) out.emplace_back(*cloud);
  for (const auto& n : neighbors) out.emplace_back(n);
  return out;
}

double TaskDistribution::alpha_fog() const {
  return std::accumulate(alpha_neighbors.begin(), alpha_neighbors.end(), 0.0);
}

bool SolveResult::interior() const {
  return std::all_of(loads.begin(), loads.end(), [](double l) { return l > 0.0; });
}

double max_load_at(double u, const DelayCurve& delay, double rate_cap,
                   const SolverTolerances& tol) {
  double hi = (1.0 - tol.stability_margin) * rate_cap;
  if (!(delay(0.0) <= u)) return 0.0;
  if (delay(hi) <= u) return hi;
  double lo = 0.0;
  const double eps = tol.lambda_rel * rate_cap;
  while (hi - lo > eps) {
    const double mid = 0.5 * (lo + hi);
    if (delay(mid) <= u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

SolveResult solve_min_max(const ComputeSet& nodes, double x, const SolverTolerances& tol) {
  if (!(x > 0.0)) throw std::invalid_argument("offered load must be positive");
  const auto dests = nodes.destinations();
  if (dests.empty()) throw Infeasible("no destinations to carry the load");

  std::vector<DelayCurve> curves;
  std::vector<double> caps;
  curves.reserve(dests.size());
  for (const auto& d : dests) {
    curves.emplace_back([&d](double lambda) { return total_delay_or_inf(d, lambda); });
    caps.push_back(stability_cap(d));
  }

  double capacity = 0.0;
  for (double c : caps) capacity += (1.0 - tol.stability_margin) * c;
  if (capacity < x) {
    throw Infeasible("offered load " + std::to_string(x) + " exceeds stable capacity " +
                     std::to_string(capacity));
  }

  const auto absorbable = [&](double u) {
    double sum = 0.0;
    for (std::size_t k = 0; k < curves.size(); ++k) sum += max_load_at(u, curves[k], caps[k], tol);
    return sum;
  };

  double lo = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) lo = std::min(lo, c(0.0));
  double hi = lo;
  for (int i = 0; absorbable(hi) < x; ++i) {
    if (i > 2000) throw Infeasible("latency bracket diverged");
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > tol.u_rel * hi) {
    const double mid = 0.5 * (lo + hi);
    if (absorbable(mid) >= x) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  SolveResult result;
  result.equalized_level = hi;
  result.loads.resize(dests.size());
  double assigned = 0.0;
  for (std::size_t k = 0; k < dests.size(); ++k) {
    result.loads[k] = max_load_at(hi, curves[k], caps[k], tol);
    assigned += result.loads[k];
  }

  // Hand back the overshoot, largest allocation first.
  double excess = assigned - x;
  std::vector<std::size_t> order(dests.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return result.loads[a] > result.loads[b]; });
  for (std::size_t k : order) {
    if (excess <= 0.0) break;
    const double cut = std::min(excess, result.loads[k]);
    result.loads[k] -= cut;
    excess -= cut;
  }

  result.per_node_latency.resize(dests.size());
  for (std::size_t k = 0; k < dests.size(); ++k) {
    result.per_node_latency[k] = curves[k](result.loads[k]);
  }
  result.u_star = *std::max_element(result.per_node_latency.begin(), result.per_node_latency.end());
  result.efficiency = efficiency(result.per_node_latency);

  auto& dist = result.distribution;
  dist.total_rate = x;
  std::size_t k = 0;
  if (nodes.local) dist.alpha_local = result.loads[k++] / x;
  if (nodes.cloud) dist.alpha_cloud = result.loads[k++] / x;
  for (; k < dests.size(); ++k) dist.alpha_neighbors.push_back(result.loads[k] / x);
  return result;
}

double efficiency(std::span<const double> latencies) {
  if (latencies.empty()) throw std::invalid_argument("efficiency of an empty latency list");
  const double worst = *std::max_element(latencies.begin(), latencies.end());
  double idle = 0.0;
  double busy = 0.0;
  for (double d : latencies) {
    idle += worst - d;
    busy += d;
  }
  return 1.0 + idle / busy;
}

}  // namespace fognet
