#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "fognet/distribution.hpp"
#include "fognet/errors.hpp"
#include "oracles/simplex_grid.hpp"

using namespace fognet;
using doctest::Approx;

namespace {

double load_sum(const SolveResult& r) { return std::accumulate(r.loads.begin(), r.loads.end(), 0.0); }

}  // namespace

TEST_CASE("max_load_at inverts a delay curve") {
  const CloudDest cloud{10.0, 0.025};
  const DelayCurve f = [&](double l) { return total_delay_or_inf(cloud, l); };
  CHECK(max_load_at(f(0.0), f, 10.0) == Approx(0.0).epsilon(1e-9));
  CHECK(max_load_at(f(0.0) * 0.9, f, 10.0) == 0.0);
  CHECK(max_load_at(std::numeric_limits<double>::infinity(), f, 10.0) ==
        Approx(10.0 * (1.0 - kStabilityMargin)).epsilon(1e-15));
  CHECK(max_load_at(0.7 / 3.0, f, 10.0) == Approx(4.0).epsilon(1e-8));
  double prev = 0.0;
  for (double u = 0.1; u < 2.0; u += 0.05) {
    const double l = max_load_at(u, f, 10.0);
    CHECK(l >= prev);
    CHECK(f(l) <= u);
    prev = l;
  }
}

TEST_CASE("single local destination takes everything") {
  ComputeSet s;
  s.local = LocalDest{20.0, 0.05};
  const auto r = solve_min_max(s, 10.0);
  CHECK(r.distribution.alpha_local == Approx(1.0));
  CHECK(r.u_star == Approx(0.575).epsilon(1e-8));
}

TEST_CASE("identical neighbors split evenly") {
  ComputeSet s;
  const NeighborDest n{30.0, {10.0, 25.0, 0.05}};
  s.neighbors = {n, n};
  const auto r = solve_min_max(s, 12.0);
  REQUIRE(r.distribution.alpha_neighbors.size() == 2);
  CHECK(r.distribution.alpha_neighbors[0] == Approx(0.5).epsilon(1e-8));
  CHECK(r.distribution.alpha_neighbors[1] == Approx(0.5).epsilon(1e-8));
  CHECK(r.efficiency == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("three destinations match the grid oracle") {
  ComputeSet s;
  s.local = LocalDest{20.0, 0.05};
  s.cloud = CloudDest{10.0, 0.025};
  s.neighbors = {NeighborDest{5.7, {30.0, 20.0, 0.05}}};
  const double x = 10.0;
  const auto r = solve_min_max(s, x);
  const auto g = oracle::crossing_search(oracle::local_curve(20.0, 0.05), oracle::cloud_curve(10.0, 0.025),
                                         oracle::neighbor_curve(5.7, 20.0, 0.05), x, 1e-4);
  CHECK(std::abs(r.u_star - g.u) <= 1e-3);
  CHECK(r.u_star <= g.u + 1e-9);
  CHECK(r.distribution.alpha_local == Approx(g.a).epsilon(2e-3));
  CHECK(r.distribution.alpha_cloud == Approx(g.b).epsilon(2e-3));
  CHECK(load_sum(r) == Approx(x).epsilon(1e-12));
}

TEST_CASE("crossing search agrees with the exhaustive scan on a coarse grid") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    const auto f1 = oracle::local_curve(15 + 25 * U(rng), 0.02 + 0.08 * U(rng));
    const auto f2 = oracle::cloud_curve(5 + 25 * U(rng), 0.01 + 0.04 * U(rng));
    const auto f3 = oracle::neighbor_curve(5 + 25 * U(rng), 15 + 25 * U(rng), 0.02 + 0.08 * U(rng));
    const double x = 2 + 10 * U(rng);
    const auto a = oracle::exhaustive(f1, f2, f3, x, 1e-2);
    const auto b = oracle::crossing_search(f1, f2, f3, x, 1e-2);
    CHECK(b.u == Approx(a.u).epsilon(1e-12));
  }
}

TEST_CASE("infeasible load is rejected") {
  ComputeSet s;
  s.local = LocalDest{5.0, 0.05};
  CHECK_THROWS_AS(solve_min_max(s, 6.0), Infeasible);
  CHECK_THROWS_AS(solve_min_max(ComputeSet{}, 1.0), Infeasible);
  CHECK_THROWS_AS(solve_min_max(s, 0.0), std::invalid_argument);
}

TEST_CASE("idle destinations still count in the objective") {
  ComputeSet s;
  s.local = LocalDest{40.0, 0.01};
  s.cloud = CloudDest{0.5, 0.025};  // zero-load latency 2 s
  const auto r = solve_min_max(s, 1.0);
  CHECK(r.loads[1] == 0.0);
  CHECK(r.u_star == Approx(2.0));
  CHECK(r.equalized_level < r.u_star);
  CHECK_FALSE(r.interior());
}

TEST_CASE("efficiency") {
  const std::vector<double> eq{0.5, 0.5, 0.5};
  CHECK(efficiency(eq) == 1.0);
  const std::vector<double> skew{1.0, 0.5, 0.5};
  CHECK(efficiency(skew) == Approx(1.5));
}

TEST_CASE("interior solve equalizes latencies") {
  ComputeSet s;
  s.local = LocalDest{20.0, 0.05};
  s.cloud = CloudDest{15.0, 0.025};
  s.neighbors = {NeighborDest{18.0, {12.0, 30.0, 0.05}}, NeighborDest{25.0, {5.0, 35.0, 0.06}}};
  const auto r = solve_min_max(s, 14.0);
  REQUIRE(r.interior());
  const auto [lo, hi] = std::minmax_element(r.per_node_latency.begin(), r.per_node_latency.end());
  CHECK(*hi - *lo <= 1e-6 * r.u_star);
  CHECK(r.efficiency == Approx(1.0).epsilon(1e-6));
  CHECK(r.u_star == *hi);
}
