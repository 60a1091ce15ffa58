#include <cstddef>
#include <vector>

#include "fognet/scenario.hpp"

namespace fognet {

std::vector<ReplicationRecord> run_replications(const ScenarioConfig& cfg,
                                                const Phase1Result& p1) {
  std::vector<ReplicationRecord> out(cfg.replications);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  // Each replication owns its keyed RNG stream and writes only its own slot.
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = run_replication(cfg, p1, static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<ReplicationRecord> run_replications_serial(const ScenarioConfig& cfg,
                                                       const Phase1Result& p1) {
  std::vector<ReplicationRecord> out;
  out.reserve(cfg.replications);
  for (std::size_t i = 0; i < cfg.replications; ++i) out.push_back(run_replication(cfg, p1, i));
  return out;
}

}  // namespace fognet
