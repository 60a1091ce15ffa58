#pragma once

// Plain-text experiment configuration: `key = value` lines grouped under
// `[section]` headers, `#` comments. Every key has a default; omitted keys
// keep it. Overrides given on the command line use `section.key=value`, or
// the bare key when no other section defines it.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "fognet/scenario.hpp"

namespace fognet {

struct SweepSettings {
  std::string axis;  // canonical `section.key`, empty when unset
  std::vector<std::string> values;
};

struct AnalysisSettings {
  std::vector<std::size_t> n_values{100, 200, 300};
  double gamma_step = 0.01;
  double gamma_max = 3.0;
  std::optional<int> j_hat;           // pin instead of phase 1
  std::optional<double> lambda_hat;   // pin instead of phase 1
  std::uint64_t mc_samples = 1000000;
};

struct OfflineSettings {
  std::vector<double> distances{10.0, 20.0, 30.0, 40.0};
  double comp_rate = 20.0;
  double proc_delay = 0.050;
  int max_neighbors = 10;
};

struct ExperimentConfig {
  ScenarioConfig scenario;
  SweepSettings sweep;
  AnalysisSettings analysis;
  OfflineSettings offline;
  std::size_t trace_iterations = 700;
  int threads = 0;  // 0: OpenMP default

  /// Sorted `section.key = value` lines covering every key.
  std::string canonical() const;
  /// FNV-1a 64 of canonical().
  std::uint64_t hash() const;
};

struct Assignment {
  std::string key;  // as written: `key` or `section.key`
  std::string value;
  int line = 0;     // 0 for command-line overrides
};

/// Raw assignments in file order, keys qualified by their section.
/// Throws ConfigError with the line number on malformed input.
std::vector<Assignment> read_assignments(std::istream& in);
std::vector<Assignment> read_assignments_file(const std::string& path);

/// `section.key=value` or `key=value`.
Assignment parse_override(const std::string& text);

/// Apply assignments over the defaults, derive the unset ideal-node fields
/// from the arrival ranges, and validate.
ExperimentConfig build_config(const std::vector<Assignment>& assignments);

ExperimentConfig parse_config(const std::string& path,
                              const std::vector<std::string>& overrides = {});

/// Canonical `section.key` for a possibly bare key; throws ConfigError.
std::string resolve_key(const std::string& key, int line = 0);

std::vector<std::string> known_keys();

std::string to_string(BandwidthScheme scheme);

}  // namespace fognet
