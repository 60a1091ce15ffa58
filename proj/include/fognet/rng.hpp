#pragma once

// Keyed random streams. Every consumer derives its own generator from
// (seed, purpose, index, sub-index), so results never depend on the order
// or the thread in which replications run.

#include <cstdint>
#include <random>

namespace fognet {

enum class Purpose : std::uint64_t {
  Arrivals = 0x41525256,
  EventSamples = 0x45564e54,
  Instances = 0x494e5354,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t stream_key(std::uint64_t seed, Purpose purpose, std::uint64_t index,
                                   std::uint64_t sub = 0) {
  std::uint64_t k = mix64(seed);
  k = mix64(k ^ static_cast<std::uint64_t>(purpose));
  k = mix64(k ^ index);
  return mix64(k ^ (sub * 0xd1342543de82ef95ULL));
}

class Rng {
 public:
  Rng(std::uint64_t seed, Purpose purpose, std::uint64_t index, std::uint64_t sub = 0)
      : engine_(stream_key(seed, purpose, index, sub)) {}

  /// Uniform on [0, 1) with 53 random bits; identical on every platform.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fognet
