#pragma once

#include <stdexcept>
#include <string>

namespace fognet {

/// Arrival rate at or above a queue's service rate.
class UnstableQueue : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The offered load cannot be carried by any stable split.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The framework loop never admitted a complete formation within its cap.
class IterationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// gamma_bar_s search never reached the target formation probability.
class NotReached : public std::runtime_error {
 public:
  NotReached(const std::string& what, double supremum_probed)
      : std::runtime_error(what), supremum_probed_(supremum_probed) {}
  double supremum_probed() const noexcept { return supremum_probed_; }

 private:
  double supremum_probed_;
};

/// Malformed or invalid configuration. `line` is 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace fognet
