#include "fognet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fognet/csv.hpp"
#include "fognet/errors.hpp"

namespace fognet {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Ctx {
  const std::string& key;
  int line;
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(key + ": " + what, line); }
};

double to_double(const std::string& v, const Ctx& c) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) c.fail("expected a number, got '" + v + "'");
  return out;
}

template <class Int>
Int to_integer(const std::string& v, const Ctx& c) {
  Int out{};
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) c.fail("expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v, const Ctx& c) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  c.fail("expected true or false, got '" + v + "'");
}

BandwidthScheme to_scheme(const std::string& v, const Ctx& c) {
  if (v == "equal") return BandwidthScheme::Equal;
  if (v == "cloud-centric") return BandwidthScheme::CloudCentric;
  c.fail("expected equal or cloud-centric, got '" + v + "'");
}

double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_exact(xs[i]);
    } else if constexpr (std::is_same_v<T, std::string>) {
      out += xs[i];
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

struct Entry {
  std::function<void(ExperimentConfig&, const std::string&, const Ctx&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define FN_DOUBLE(field)                                                                   \
  Entry {                                                                                  \
    [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.field = to_double(v, c); }, \
        [](const ExperimentConfig& e) { return format_exact(e.field); }                    \
  }
#define FN_INT(type, field)                                                                \
  Entry {                                                                                  \
    [](ExperimentConfig& e, const std::string& v, const Ctx& c) {                          \
      e.field = to_integer<type>(v, c);                                                    \
    },                                                                                     \
        [](const ExperimentConfig& e) { return std::to_string(e.field); }                  \
  }

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = [] {
    std::map<std::string, Entry> m;
    m["task.x_rate"] = FN_DOUBLE(scenario.x_rate);

    m["channel.tx_power_dbm"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          e.scenario.channel.tx_power = dbm_to_watts(to_double(v, c));
        },
        [](const ExperimentConfig& e) { return format_exact(watts_to_dbm(e.scenario.channel.tx_power)); }};
    m["channel.beta1"] = FN_DOUBLE(scenario.channel.beta1);
    m["channel.beta2"] = FN_DOUBLE(scenario.channel.beta2);
    m["channel.fading"] = FN_DOUBLE(scenario.channel.fading);
    m["channel.noise_psd_dbm_hz"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          e.scenario.channel.noise_psd = dbm_to_watts(to_double(v, c));
        },
        [](const ExperimentConfig& e) { return format_exact(watts_to_dbm(e.scenario.channel.noise_psd)); }};
    m["channel.bandwidth_hz"] = FN_DOUBLE(scenario.channel.total_bandwidth);
    m["channel.packet_bits"] = FN_DOUBLE(scenario.channel.packet_bits);

    m["network.scheme"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) { e.scenario.scheme = to_scheme(v, c); },
        [](const ExperimentConfig& e) { return to_string(e.scenario.scheme); }};
    m["network.local_comp_rate"] = FN_DOUBLE(scenario.local_cloud.local_comp_rate);
    m["network.local_proc_delay"] = FN_DOUBLE(scenario.local_cloud.local_proc_delay);
    m["network.cloud_proc_delay"] = FN_DOUBLE(scenario.local_cloud.cloud_proc_delay);
    m["network.cloud_distance"] = FN_DOUBLE(scenario.local_cloud.cloud_distance);

    m["arrival.disk_radius"] = FN_DOUBLE(scenario.arrival.disk_radius);
    m["arrival.comp_rate_min"] = FN_DOUBLE(scenario.arrival.comp_rate_min);
    m["arrival.comp_rate_max"] = FN_DOUBLE(scenario.arrival.comp_rate_max);
    m["arrival.proc_delay_min"] = FN_DOUBLE(scenario.arrival.proc_delay_min);
    m["arrival.proc_delay_max"] = FN_DOUBLE(scenario.arrival.proc_delay_max);

    m["ideal.best_comp_rate"] = FN_DOUBLE(scenario.ideal.best_comp_rate);
    m["ideal.best_proc_delay"] = FN_DOUBLE(scenario.ideal.best_proc_delay);
    m["ideal.min_distance"] = FN_DOUBLE(scenario.ideal.min_distance);
    m["ideal.worst_comp_rate"] = FN_DOUBLE(scenario.ideal.worst_comp_rate);
    m["ideal.worst_proc_delay"] = FN_DOUBLE(scenario.ideal.worst_proc_delay);
    m["ideal.max_distance"] = FN_DOUBLE(scenario.ideal.max_distance);

    m["framework.n_observations"] = FN_INT(std::size_t, scenario.n_observations);
    m["framework.tau"] = FN_DOUBLE(scenario.tau);
    m["framework.gamma0"] = FN_DOUBLE(scenario.gamma0);
    m["framework.max_iterations"] = FN_INT(std::size_t, scenario.max_iterations);
    m["framework.j_max"] = FN_INT(int, scenario.j_max);
    m["framework.baseline_sample"] = FN_INT(std::size_t, scenario.baseline_sample);
    m["framework.replay_streams"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          e.scenario.replay_streams = to_bool(v, c);
        },
        [](const ExperimentConfig& e) { return std::string(e.scenario.replay_streams ? "true" : "false"); }};
    m["framework.fixed_gamma"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          if (v == "none" || v.empty()) {
            e.scenario.fixed_gamma.reset();
          } else {
            e.scenario.fixed_gamma = to_double(v, c);
          }
        },
        [](const ExperimentConfig& e) {
          return e.scenario.fixed_gamma ? format_exact(*e.scenario.fixed_gamma) : std::string("none");
        }};
    m["framework.fixed_gamma_budget"] = FN_INT(std::size_t, scenario.fixed_gamma_budget);
    m["framework.trace_iterations"] = FN_INT(std::size_t, trace_iterations);

    m["run.replications"] = FN_INT(std::size_t, scenario.replications);
    m["run.seed"] = FN_INT(std::uint64_t, scenario.seed);
    m["run.threads"] = FN_INT(int, threads);

    m["sweep.axis"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          e.sweep.axis = v.empty() ? v : resolve_key(v, c.line);
          if (e.sweep.axis.rfind("sweep.", 0) == 0) c.fail("cannot sweep over a sweep key");
        },
        [](const ExperimentConfig& e) { return e.sweep.axis; }};
    m["sweep.values"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx&) { e.sweep.values = split_list(v); },
        [](const ExperimentConfig& e) { return join(e.sweep.values); }};

    m["analysis.n_values"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          e.analysis.n_values.clear();
          for (const auto& s : split_list(v)) e.analysis.n_values.push_back(to_integer<std::size_t>(s, c));
        },
        [](const ExperimentConfig& e) { return join(e.analysis.n_values); }};
    m["analysis.gamma_step"] = FN_DOUBLE(analysis.gamma_step);
    m["analysis.gamma_max"] = FN_DOUBLE(analysis.gamma_max);
    m["analysis.j_hat"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          if (v == "auto") {
            e.analysis.j_hat.reset();
          } else {
            e.analysis.j_hat = to_integer<int>(v, c);
          }
        },
        [](const ExperimentConfig& e) {
          return e.analysis.j_hat ? std::to_string(*e.analysis.j_hat) : std::string("auto");
        }};
    m["analysis.lambda_hat"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          if (v == "auto") {
            e.analysis.lambda_hat.reset();
          } else {
            e.analysis.lambda_hat = to_double(v, c);
          }
        },
        [](const ExperimentConfig& e) {
          return e.analysis.lambda_hat ? format_exact(*e.analysis.lambda_hat) : std::string("auto");
        }};
    m["analysis.mc_samples"] = FN_INT(std::uint64_t, analysis.mc_samples);

    m["offline.distances"] = {
        [](ExperimentConfig& e, const std::string& v, const Ctx& c) {
          e.offline.distances.clear();
          for (const auto& s : split_list(v)) e.offline.distances.push_back(to_double(s, c));
        },
        [](const ExperimentConfig& e) { return join(e.offline.distances); }};
    m["offline.comp_rate"] = FN_DOUBLE(offline.comp_rate);
    m["offline.proc_delay"] = FN_DOUBLE(offline.proc_delay);
    m["offline.max_neighbors"] = FN_INT(int, offline.max_neighbors);
    return m;
  }();
  return r;
}

#undef FN_DOUBLE
#undef FN_INT

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void validate_extras(const ExperimentConfig& e) {
  require(!e.analysis.n_values.empty(), "n_values must not be empty");
  require(e.analysis.gamma_step > 0, "gamma_step must be positive");
  require(e.analysis.gamma_max >= 1, "gamma_max must be at least 1");
  require(!e.analysis.j_hat || *e.analysis.j_hat >= 1, "j_hat must be at least 1");
  require(!e.analysis.lambda_hat || *e.analysis.lambda_hat > 0, "lambda_hat must be positive");
  require(e.analysis.mc_samples >= 1, "mc_samples must be at least 1");
  require(!e.offline.distances.empty(), "offline distances must not be empty");
  for (double d : e.offline.distances) require(d >= 0, "offline distances must be nonnegative");
  require(e.offline.comp_rate > 0, "offline comp_rate must be positive");
  require(e.offline.proc_delay > 0, "offline proc_delay must be positive");
  require(e.offline.max_neighbors >= 0, "max_neighbors must be nonnegative");
  require(e.threads >= 0, "threads must be nonnegative");
  require(e.trace_iterations >= 1, "trace_iterations must be at least 1");
  require(e.sweep.axis.empty() || !e.sweep.values.empty(), "sweep axis given without values");
}

}  // namespace

std::string to_string(BandwidthScheme scheme) {
  return scheme == BandwidthScheme::Equal ? "equal" : "cloud-centric";
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : registry()) keys.push_back(k);
  return keys;
}

std::string resolve_key(const std::string& key, int line) {
  const auto& r = registry();
  if (key.find('.') != std::string::npos) {
    if (!r.count(key)) throw ConfigError("unknown key '" + key + "'", line);
    return key;
  }
  std::string found;
  for (const auto& [k, _] : r) {
    if (k.substr(k.find('.') + 1) == key) {
      if (!found.empty()) throw ConfigError("ambiguous key '" + key + "'", line);
      found = k;
    }
  }
  if (found.empty()) throw ConfigError("unknown key '" + key + "'", line);
  return found;
}

std::vector<Assignment> read_assignments(std::istream& in) {
  std::vector<Assignment> out;
  std::string section;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError("unterminated section header", line);
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", line);
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.empty()) throw ConfigError("missing key", line);
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    out.push_back({section.empty() ? key : section + "." + key, value, line});
  }
  return out;
}

std::vector<Assignment> read_assignments_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return read_assignments(f);
}

Assignment parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + text + "' is not key=value");
  return {trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1)), 0};
}

ExperimentConfig build_config(const std::vector<Assignment>& assignments) {
  ExperimentConfig cfg;
  std::set<std::string> set_keys;
  for (const auto& a : assignments) {
    const std::string key = resolve_key(a.key, a.line);
    registry().at(key).set(cfg, a.value, Ctx{key, a.line});
    set_keys.insert(key);
  }

  // Unset ideal fields follow the arrival ranges.
  auto& ideal = cfg.scenario.ideal;
  const auto& arr = cfg.scenario.arrival;
  auto derive = [&](const char* key, double& field, double value) {
    if (!set_keys.count(key)) field = value;
  };
  derive("ideal.best_comp_rate", ideal.best_comp_rate, arr.comp_rate_max);
  derive("ideal.worst_comp_rate", ideal.worst_comp_rate, arr.comp_rate_min);
  derive("ideal.best_proc_delay", ideal.best_proc_delay, arr.proc_delay_min);
  derive("ideal.worst_proc_delay", ideal.worst_proc_delay, arr.proc_delay_max);
  derive("ideal.max_distance", ideal.max_distance, arr.disk_radius);

  cfg.scenario.validate();
  validate_extras(cfg);
  return cfg;
}

ExperimentConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  auto assignments = path.empty() ? std::vector<Assignment>{} : read_assignments_file(path);
  for (const auto& o : overrides) assignments.push_back(parse_override(o));
  return build_config(assignments);
}

std::string ExperimentConfig::canonical() const {
  std::string out;
  for (const auto& [k, entry] : registry()) out += k + " = " + entry.get(*this) + "\n";
  return out;
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace fognet
