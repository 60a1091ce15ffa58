#include <doctest.h>

#include <clocale>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fognet/config.hpp"
#include "fognet/csv.hpp"
#include "fognet/errors.hpp"
#include "fognet/experiments.hpp"

using namespace fognet;
using doctest::Approx;

namespace {

ExperimentConfig from_text(const std::string& text, std::vector<std::string> overrides = {}) {
  std::istringstream in(text);
  auto a = read_assignments(in);
  for (const auto& o : overrides) a.push_back(parse_override(o));
  return build_config(a);
}

int error_line(const std::string& text) {
  try {
    from_text(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty file gives the default scenario") {
  const auto c = from_text("");
  const auto& s = c.scenario;
  CHECK(s.channel.tx_power == Approx(0.1));
  CHECK(s.channel.noise_psd == Approx(3.981071705534986e-21).epsilon(1e-12));
  CHECK(s.channel.beta1 == 1e-3);
  CHECK(s.channel.beta2 == 4.0);
  CHECK(s.channel.fading == 1.0);
  CHECK(s.channel.packet_bits == 524288.0);
  CHECK(s.channel.total_bandwidth == 3e6);
  CHECK(s.local_cloud.local_proc_delay == 0.05);
  CHECK(s.local_cloud.cloud_proc_delay == 0.025);
  CHECK(s.arrival.comp_rate_min == 15.0);
  CHECK(s.arrival.comp_rate_max == 40.0);
  CHECK(s.n_observations == 300);
  CHECK(s.tau == 0.002);
  CHECK(s.replications == 1000);
  CHECK(s.scheme == BandwidthScheme::Equal);
}

TEST_CASE("values, sections, comments and conversions") {
  const auto c = from_text(
      "# comment\n"
      "[channel]\n"
      "tx_power_dbm = 23   # trailing\n"
      "\n"
      "[network]\n"
      "scheme = cloud-centric\n"
      "cloud_distance = 140\n"
      "[arrival]\n"
      "comp_rate_max = 35\n"
      "[analysis]\n"
      "n_values = 50, 150\n");
  CHECK(c.scenario.channel.tx_power == Approx(0.19952623149688797));
  CHECK(c.scenario.scheme == BandwidthScheme::CloudCentric);
  CHECK(c.scenario.local_cloud.cloud_distance == 140.0);
  CHECK(c.scenario.ideal.best_comp_rate == 35.0);  // follows the arrival range
  CHECK(c.analysis.n_values == std::vector<std::size_t>{50, 150});
  CHECK(from_text("[channel]\ntx_power_dbm = 20\n").scenario.channel.tx_power == Approx(0.1).epsilon(1e-14));
}

TEST_CASE("explicit ideal fields win over derived ones") {
  const auto c = from_text("[ideal]\nbest_comp_rate = 38\n[arrival]\ncomp_rate_max = 35\n");
  CHECK(c.scenario.ideal.best_comp_rate == 38.0);
}

TEST_CASE("errors name the line and the invariant") {
  try {
    from_text("[framework]\ntau = -0.1\n");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("tau must be positive") != std::string::npos);
  }
  CHECK(error_line("[task]\nx_rate = ten\n") == 2);
  CHECK(error_line("\n\n[task\n") == 3);
  CHECK(error_line("[task]\nnonsense\n") == 2);
  CHECK(error_line("[task]\nunknown_key = 1\n") == 2);
  CHECK(error_line("[network]\nscheme = weird\n") == 2);
}

TEST_CASE("overrides") {
  const auto c = from_text("[task]\nx_rate = 12\n", {"task.x_rate=15", "cloud_distance = 100", "seed=9"});
  CHECK(c.scenario.x_rate == 15.0);
  CHECK(c.scenario.local_cloud.cloud_distance == 100.0);
  CHECK(c.scenario.seed == 9);
  CHECK_THROWS_AS(from_text("", {"no_such_key=1"}), ConfigError);
  CHECK_THROWS_AS(from_text("", {"x_rate"}), ConfigError);
}

TEST_CASE("bare keys resolve to their section") {
  CHECK(resolve_key("tau") == "framework.tau");
  CHECK(resolve_key("comp_rate") == "offline.comp_rate");
  CHECK(resolve_key("network.scheme") == "network.scheme");
  CHECK_THROWS_AS(resolve_key("network.tau"), ConfigError);
  CHECK_THROWS_AS(resolve_key("rate"), ConfigError);
}

TEST_CASE("sweep axis must be a known key") {
  CHECK(from_text("[sweep]\naxis = x_rate\nvalues = 10, 11\n").sweep.axis == "task.x_rate");
  CHECK(error_line("[sweep]\naxis = nonsense\nvalues = 1\n") == 2);
}

TEST_CASE("canonical dump and hash") {
  const auto a = from_text("");
  const auto b = from_text("[task]\nx_rate = 10\n");
  CHECK(a.canonical() == b.canonical());
  CHECK(a.hash() == b.hash());
  CHECK(from_text("[task]\nx_rate = 11\n").hash() != a.hash());
  // The dump parses back to the same configuration.
  std::string dump = a.canonical();
  CHECK(from_text(dump).canonical() == dump);
}

TEST_CASE("csv formatting is locale independent") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CsvTable t({"a", "b"});
  t.add_metadata("seed", "1");
  t.add_row({1.5, std::int64_t{2}});
  t.add_row({std::string("x,y"), 0.25});
  CHECK(t.str() == "# seed: 1\na,b\n1.5,2\n\"x,y\",0.25\n");
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("command outputs are deterministic") {
  const auto dir = std::filesystem::temp_directory_path() / "fognet_cfg_test";
  std::filesystem::remove_all(dir);
  const auto cfg = from_text("[network]\ncloud_distance = 150\n[run]\nreplications = 8\n");
  cmd_offline_sweep(cfg, (dir / "a").string());
  cmd_offline_sweep(cfg, (dir / "b").string());
  CHECK(slurp(dir / "a" / "offline_summary.csv") == slurp(dir / "b" / "offline_summary.csv"));
  cmd_run(cfg, (dir / "a").string());
  cmd_run(cfg, (dir / "b").string());
  const auto reps = slurp(dir / "a" / "replications.csv");
  CHECK(reps == slurp(dir / "b" / "replications.csv"));
  CHECK(reps.find("# config_hash: ") == 0);
  std::filesystem::remove_all(dir);
}
