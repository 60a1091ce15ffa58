#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fognet/config.hpp"
#include "fognet/errors.hpp"
#include "fognet/experiments.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kInfeasible = 3, kCap = 4 };

struct Options {
  std::string config;
  std::string out = "out";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

std::vector<fognet::Assignment> assignments(const Options& o) {
  auto a = o.config.empty() ? std::vector<fognet::Assignment>{} : fognet::read_assignments_file(o.config);
  for (const auto& s : o.overrides) a.push_back(fognet::parse_override(s));
  if (o.seed) a.push_back({"run.seed", std::to_string(*o.seed), 0});
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fog network formation and task distribution experiments"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<const char*, const char*>> commands{
      {"run", "Monte Carlo replications of one scenario"},
      {"sweep", "Replications over the values of one config key"},
      {"analyze", "Closed-form formation probability curves"},
      {"offline-sweep", "Optimized latency against the number of identical neighbors"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config,-c", opt.config, "Configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out,-o", opt.out, "Output directory");
    sub->add_option("--set", opt.overrides, "Override, section.key=value");
    sub->add_option("--seed", opt.seed, "Random seed");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    const auto base = assignments(opt);
    if (cmd == "sweep") {
      fognet::cmd_sweep(base, opt.out);
    } else {
      const auto cfg = fognet::build_config(base);
      if (cmd == "run") fognet::cmd_run(cfg, opt.out);
      if (cmd == "analyze") fognet::cmd_analyze(cfg, opt.out);
      if (cmd == "offline-sweep") fognet::cmd_offline_sweep(cfg, opt.out);
    }
  } catch (const fognet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const fognet::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const fognet::IterationCapExceeded& e) {
    std::cerr << "iteration cap: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
