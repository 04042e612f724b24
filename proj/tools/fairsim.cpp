#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "fairsim/experiment/config.hpp"
#include "fairsim/experiment/output.hpp"
#include "fairsim/experiment/presets.hpp"
#include "fairsim/experiment/runner.hpp"

using namespace fairsim::experiment;

namespace {

ExperimentConfig resolve(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) {
    return load_config(source);
  }
  if (auto preset = find_preset(source)) {
    return *preset;
  }
  throw ConfigError("'" + source + "' is neither a config file nor a preset (see `fairsim presets list`)");
}

// Prints diagnostics; false if any is an error.
bool report(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << to_string(d) << '\n';
  return !has_errors(diagnostics);
}

int execute(ExperimentConfig cfg, const std::string& out, std::optional<std::uint64_t> seed, unsigned parallel,
            bool single) {
  if (seed) {
    cfg.network.seed = *seed;
  }
  if (single && !cfg.sweep.empty()) {
    std::cerr << "error: '" << cfg.id << "' declares sweep axes; use `fairsim sweep`\n";
    return 2;
  }
  if (!report(validate(cfg))) {
    return 2;
  }
  const auto points = expand_sweep(cfg);
  const auto results = run_all(points, parallel);
  write_outputs(out, results);
  write_summary(std::cout, results);
  std::cout << "wrote " << results.size() << " run(s) to " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-fairness attack simulator for an endorse-order-deliver ledger"};
  app.require_subcommand(1);

  std::string source;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  unsigned parallel = 1;

  auto* run = app.add_subcommand("run", "run one simulation to the horizon");
  run->add_option("config", source, "config file or preset name")->required();
  run->add_option("--out", out, "output directory");
  run->add_option("--seed", seed, "override the seed");

  auto* sweep = app.add_subcommand("sweep", "run every point of a sweep");
  sweep->add_option("config", source, "config file or preset name")->required();
  sweep->add_option("--out", out, "output directory");
  sweep->add_option("--seed", seed, "base seed for the per-point seeds");
  sweep->add_option("--parallel", parallel, "worker threads")->check(CLI::Range(1u, 256u));

  auto* presets = app.add_subcommand("presets", "list or print the built-in presets");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "list preset names");
  std::string preset_name;
  auto* show = presets->add_subcommand("show", "print a preset as a config file");
  show->add_option("name", preset_name)->required();

  auto* check = app.add_subcommand("validate", "check a config and print diagnostics");
  check->add_option("config", source, "config file or preset name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return execute(resolve(source), out, seed, 1, true);
    }
    if (*sweep) {
      return execute(resolve(source), out, seed, parallel, false);
    }
    if (*presets) {
      if (presets->got_subcommand("list")) {
        for (const auto& p : list_presets()) std::cout << p.name << "\t" << p.description << '\n';
        return 0;
      }
      auto cfg = find_preset(preset_name);
      if (!cfg) {
        std::cerr << "error: no preset named '" << preset_name << "'\n";
        return 2;
      }
      std::cout << to_yaml(*cfg);
      return 0;
    }
    if (*check) {
      const auto cfg = resolve(source);
      const auto diagnostics = validate(cfg);
      report(diagnostics);
      if (diagnostics.empty()) {
        std::cout << "ok (" << grid_size(cfg) << " run(s))\n";
      }
      return has_errors(diagnostics) ? 2 : 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
