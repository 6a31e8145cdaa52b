#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <gshift/errors.hpp>

#include "gshift_cli/experiment.hpp"

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

void write_artifacts(const std::filesystem::path& dir, const gshift::cli::CommandOutput& out) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : out.artifacts) {
    std::ofstream file(dir / name, std::ios::binary);
    if (!file) throw gshift::ConfigError("out", "cannot write " + (dir / name).string());
    file << contents;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized shift experiments: classification, predictions, scrambled families, statistics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string family_path;
  long long horizon_cap = 0;
  long long budget = 0;
  unsigned long long seed = 0;

  const std::map<std::string, std::string> descriptions{
      {"classify", "injectivity, periodic and non-quasi-periodic points of the index map"},
      {"predict", "chaos profile implied by the map classification"},
      {"construct-dc", "orbit-block scrambled family manifest"},
      {"construct-dense", "densified family manifest"},
      {"construct-transitive", "weave family manifest"},
      {"stats", "density profiles as CSV"},
      {"verify", "counting bounds, scrambling surrogate and composition law"},
      {"counterexamples", "catalog maps against their expected profiles"},
  };
  for (const auto& name : gshift::cli::command_names()) {
    const auto it = descriptions.find(name);
    CLI::App* sub = app.add_subcommand(name, it == descriptions.end() ? std::string{} : it->second);
    sub->add_option("--config", config_path, "experiment config (JSON)");
    sub->add_option("--out", out_dir, "directory for JSON/CSV artifacts");
    sub->add_option("--horizon-cap", horizon_cap, "drop scheduled horizons above this value")->check(CLI::PositiveNumber);
    sub->add_option("--budget", budget, "step budget for orbit searches (default: GSHIFT_BUDGET or 65536)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "override the config's sample seed");
    if (name == "stats") sub->add_option("--family", family_path, "family manifest from a construct-* command");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CLI::App* sub = app.get_subcommands().front();
  try {
    gshift::cli::RunOptions options;
    options.budget = budget > 0 ? static_cast<gshift::Int>(budget) : gshift::cli::default_budget();
    if (horizon_cap > 0) options.horizon_cap = static_cast<gshift::Int>(horizon_cap);
    if (sub->count("--seed") > 0) options.seed = seed;
    if (!family_path.empty()) options.family = family_path;

    gshift::cli::ExperimentConfig config;
    if (!config_path.empty()) {
      config = gshift::cli::load_config(config_path);
    } else if (command != "counterexamples") {
      throw gshift::ConfigError("config", "--config is required for " + command);
    }

    const auto out = gshift::cli::run_command(command, config, options);
    std::cout << out.text;
    if (!out_dir.empty()) write_artifacts(out_dir, out);
    return out.exit_code;
  } catch (const gshift::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const gshift::PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const gshift::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << " (try a smaller --horizon-cap or a larger --budget)\n";
    return kExitCheckFailure;
  } catch (const gshift::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
