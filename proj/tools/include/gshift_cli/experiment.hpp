#pragma once

// Experiment configs, reports and the subcommands of the gshift tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gshift/block_lengths.hpp>
#include <gshift/chaos_stats.hpp>
#include <gshift/config_space.hpp>
#include <gshift/serialization.hpp>
#include <gshift/theorems.hpp>

namespace gshift::cli {

inline constexpr const char* kConfigSchema = "gshift.config/1";

struct ScheduleSpec {
  // Block boundaries n_1..n_R when set; otherwise the explicit horizons.
  std::optional<std::size_t> block_boundaries = 8;
  std::vector<Int> horizons;

  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct ExperimentConfig {
  SelfMap map = SelfMap::successor();
  Alphabet alphabet;
  std::size_t family_size = 3;
  bool augmented = true;
  BlockVariant variant = BlockVariant::Plain;
  std::optional<Index> theta;  // defaults to the profile's non-quasi-periodic witness
  std::vector<std::vector<Int>> windows{{1}, {1, 2}, {1, 3}};  // ranks
  ScheduleSpec schedule;
  Rational eps_low{1, 4};
  Rational eps_high{1, 4};
  std::uint64_t seed = 1;
  std::size_t dense_count = 16;
  Int pattern_max_rank = 3;

  void validate() const;  // throws ConfigError

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

Json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunOptions {
  std::optional<Int> horizon_cap;
  Int budget = kDefaultBudget;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> family;  // manifest for stats
};

// Budget from GSHIFT_BUDGET, else the library default.
Int default_budget();

struct CommandOutput {
  int exit_code = 0;
  std::string text;  // printed to stdout
  std::vector<std::pair<std::string, std::string>> artifacts;  // file name, contents
};

struct PairSummary {
  std::size_t first = 0;
  std::size_t second = 0;
  PairVerdict verdict;
};

struct BoundCheck {
  std::size_t first = 0;
  std::size_t second = 0;
  std::size_t block = 0;
  std::optional<std::size_t> window_id;  // unset for the {θ} disagreement check
  bool skipped = false;                  // horizon above the cap
  ProofBoundResult result;
};

struct Report {
  ExperimentConfig config;
  MapProfile profile;
  ChaosPrediction prediction;
  std::vector<PairSummary> pairs;
  std::vector<BoundCheck> bounds;
  LawReport composition;
  bool pass = false;

  Json to_json() const;
};

Report verify(const ExperimentConfig& config, const RunOptions& options);

// Dispatches one of: classify, predict, construct-dc, construct-dense,
// construct-transitive, stats, verify, counterexamples.
CommandOutput run_command(const std::string& command, const ExperimentConfig& config, const RunOptions& options);

const std::vector<std::string>& command_names();

}  // namespace gshift::cli
