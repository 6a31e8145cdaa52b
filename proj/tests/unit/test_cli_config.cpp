#include <gtest/gtest.h>

#include <random>

#include <gshift/errors.hpp>

#include "gshift_cli/experiment.hpp"

using namespace gshift;
using namespace gshift::cli;

namespace {

std::string config_error_path(const Json& j) {
  try {
    config_from_json(j);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(ExperimentConfig, RoundTripsThroughJson) {
  ExperimentConfig c;
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
  c.map = disjoint_union_maps(compose_maps(SelfMap::parity_up(), SelfMap::parity_down()), SelfMap::table({1, 0}));
  c.windows = {{1, 2}};
  c.theta = *parse_index("L1");
  c.schedule.block_boundaries.reset();
  c.schedule.horizons = {5, 10, 400};
  c.eps_low = Rational(1, 8);
  c.seed = 99;
  c.alphabet = Alphabet{{"a", "b", "c"}, 2, 0};
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
}

TEST(ExperimentConfig, RoundTripsRandomMaps) {
  std::mt19937_64 rng(6);
  const std::vector<SelfMap> atoms{SelfMap::successor(), SelfMap::predecessor(), SelfMap::square(),
                                   SelfMap::square_plus_one(), SelfMap::parity_up(), SelfMap::parity_down()};
  for (int trial = 0; trial < 100; ++trial) {
    SelfMap m = atoms[rng() % atoms.size()];
    for (int d = static_cast<int>(rng() % 3); d > 0; --d) m = compose_maps(atoms[rng() % atoms.size()], m);
    if (rng() % 2) m = disjoint_union_maps(m, atoms[rng() % atoms.size()]);
    ExperimentConfig c;
    c.map = m;
    c.windows = {{1}};
    const auto back = config_from_json(Json::parse(config_to_json(c).dump()));
    ASSERT_EQ(back, c) << m.describe();
  }
}

TEST(ExperimentConfig, ErrorsNameTheFieldPath) {
  EXPECT_EQ(config_error_path(Json{{"map", {{"rule", "compose"}, {"outer", {{"rule", "bogus"}}}}}}),
            "map.outer.rule");
  EXPECT_EQ(config_error_path(Json{{"map", {{"rule", "table"}, {"entries", {0, 5}}}}}), "map.entries");
  EXPECT_EQ(config_error_path(Json{{"map", {{"rule", "successor"}}}, {"family_size", 1}}), "family_size");
  EXPECT_EQ(config_error_path(Json{{"map", {{"rule", "successor"}}}, {"eps_low", "3/2"}}), "eps_low");
  EXPECT_EQ(config_error_path(Json{{"map", {{"rule", "successor"}}}, {"windows", {{1, 1}}}}), "windows[0]");
  EXPECT_EQ(config_error_path(Json{{"map", {{"rule", "successor"}}}, {"schedule", {{"horizons", {3, 2}}}}}),
            "schedule.horizons");
  EXPECT_EQ(config_error_path(Json{{"family_size", 3}}), "map");
  EXPECT_EQ(config_error_path(Json{{"map", {{"rule", "square"}, {"domain", "naturals"}}}}), "map.domain");
}

TEST(ExperimentConfig, LoadsShippedConfigs) {
  for (const char* name : {"phi1_dc.json", "phi2_dense.json", "phi1_weave.json"}) {
    EXPECT_NO_THROW(load_config(std::filesystem::path(GSHIFT_CONFIG_DIR) / name)) << name;
  }
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Commands, CounterexamplesTable) {
  const auto out = run_command("counterexamples", ExperimentConfig{}, RunOptions{});
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NE(out.text.find("9/9 pass"), std::string::npos);
  ASSERT_EQ(out.artifacts.size(), 2U);
  EXPECT_EQ(out.artifacts[0].second.rfind("map,expected,computed,pass\n", 0), 0U);
}

TEST(Commands, ClassifyEmitsSchemaAndVerdicts) {
  ExperimentConfig c;
  c.map = SelfMap::square_plus_one();
  const auto out = run_command("classify", c, RunOptions{});
  const Json j = Json::parse(out.artifacts.at(0).second);
  EXPECT_EQ(j.at("schema"), "gshift.classify/1");
  EXPECT_EQ(j.at("injective"), false);
  EXPECT_EQ(j.at("has_periodic_point"), false);
  EXPECT_EQ(j.at("has_non_quasi_periodic_point"), true);
  EXPECT_EQ(j.at("witnesses").at("injective").size(), 2U);
}

TEST(Commands, StatsAreDeterministic) {
  ExperimentConfig c;
  c.schedule.block_boundaries = 6;
  const auto a = run_command("stats", c, RunOptions{});
  const auto b = run_command("stats", c, RunOptions{});
  EXPECT_EQ(a.text, b.text);
  EXPECT_EQ(a.text.substr(0, a.text.find('\n')), "pair_id,window_id,n,count,fraction_num,fraction_den,running_min,running_max");
}

TEST(Commands, VerifyRollsUpThePhi1Pipeline) {
  ExperimentConfig c;
  c.theta = Index::at(0);
  const Report r = verify(c, RunOptions{});
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.bounds.empty());
  for (const auto& b : r.bounds) EXPECT_TRUE(b.skipped || b.result.holds) << b.result.describe();
  EXPECT_EQ(r.to_json().at("schema"), "gshift.report/1");
}

TEST(Commands, HorizonCapSkipsLargeChecks) {
  ExperimentConfig c;
  RunOptions o;
  o.horizon_cap = 50;
  const Report r = verify(c, o);
  bool any_skipped = false;
  for (const auto& b : r.bounds) any_skipped = any_skipped || b.skipped;
  EXPECT_TRUE(any_skipped);
  o.horizon_cap = 0;
  EXPECT_THROW(run_command("stats", c, o), ConfigError);
}

TEST(Commands, PreconditionFailuresSurface) {
  ExperimentConfig c;
  c.map = SelfMap::parity_up();
  EXPECT_THROW(run_command("construct-dc", c, RunOptions{}), PreconditionFailed);
  EXPECT_THROW(run_command("no-such-command", c, RunOptions{}), ConfigError);
}
