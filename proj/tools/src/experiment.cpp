#include "gshift_cli/experiment.hpp"

#include <cstdlib>
#include <fstream>

#include <gshift/errors.hpp>

namespace gshift::cli {

namespace {

const Json& required(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(key, "missing field");
  return *it;
}

std::size_t size_field(const Json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const Int v = int_from_json(j.at(key), key);
  if (v < 0) throw ConfigError(key, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

Rational rational_field(const Json& j, const char* key, const Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number_integer()) return Rational(to_big(int_from_json(v, key)));
  if (v.is_string()) {
    if (auto r = parse_rational(v.get<std::string>())) return *r;
  }
  throw ConfigError(key, "expected a rational such as \"1/4\"");
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    alphabet.validate();
  } catch (const Error& e) {
    throw ConfigError("alphabet", e.what());
  }
  if (family_size < 2) throw ConfigError("family_size", "must be at least 2");
  if (eps_low <= 0 || eps_low >= 1) throw ConfigError("eps_low", "must lie in (0, 1)");
  if (eps_high <= 0 || eps_high >= 1) throw ConfigError("eps_high", "must lie in (0, 1)");
  if (windows.empty()) throw ConfigError("windows", "at least one window is required");
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const std::string path = "windows[" + std::to_string(w) + "]";
    try {
      validate_window(map.domain(), window_from_ranks(map.domain(), windows[w]), true);
    } catch (const Error& e) {
      throw ConfigError(path, e.what());
    }
  }
  if (theta && !map.domain().contains(*theta)) throw ConfigError("theta", "index outside the map's domain");
  if (schedule.block_boundaries) {
    if (*schedule.block_boundaries < 1 || *schedule.block_boundaries > 12) {
      throw ConfigError("schedule.block_boundaries", "must lie in 1..12");
    }
  } else {
    try {
      Schedule{schedule.horizons, {}}.validate();
    } catch (const Error& e) {
      throw ConfigError("schedule.horizons", e.what());
    }
  }
  if (dense_count < 1) throw ConfigError("dense.count", "must be at least 1");
  if (pattern_max_rank < 1) throw ConfigError("dense.pattern_max_rank", "must be at least 1");
}

Json config_to_json(const ExperimentConfig& c) {
  Json schedule;
  if (c.schedule.block_boundaries) {
    schedule = Json{{"block_boundaries", *c.schedule.block_boundaries}};
  } else {
    Json horizons = Json::array();
    for (Int h : c.schedule.horizons) horizons.push_back(int_to_json(h));
    schedule = Json{{"horizons", horizons}};
  }
  Json windows = Json::array();
  for (const auto& w : c.windows) {
    Json ranks = Json::array();
    for (Int r : w) ranks.push_back(int_to_json(r));
    windows.push_back(ranks);
  }
  Json out{{"schema", kConfigSchema},
           {"map", map_to_json(c.map)},
           {"alphabet", alphabet_to_json(c.alphabet)},
           {"family_size", c.family_size},
           {"augmented", c.augmented},
           {"variant", to_string(c.variant)},
           {"windows", windows},
           {"schedule", schedule},
           {"eps_low", to_string(c.eps_low)},
           {"eps_high", to_string(c.eps_high)},
           {"seed", c.seed},
           {"dense", {{"count", c.dense_count}, {"pattern_max_rank", int_to_json(c.pattern_max_rank)}}}};
  if (c.theta) out["theta"] = index_to_json(*c.theta);
  return out;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kConfigSchema) {
    throw ConfigError("schema", std::string("unsupported schema, expected ") + kConfigSchema);
  }
  ExperimentConfig c;
  c.map = map_from_json(required(j, "map"), "map");
  if (j.contains("alphabet")) c.alphabet = alphabet_from_json(j.at("alphabet"), "alphabet");
  c.family_size = size_field(j, "family_size", c.family_size);
  if (j.contains("augmented")) {
    if (!j.at("augmented").is_boolean()) throw ConfigError("augmented", "expected a boolean");
    c.augmented = j.at("augmented").get<bool>();
  }
  if (j.contains("variant")) {
    if (!j.at("variant").is_string()) throw ConfigError("variant", "expected \"plain\" or \"weave\"");
    try {
      c.variant = parse_block_variant(j.at("variant").get<std::string>());
    } catch (const Error& e) {
      throw ConfigError("variant", e.what());
    }
  }
  if (j.contains("theta")) c.theta = index_from_json(j.at("theta"), "theta");
  if (j.contains("windows")) {
    const Json& ws = j.at("windows");
    if (!ws.is_array()) throw ConfigError("windows", "expected an array of rank lists");
    c.windows.clear();
    for (std::size_t w = 0; w < ws.size(); ++w) {
      const std::string path = "windows[" + std::to_string(w) + "]";
      if (!ws[w].is_array()) throw ConfigError(path, "expected an array of ranks");
      std::vector<Int> ranks;
      for (std::size_t i = 0; i < ws[w].size(); ++i) {
        ranks.push_back(int_from_json(ws[w][i], path + "[" + std::to_string(i) + "]"));
      }
      c.windows.push_back(std::move(ranks));
    }
  }
  if (j.contains("schedule")) {
    const Json& s = j.at("schedule");
    if (!s.is_object()) throw ConfigError("schedule", "expected an object");
    if (s.contains("block_boundaries")) {
      c.schedule.block_boundaries = static_cast<std::size_t>(int_from_json(s.at("block_boundaries"), "schedule.block_boundaries"));
    } else if (s.contains("horizons")) {
      const Json& h = s.at("horizons");
      if (!h.is_array()) throw ConfigError("schedule.horizons", "expected an array");
      c.schedule.block_boundaries.reset();
      for (std::size_t i = 0; i < h.size(); ++i) {
        c.schedule.horizons.push_back(int_from_json(h[i], "schedule.horizons[" + std::to_string(i) + "]"));
      }
    } else {
      throw ConfigError("schedule", "expected \"block_boundaries\" or \"horizons\"");
    }
  }
  c.eps_low = rational_field(j, "eps_low", c.eps_low);
  c.eps_high = rational_field(j, "eps_high", c.eps_high);
  if (j.contains("seed")) {
    const Int seed = int_from_json(j.at("seed"), "seed");
    if (seed < 0) throw ConfigError("seed", "expected a nonnegative integer");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  if (j.contains("dense")) {
    const Json& d = j.at("dense");
    if (!d.is_object()) throw ConfigError("dense", "expected an object");
    if (d.contains("count")) c.dense_count = static_cast<std::size_t>(int_from_json(d.at("count"), "dense.count"));
    if (d.contains("pattern_max_rank")) c.pattern_max_rank = int_from_json(d.at("pattern_max_rank"), "dense.pattern_max_rank");
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

Int default_budget() {
  if (const char* env = std::getenv("GSHIFT_BUDGET")) {
    auto v = parse_int(env);
    if (!v || *v < 1) throw ConfigError("GSHIFT_BUDGET", "expected a positive integer");
    return *v;
  }
  return kDefaultBudget;
}

}  // namespace gshift::cli
