#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <gshift/constructors.hpp>
#include <gshift/errors.hpp>

#include "gshift_cli/experiment.hpp"

namespace gshift::cli {

namespace {

constexpr Int kMaxWindowRadius = 8;

Json truth_json(Truth t) {
  switch (t) {
    case Truth::True: return true;
    case Truth::False: return false;
    case Truth::Unknown: return nullptr;
  }
  return nullptr;
}

Json witness_json(const Verdict& v) {
  if (v.witness_pair) return Json::array({index_to_json(v.witness_pair->first), index_to_json(v.witness_pair->second)});
  if (v.witness) return index_to_json(*v.witness);
  return nullptr;
}

std::string unknown_note(const MapProfile& p) {
  std::string out;
  auto note = [&](const char* name, const Verdict& v) {
    if (v.unknown()) out += std::string("warning: ") + name + " is unknown (" + v.certificate + ")\n";
  };
  note("injective", p.injective);
  note("has_periodic_point", p.has_periodic_point);
  note("has_non_quasi_periodic_point", p.has_non_quasi_periodic_point);
  return out;
}

Json prediction_json(const ChaosPrediction& p) {
  return Json{{"li_yorke", verdict_to_json(p.li_yorke)},
              {"distributional", verdict_to_json(p.distributional)},
              {"omega_chaotic", verdict_to_json(p.omega_chaotic)},
              {"dense_distributional", verdict_to_json(p.dense_distributional)},
              {"transitive_distributional", verdict_to_json(p.transitive_distributional)}};
}

std::uint64_t effective_seed(const ExperimentConfig& c, const RunOptions& o) { return o.seed.value_or(c.seed); }

Schedule capped_schedule(const ExperimentConfig& c, const RunOptions& o) {
  Schedule s = c.schedule.block_boundaries ? block_boundary_schedule(c.variant, *c.schedule.block_boundaries)
                                           : explicit_schedule(c.schedule.horizons);
  if (o.horizon_cap) {
    Schedule capped;
    for (std::size_t k = 0; k < s.horizons.size(); ++k) {
      if (s.horizons[k] > *o.horizon_cap) continue;
      capped.horizons.push_back(s.horizons[k]);
      if (!s.labels.empty()) capped.labels.push_back(s.labels[k]);
    }
    if (capped.horizons.empty()) throw ConfigError("horizon-cap", "cap lies below the first scheduled horizon");
    s = std::move(capped);
  }
  return s;
}

std::size_t block_count(const ExperimentConfig& c) {
  if (c.schedule.block_boundaries) return *c.schedule.block_boundaries;
  const Int last = c.schedule.horizons.back();
  const BlockLengths lengths = block_lengths(12, c.variant);
  std::size_t r = 1;
  while (r < lengths.size() && lengths.boundary(r + 1) <= to_big(last)) ++r;
  return r;
}

Index anchor_of(const ExperimentConfig& c, const MapProfile& profile) {
  if (c.theta) return *c.theta;
  if (profile.has_non_quasi_periodic_point.proven_true() && profile.has_non_quasi_periodic_point.witness) {
    return *profile.has_non_quasi_periodic_point.witness;
  }
  throw PreconditionFailed("no certified non-quasi-periodic point to anchor the family; set \"theta\"");
}

std::vector<Window> windows_of(const ExperimentConfig& c) {
  std::vector<Window> out;
  for (const auto& ranks : c.windows) out.push_back(window_from_ranks(c.map.domain(), ranks));
  return out;
}

std::optional<Int> orbit_radius(const SelfMap& map, const Index& theta, const Window& window) {
  for (Int n = 0; n <= kMaxWindowRadius; ++n) {
    try {
      validate_orbit_window(map, theta, window, n);
      return n;
    } catch (const InvalidArgument&) {
    }
  }
  return std::nullopt;
}

struct Family {
  std::string kind;
  Index theta;
  std::vector<MemberSet> member_sets;
  std::vector<Configuration> members;
  std::shared_ptr<const Configuration> source;
  Json extra = Json::object();
};

Configuration transitive_source(const ExperimentConfig& c) {
  if (!(c.map.domain() == Domain::integers())) {
    throw PreconditionFailed("the weave needs a transitive source point on the integers; map lives on " +
                             c.map.domain().describe());
  }
  return Configuration::transitive_word(c.alphabet.size());
}

Family build_family(const std::string& kind, const ExperimentConfig& c, const MapProfile& profile, Int budget) {
  Family f;
  f.kind = kind;
  f.theta = anchor_of(c, profile);
  // v_n is built from u_n, so densifying consumes one member per output.
  const std::size_t size = kind == "dense" ? std::max(c.family_size, c.dense_count) : c.family_size;
  const AlmostDisjointFamily adf = almost_disjoint_family(size, c.augmented);
  f.member_sets = adf.members;
  const BlockVariant variant = kind == "transitive" ? BlockVariant::Weave : c.variant;
  ScrambledFamilySpec spec{c.map, {f.theta}, c.alphabet, variant, adf};
  if (variant == BlockVariant::Weave) {
    f.source = std::make_shared<const Configuration>(transitive_source(c));
    f.members = transitive_weave_family(spec, *f.source, budget);
  } else {
    f.members = dc_family(spec, budget);
  }
  if (kind == "dense") {
    const PatternEnumeration enumeration(c.map.domain(), c.alphabet.size());
    DenseFamily dense = densify_family(c.map, f.members, enumeration, c.dense_count, budget);
    std::vector<MemberSet> sets;
    Json used = Json::array();
    for (auto b : dense.base_members) {
      sets.push_back(f.member_sets[b % f.member_sets.size()]);
      used.push_back(b);
    }
    f.member_sets = std::move(sets);
    f.members = std::move(dense.members);
    f.extra["base_members"] = used;
    f.extra["patterns_covered_up_to_rank"] = int_to_json(c.pattern_max_rank);
    f.extra["pattern_count"] = int_to_json(enumeration.count_up_to(c.pattern_max_rank));
  }
  return f;
}

std::string block_word(const ExperimentConfig& c, const MemberSet& m, std::size_t blocks) {
  std::string out;
  for (std::size_t r = 1; r <= blocks; ++r) {
    if (!out.empty()) out += ' ';
    out += c.alphabet.names[m.contains(static_cast<Int>(r)) ? c.alphabet.p : c.alphabet.q];
  }
  return out;
}

Json manifest_json(const ExperimentConfig& c, const Family& f) {
  const std::size_t blocks = block_count(c);
  const BlockVariant variant = f.kind == "transitive" ? BlockVariant::Weave : c.variant;
  const BlockLengths lengths = block_lengths(blocks, variant);
  Json s = Json::array();
  Json n = Json::array();
  for (std::size_t r = 1; r <= blocks; ++r) {
    s.push_back(lengths.s(r).str());
    n.push_back(lengths.boundary(r).str());
  }
  Json members = Json::array();
  Json configs = Json::array();
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    members.push_back(Json{{"id", i},
                           {"member_set", member_set_to_json(f.member_sets[i])},
                           {"member_set_text", f.member_sets[i].describe()},
                           {"block_symbols", block_word(c, f.member_sets[i], blocks)}});
    configs.push_back(configuration_to_json(f.members[i]));
  }
  Json out{{"schema", "gshift.family/1"},
           {"kind", f.kind},
           {"config", config_to_json(c)},
           {"theta", index_to_json(f.theta)},
           {"layout", {{"variant", to_string(variant)}, {"block_lengths", s}, {"block_boundaries", n}}},
           {"members", members},
           {"configurations", configs}};
  for (auto it = f.extra.begin(); it != f.extra.end(); ++it) out[it.key()] = it.value();
  return out;
}

std::vector<Configuration> load_family_configurations(const std::filesystem::path& path, const ExperimentConfig& c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("family", "cannot open manifest " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("family", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != "gshift.family/1") {
    throw ConfigError("family.schema", "expected a gshift.family/1 manifest");
  }
  if (!j.contains("configurations") || !j.at("configurations").is_array()) {
    throw ConfigError("family.configurations", "expected an array");
  }
  std::vector<Configuration> out;
  const Json& cs = j.at("configurations");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    out.push_back(configuration_from_json(cs[i], "family.configurations[" + std::to_string(i) + "]"));
    if (!(out.back().domain() == c.map.domain())) {
      throw ConfigError("family.configurations[" + std::to_string(i) + "]", "configuration lives on another domain");
    }
  }
  return out;
}

std::string rational_text(const Rational& r) { return to_string(r); }

std::string stats_csv(const std::vector<PairSummary>& pairs) {
  std::ostringstream out;
  out << "pair_id,window_id,n,count,fraction_num,fraction_den,running_min,running_max\n";
  for (const auto& pair : pairs) {
    for (std::size_t w = 0; w < pair.verdict.profiles.size(); ++w) {
      for (const auto& p : pair.verdict.profiles[w].points) {
        out << pair.first << '-' << pair.second << ',' << w << ',' << to_string(p.n) << ',' << to_string(p.count) << ','
            << boost::multiprecision::numerator(p.fraction) << ',' << boost::multiprecision::denominator(p.fraction)
            << ',' << rational_text(p.running_min) << ',' << rational_text(p.running_max) << '\n';
      }
    }
  }
  return out.str();
}

std::vector<PairSummary> pair_summaries(const ExperimentConfig& c, const std::vector<Configuration>& members,
                                        const Schedule& schedule) {
  const auto windows = windows_of(c);
  std::vector<PairSummary> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      out.push_back({i, j, dc_pair_report(c.map, members[i], members[j], windows, schedule, c.eps_low, c.eps_high)});
    }
  }
  return out;
}

CommandOutput json_output(const Json& j, const std::string& file, int exit_code = 0, const std::string& prefix = {}) {
  CommandOutput out;
  out.exit_code = exit_code;
  out.text = prefix + j.dump(2) + "\n";
  out.artifacts.emplace_back(file, j.dump(2) + "\n");
  return out;
}

CommandOutput classify(const ExperimentConfig& c, const RunOptions& o) {
  const MapProfile p = map_profile(c.map, o.budget);
  Json j{{"schema", "gshift.classify/1"},
         {"map", map_to_json(c.map)},
         {"map_text", c.map.describe()},
         {"injective", truth_json(p.injective.value)},
         {"has_periodic_point", truth_json(p.has_periodic_point.value)},
         {"has_non_quasi_periodic_point", truth_json(p.has_non_quasi_periodic_point.value)},
         {"witnesses",
          {{"injective", witness_json(p.injective)},
           {"has_periodic_point", witness_json(p.has_periodic_point)},
           {"has_non_quasi_periodic_point", witness_json(p.has_non_quasi_periodic_point)}}},
         {"provenance",
          {{"injective", to_string(p.injective.provenance)},
           {"has_periodic_point", to_string(p.has_periodic_point.provenance)},
           {"has_non_quasi_periodic_point", to_string(p.has_non_quasi_periodic_point.provenance)}}},
         {"certificates",
          {{"injective", p.injective.certificate},
           {"has_periodic_point", p.has_periodic_point.certificate},
           {"has_non_quasi_periodic_point", p.has_non_quasi_periodic_point.certificate}}}};
  CommandOutput out = json_output(j, "classify.json");
  out.text = unknown_note(p) + out.text;
  return out;
}

CommandOutput predict_command(const ExperimentConfig& c, const RunOptions& o) {
  const MapProfile p = map_profile(c.map, o.budget);
  const ChaosPrediction prediction = predict(p);
  Json j{{"schema", "gshift.predict/1"},
         {"map", map_to_json(c.map)},
         {"map_text", c.map.describe()},
         {"profile", profile_to_json(p)},
         {"prediction", prediction_json(prediction)},
         {"implication_chain_holds", implication_chain_holds(prediction)}};
  CommandOutput out = json_output(j, "predict.json", implication_chain_holds(prediction) ? 0 : 1);
  out.text = unknown_note(p) + out.text;
  return out;
}

CommandOutput construct(const std::string& kind, const ExperimentConfig& c, const RunOptions& o) {
  const MapProfile p = map_profile(c.map, o.budget);
  const Family f = build_family(kind, c, p, o.budget);
  const Json manifest = manifest_json(c, f);
  CommandOutput out;
  out.artifacts.emplace_back("family_" + kind + ".json", manifest.dump(2) + "\n");
  std::ostringstream text;
  text << kind << " family on " << c.map.describe() << " anchored at " << to_string(f.theta) << ": "
       << f.members.size() << " members\n";
  for (const auto& m : manifest.at("members")) {
    text << "  member " << m.at("id").get<std::size_t>() << " [" << m.at("member_set_text").get<std::string>()
         << "] blocks: " << m.at("block_symbols").get<std::string>() << "\n";
  }
  out.text = text.str();
  return out;
}

CommandOutput stats(const ExperimentConfig& c, const RunOptions& o) {
  std::vector<Configuration> members;
  if (o.family) {
    members = load_family_configurations(*o.family, c);
  } else {
    const MapProfile p = map_profile(c.map, o.budget);
    members = build_family(c.variant == BlockVariant::Weave ? "transitive" : "dc", c, p, o.budget).members;
  }
  if (members.size() < 2) throw ConfigError("family", "stats needs at least two configurations");
  const auto pairs = pair_summaries(c, members, capped_schedule(c, o));
  CommandOutput out;
  out.text = stats_csv(pairs);
  out.artifacts.emplace_back("stats.csv", out.text);
  return out;
}

CommandOutput counterexamples(const RunOptions& o) {
  const auto suite = counterexample_suite(o.budget);
  std::ostringstream csv;
  std::ostringstream pretty;
  csv << "map,expected,computed,pass\n";
  std::size_t passed = 0;
  auto letters = [](const ExpectedPrediction& e) {
    auto l = [](Truth t) { return t == Truth::True ? 'T' : t == Truth::False ? 'F' : '?'; };
    return std::string{l(e.distributional), ' ', l(e.omega_chaotic), ' ', l(e.li_yorke), ' ', l(e.dense), ' ',
                       l(e.transitive)};
  };
  pretty << std::left << std::setw(26) << "map" << std::setw(12) << "expected" << std::setw(12) << "computed"
         << "pass\n";
  for (const auto& e : suite) {
    const ExpectedPrediction computed = truths_of(e.computed);
    csv << e.name << ',' << to_string(e.expected) << ',' << to_string(computed) << ',' << (e.pass ? "true" : "false")
        << '\n';
    pretty << std::left << std::setw(26) << e.name << std::setw(12) << letters(e.expected) << std::setw(12)
           << letters(computed) << (e.pass ? "yes" : "NO") << '\n';
    if (e.pass) ++passed;
  }
  pretty << "columns: distributional omega li_yorke dense transitive\n";
  pretty << passed << "/" << suite.size() << " pass\n";
  CommandOutput out;
  out.exit_code = passed == suite.size() ? 0 : 1;
  out.text = pretty.str();
  out.artifacts.emplace_back("counterexamples.csv", csv.str());
  out.artifacts.emplace_back("counterexamples.txt", pretty.str());
  return out;
}

}  // namespace

Json Report::to_json() const {
  Json pairs_json = Json::array();
  for (const auto& p : pairs) {
    Json windows = Json::array();
    for (const auto& prof : p.verdict.profiles) {
      windows.push_back(Json{{"running_min", to_string(prof.min())}, {"running_max", to_string(prof.max())}});
    }
    pairs_json.push_back(Json{{"pair", {p.first, p.second}},
                              {"dc1", p.verdict.dc1},
                              {"dc2", p.verdict.dc2},
                              {"horizon", int_to_json(p.verdict.horizon)},
                              {"windows", windows}});
  }
  Json bounds_json = Json::array();
  for (const auto& b : bounds) {
    Json entry{{"pair", {b.first, b.second}}, {"block", b.block}, {"skipped", b.skipped}};
    entry["window_id"] = b.window_id ? Json(*b.window_id) : Json(nullptr);
    if (!b.skipped) {
      entry["kind"] = b.result.agreement ? "agreement" : "disagreement";
      entry["horizon"] = int_to_json(b.result.horizon);
      entry["count"] = int_to_json(b.result.count);
      entry["bound"] = int_to_json(b.result.bound);
      entry["holds"] = b.result.holds;
    }
    bounds_json.push_back(entry);
  }
  return Json{{"schema", "gshift.report/1"},
              {"config", config_to_json(config)},
              {"profile", profile_to_json(profile)},
              {"prediction", prediction_json(prediction)},
              {"pairs", pairs_json},
              {"proof_bounds", bounds_json},
              {"composition_law", {{"samples", composition.samples}, {"mismatches", composition.mismatches}, {"pass", composition.pass()}}},
              {"pass", pass}};
}

Report verify(const ExperimentConfig& c, const RunOptions& o) {
  Report report;
  report.config = c;
  report.profile = map_profile(c.map, o.budget);
  report.prediction = predict(report.profile);
  const Family f = build_family(c.variant == BlockVariant::Weave ? "transitive" : "dc", c, report.profile, o.budget);
  const Schedule schedule = capped_schedule(c, o);
  report.pairs = pair_summaries(c, f.members, schedule);

  const std::size_t blocks = block_count(c);
  const BlockLengths lengths = block_lengths(blocks, c.variant);
  const auto windows = windows_of(c);
  std::vector<std::optional<Int>> radii;
  for (const auto& w : windows) radii.push_back(orbit_radius(c.map, f.theta, w));
  for (std::size_t i = 0; i < f.member_sets.size(); ++i) {
    for (std::size_t j = i + 1; j < f.member_sets.size(); ++j) {
      for (std::size_t r = 2; r <= blocks; ++r) {
        const Int rr = static_cast<Int>(r);
        const bool in_a = f.member_sets[i].contains(rr);
        const bool in_b = f.member_sets[j].contains(rr);
        if (!in_a && !in_b) continue;
        DcFamilyParams params{c.map, f.theta, lengths, f.member_sets[i], f.member_sets[j], {}, 0,
                              c.alphabet.p, c.alphabet.q, f.source};
        const bool skip = o.horizon_cap && lengths.boundary(r) > to_big(*o.horizon_cap);
        if (in_a && in_b) {
          for (std::size_t w = 0; w < windows.size(); ++w) {
            if (!radii[w]) continue;
            BoundCheck check{i, j, r, w, skip, {}};
            if (!skip) {
              params.window = windows[w];
              params.radius = *radii[w];
              check.result = proof_bound_check_dc(params, r);
            }
            report.bounds.push_back(check);
          }
        } else {
          BoundCheck check{i, j, r, std::nullopt, skip, {}};
          if (!skip) check.result = proof_bound_check_dc(params, r);
          report.bounds.push_back(check);
        }
      }
    }
  }
  report.composition = check_composition_law(c.map, c.map, 100, effective_seed(c, o));

  bool pass = report.composition.pass();
  for (const auto& b : report.bounds) {
    if (!b.skipped && !b.result.holds) pass = false;
  }
  for (const auto& p : report.pairs) {
    if (!p.verdict.dc1) pass = false;
  }
  report.pass = pass;
  return report;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"classify",  "predict", "construct-dc", "construct-dense",
                                              "construct-transitive", "stats", "verify", "counterexamples"};
  return names;
}

CommandOutput run_command(const std::string& command, const ExperimentConfig& c, const RunOptions& o) {
  if (command == "classify") return classify(c, o);
  if (command == "predict") return predict_command(c, o);
  if (command == "construct-dc") return construct("dc", c, o);
  if (command == "construct-dense") return construct("dense", c, o);
  if (command == "construct-transitive") return construct("transitive", c, o);
  if (command == "stats") return stats(c, o);
  if (command == "counterexamples") return counterexamples(o);
  if (command == "verify") {
    const Report r = verify(c, o);
    std::ostringstream summary;
    std::size_t checked = 0;
    std::size_t held = 0;
    for (const auto& b : r.bounds) {
      if (b.skipped) continue;
      ++checked;
      if (b.result.holds) ++held;
    }
    std::size_t dc1 = 0;
    for (const auto& p : r.pairs) dc1 += p.verdict.dc1 ? 1 : 0;
    summary << "proof bounds: " << held << "/" << checked << " hold\n"
            << "dc1 pairs: " << dc1 << "/" << r.pairs.size() << "\n"
            << "composition law: " << (r.composition.pass() ? "pass" : "FAIL") << "\n"
            << "rollup: " << (r.pass ? "pass" : "FAIL") << "\n";
    CommandOutput out;
    out.exit_code = r.pass ? 0 : 1;
    out.text = summary.str();
    out.artifacts.emplace_back("report.json", r.to_json().dump(2) + "\n");
    out.artifacts.emplace_back("stats.csv", stats_csv(r.pairs));
    return out;
  }
  throw ConfigError("command", "unknown command '" + command + "'");
}

}  // namespace gshift::cli
