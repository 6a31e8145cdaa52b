#include "gshift/serialization.hpp"

#include <limits>

#include "gshift/errors.hpp"

namespace gshift {

namespace {

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(child(path, key), "missing field");
  return *it;
}

std::string string_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) throw ConfigError(child(path, key), "expected a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_array()) throw ConfigError(child(path, key), "expected an array");
  return v;
}

std::uint64_t unsigned_from_json(const Json& j, const std::string& path) {
  const Int v = int_from_json(j, path);
  if (v < 0 || v > static_cast<Int>(std::numeric_limits<std::uint64_t>::max())) {
    throw ConfigError(path, "expected a nonnegative 64-bit integer");
  }
  return static_cast<std::uint64_t>(v);
}

Symbol symbol_from_json(const Json& j, const std::string& path, const Alphabet* alphabet = nullptr) {
  if (j.is_string() && alphabet) {
    try {
      return alphabet->symbol_named(j.get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(path, e.what());
    }
  }
  const std::uint64_t v = unsigned_from_json(j, path);
  if (v > std::numeric_limits<Symbol>::max()) throw ConfigError(path, "symbol out of range");
  if (alphabet && v >= alphabet->size()) throw ConfigError(path, "symbol outside the alphabet");
  return static_cast<Symbol>(v);
}

std::string leaf_rule_name(Rule rule) {
  switch (rule) {
    case Rule::Successor: return "successor";
    case Rule::Predecessor: return "predecessor";
    case Rule::Square: return "square";
    case Rule::SquarePlusOne: return "square_plus_one";
    case Rule::ParityUp: return "parity_up";
    case Rule::ParityDown: return "parity_down";
    default: return {};
  }
}

template <typename F>
auto rethrow_as_config(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

Json int_to_json(Int value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(value));
  }
  return Json(to_string(value));
}

Int int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return static_cast<Int>(j.get<std::uint64_t>());
    return static_cast<Int>(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    if (auto v = parse_int(j.get<std::string>())) return *v;
  }
  throw ConfigError(path, "expected an integer");
}

Json domain_to_json(const Domain& domain) {
  switch (domain.kind()) {
    case Domain::Kind::Integers: return "integers";
    case Domain::Kind::Naturals: return "naturals";
    case Domain::Kind::FiniteRange: return Json{{"finite", int_to_json(*domain.size())}};
    case Domain::Kind::DisjointUnion:
      return Json{{"disjoint_union", {{"left", domain_to_json(domain.left())}, {"right", domain_to_json(domain.right())}}}};
  }
  return nullptr;
}

Domain domain_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "integers") return Domain::integers();
    if (name == "naturals") return Domain::naturals();
    throw ConfigError(path, "unknown domain '" + name + "'");
  }
  if (j.is_object() && j.contains("finite")) {
    return rethrow_as_config(path, [&] { return Domain::finite_range(unsigned_from_json(j.at("finite"), child(path, "finite"))); });
  }
  if (j.is_object() && j.contains("disjoint_union")) {
    const std::string p = child(path, "disjoint_union");
    const Json& du = j.at("disjoint_union");
    return Domain::disjoint_union(domain_from_json(field(du, "left", p), child(p, "left")),
                                  domain_from_json(field(du, "right", p), child(p, "right")));
  }
  throw ConfigError(path, "expected \"integers\", \"naturals\", {\"finite\": n} or {\"disjoint_union\": ...}");
}

Json index_to_json(const Index& index) {
  if (index.has_side()) return to_string(index);
  return int_to_json(index.coord);
}

Index index_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Index::at(int_from_json(j, path));
  if (j.is_string()) {
    if (auto i = parse_index(j.get<std::string>())) return *i;
  }
  throw ConfigError(path, "expected an index (integer or side-tagged string like \"L3\")");
}

Json map_to_json(const SelfMap& map) {
  switch (map.rule()) {
    case Rule::Table: {
      Json entries = Json::array();
      for (auto e : map.entries()) entries.push_back(e);
      return Json{{"rule", "table"}, {"entries", entries}};
    }
    case Rule::Composition:
      return Json{{"rule", "compose"}, {"outer", map_to_json(map.outer())}, {"inner", map_to_json(map.inner())}};
    case Rule::DisjointUnion:
      return Json{{"rule", "disjoint_union"}, {"left", map_to_json(map.left())}, {"right", map_to_json(map.right())}};
    default:
      return Json{{"rule", leaf_rule_name(map.rule())}, {"domain", domain_to_json(map.domain())}};
  }
}

SelfMap map_from_json(const Json& j, const std::string& path) {
  const std::string rule = string_field(j, "rule", path);
  if (rule == "table") {
    const Json& entries = array_field(j, "entries", path);
    std::vector<std::uint64_t> values;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      values.push_back(unsigned_from_json(entries[i], child(child(path, "entries"), i)));
    }
    return rethrow_as_config(child(path, "entries"), [&] { return SelfMap::table(std::move(values)); });
  }
  if (rule == "compose") {
    const SelfMap outer = map_from_json(field(j, "outer", path), child(path, "outer"));
    const SelfMap inner = map_from_json(field(j, "inner", path), child(path, "inner"));
    return rethrow_as_config(path, [&] { return compose_maps(outer, inner); });
  }
  if (rule == "disjoint_union") {
    return disjoint_union_maps(map_from_json(field(j, "left", path), child(path, "left")),
                               map_from_json(field(j, "right", path), child(path, "right")));
  }
  const Domain domain = j.contains("domain") ? domain_from_json(j.at("domain"), child(path, "domain")) : Domain::integers();
  auto only_integers = [&](SelfMap m) {
    if (!(domain == Domain::integers())) throw ConfigError(child(path, "domain"), "rule '" + rule + "' lives on integers");
    return m;
  };
  if (rule == "successor") return rethrow_as_config(child(path, "domain"), [&] { return SelfMap::successor(domain); });
  if (rule == "predecessor") return only_integers(SelfMap::predecessor());
  if (rule == "square") return only_integers(SelfMap::square());
  if (rule == "square_plus_one") return only_integers(SelfMap::square_plus_one());
  if (rule == "parity_up") return only_integers(SelfMap::parity_up());
  if (rule == "parity_down") return only_integers(SelfMap::parity_down());
  throw ConfigError(child(path, "rule"), "unknown rule '" + rule + "'");
}

Json member_set_to_json(const MemberSet& set) {
  Json extras = Json::array();
  for (Int e : set.extras()) extras.push_back(int_to_json(e));
  return Json{{"powers_of", set.power_bases()}, {"evens", set.includes_evens()}, {"extras", extras}};
}

MemberSet member_set_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  std::set<Int> extras;
  if (j.contains("extras")) {
    const Json& e = array_field(j, "extras", path);
    for (std::size_t i = 0; i < e.size(); ++i) extras.insert(int_from_json(e[i], child(child(path, "extras"), i)));
  }
  MemberSet out = MemberSet::explicit_members(std::move(extras));
  if (j.contains("powers_of")) {
    const Json& bases = array_field(j, "powers_of", path);
    for (std::size_t i = 0; i < bases.size(); ++i) {
      const auto base = unsigned_from_json(bases[i], child(child(path, "powers_of"), i));
      out = rethrow_as_config(child(child(path, "powers_of"), i), [&] { return out.united(MemberSet::powers_of(base)); });
    }
  }
  if (j.contains("evens")) {
    const Json& evens = j.at("evens");
    if (!evens.is_boolean()) throw ConfigError(child(path, "evens"), "expected a boolean");
    if (evens.get<bool>()) out = out.with_evens();
  }
  return out;
}

Json pattern_to_json(const Domain& domain, const CylinderPattern& pattern) {
  Json window = Json::array();
  for (const auto& i : pattern.window) window.push_back(int_to_json(rank_of(domain, i)));
  Json symbols = Json::array();
  for (Symbol s : pattern.symbols) symbols.push_back(static_cast<int>(s));
  return Json{{"window", window}, {"symbols", symbols}};
}

CylinderPattern pattern_from_json(const Domain& domain, const Json& j, const Alphabet& alphabet, const std::string& path) {
  const Json& window = array_field(j, "window", path);
  const Json& symbols = array_field(j, "symbols", path);
  std::vector<Int> ranks;
  for (std::size_t i = 0; i < window.size(); ++i) ranks.push_back(int_from_json(window[i], child(child(path, "window"), i)));
  CylinderPattern out;
  out.window = rethrow_as_config(child(path, "window"), [&] { return window_from_ranks(domain, ranks); });
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    out.symbols.push_back(symbol_from_json(symbols[i], child(child(path, "symbols"), i), &alphabet));
  }
  rethrow_as_config(path, [&] {
    validate_pattern(domain, out);
    return 0;
  });
  return out;
}

Json alphabet_to_json(const Alphabet& alphabet) {
  return Json{{"symbols", alphabet.names}, {"p", alphabet.names[alphabet.p]}, {"q", alphabet.names[alphabet.q]}};
}

Alphabet alphabet_from_json(const Json& j, const std::string& path) {
  Alphabet a;
  const Json& names = array_field(j, "symbols", path);
  a.names.clear();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!names[i].is_string()) throw ConfigError(child(child(path, "symbols"), i), "expected a string");
    a.names.push_back(names[i].get<std::string>());
  }
  auto pick = [&](const char* key, Symbol fallback) -> Symbol {
    if (!j.contains(key)) return fallback;
    return symbol_from_json(j.at(key), child(path, key), &a);
  };
  a.p = 0;
  a.q = 1;
  if (a.names.size() < 2) throw ConfigError(child(path, "symbols"), "alphabet needs at least two symbols");
  a.p = pick("p", 0);
  a.q = pick("q", 1);
  rethrow_as_config(path, [&] {
    a.validate();
    return 0;
  });
  return a;
}

Json configuration_to_json(const Configuration& c) {
  using K = Configuration::Kind;
  switch (c.kind()) {
    case K::Constant:
      return Json{{"kind", "constant"}, {"domain", domain_to_json(c.domain())}, {"symbol", c.constant_symbol()}};
    case K::FinitePatch: {
      Json patch = Json::array();
      for (const auto& [i, s] : c.patch()) patch.push_back(Json{{"index", index_to_json(i)}, {"symbol", s}});
      return Json{{"kind", "finite_patch"}, {"base", configuration_to_json(c.base())}, {"patch", patch}};
    }
    case K::PeriodicWord:
      return Json{{"kind", "periodic_word"}, {"domain", domain_to_json(c.domain())}, {"word", c.word()}};
    case K::TransitiveWord:
      return Json{{"kind", "transitive_word"}, {"alphabet_size", c.alphabet_size()}};
    case K::OrbitBlocks: {
      const auto& b = c.blocks();
      Json anchors = Json::array();
      for (const auto& a : b.anchors) anchors.push_back(index_to_json(a));
      Json out{{"kind", "orbit_blocks"},
               {"map", map_to_json(b.map)},
               {"anchors", anchors},
               {"variant", to_string(b.variant)},
               {"members", member_set_to_json(b.members)},
               {"p", b.p},
               {"q", b.q}};
      if (b.source) out["source"] = configuration_to_json(*b.source);
      return out;
    }
    case K::Embedded:
      return Json{{"kind", "embedded"},
                  {"map", map_to_json(c.map())},
                  {"theta", index_to_json(c.theta())},
                  {"inner", configuration_to_json(c.inner())},
                  {"fill", c.fill()}};
    case K::Shifted:
      return Json{{"kind", "shifted"}, {"base", configuration_to_json(c.base())}, {"map", map_to_json(c.map())},
                  {"power", int_to_json(c.power())}};
    case K::SideView:
      return Json{{"kind", "side_view"}, {"base", configuration_to_json(c.base())},
                  {"side", c.side() == Side::Left ? "left" : "right"}};
  }
  return nullptr;
}

Configuration configuration_from_json(const Json& j, const std::string& path) {
  const std::string kind = string_field(j, "kind", path);
  auto symbol = [&](const char* key) { return symbol_from_json(field(j, key, path), child(path, key)); };
  auto sub = [&](const char* key) { return configuration_from_json(field(j, key, path), child(path, key)); };
  auto map = [&] { return map_from_json(field(j, "map", path), child(path, "map")); };
  if (kind == "constant") {
    return Configuration::constant(domain_from_json(field(j, "domain", path), child(path, "domain")), symbol("symbol"));
  }
  if (kind == "finite_patch") {
    const Configuration base = sub("base");
    const Json& patch = array_field(j, "patch", path);
    std::map<Index, Symbol> entries;
    for (std::size_t i = 0; i < patch.size(); ++i) {
      const std::string p = child(child(path, "patch"), i);
      entries[index_from_json(field(patch[i], "index", p), child(p, "index"))] =
          symbol_from_json(field(patch[i], "symbol", p), child(p, "symbol"));
    }
    return rethrow_as_config(child(path, "patch"), [&] { return Configuration::finite_patch(base, std::move(entries)); });
  }
  if (kind == "periodic_word") {
    const Domain domain = domain_from_json(field(j, "domain", path), child(path, "domain"));
    const Json& word = array_field(j, "word", path);
    std::vector<Symbol> symbols;
    for (std::size_t i = 0; i < word.size(); ++i) symbols.push_back(symbol_from_json(word[i], child(child(path, "word"), i)));
    return rethrow_as_config(child(path, "word"), [&] { return Configuration::periodic_word(domain, std::move(symbols)); });
  }
  if (kind == "transitive_word") {
    const auto size = unsigned_from_json(field(j, "alphabet_size", path), child(path, "alphabet_size"));
    return rethrow_as_config(child(path, "alphabet_size"), [&] { return Configuration::transitive_word(size); });
  }
  if (kind == "orbit_blocks") {
    OrbitBlocksSpec spec{map(), {}, BlockVariant::Plain, MemberSet::explicit_members({}), 0, 1, nullptr};
    const Json& anchors = array_field(j, "anchors", path);
    for (std::size_t i = 0; i < anchors.size(); ++i) spec.anchors.push_back(index_from_json(anchors[i], child(child(path, "anchors"), i)));
    spec.variant = rethrow_as_config(child(path, "variant"), [&] { return parse_block_variant(string_field(j, "variant", path)); });
    spec.members = member_set_from_json(field(j, "members", path), child(path, "members"));
    spec.p = symbol("p");
    spec.q = symbol("q");
    if (j.contains("source")) spec.source = std::make_shared<const Configuration>(sub("source"));
    return rethrow_as_config(path, [&] { return Configuration::orbit_blocks(std::move(spec)); });
  }
  if (kind == "embedded") {
    const SelfMap m = map();
    const Index theta = index_from_json(field(j, "theta", path), child(path, "theta"));
    const Configuration inner = sub("inner");
    const Symbol fill = symbol("fill");
    return rethrow_as_config(path, [&] { return Configuration::embedded(m, theta, inner, fill); });
  }
  if (kind == "shifted") {
    const Configuration base = sub("base");
    const SelfMap m = map();
    const Int power = int_from_json(field(j, "power", path), child(path, "power"));
    return rethrow_as_config(path, [&] { return Configuration::shifted(base, m, power); });
  }
  if (kind == "side_view") {
    const Configuration base = sub("base");
    const std::string side = string_field(j, "side", path);
    if (side != "left" && side != "right") throw ConfigError(child(path, "side"), "expected \"left\" or \"right\"");
    return rethrow_as_config(path, [&] { return Configuration::side_view(base, side == "left" ? Side::Left : Side::Right); });
  }
  throw ConfigError(child(path, "kind"), "unknown configuration kind '" + kind + "'");
}

Json verdict_to_json(const Verdict& v) {
  Json out{{"value", to_string(v.value)}, {"provenance", to_string(v.provenance)}, {"certificate", v.certificate}};
  if (v.witness) out["witness"] = index_to_json(*v.witness);
  if (v.witness_pair) out["witness_pair"] = Json::array({index_to_json(v.witness_pair->first), index_to_json(v.witness_pair->second)});
  if (v.exhausted_budget) out["exhausted_budget"] = int_to_json(*v.exhausted_budget);
  return out;
}

Json profile_to_json(const MapProfile& p) {
  return Json{{"injective", verdict_to_json(p.injective)},
              {"has_periodic_point", verdict_to_json(p.has_periodic_point)},
              {"has_non_quasi_periodic_point", verdict_to_json(p.has_non_quasi_periodic_point)}};
}

}  // namespace gshift
