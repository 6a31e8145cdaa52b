#pragma once

// JSON forms of domains, maps, indices, member sets, cylinder patterns,
// configurations and verdicts. Readers throw ConfigError naming the
// offending field path (e.g. "map.inner.rule").

#include <string>

#include <nlohmann/json.hpp>

#include "gshift/config_space.hpp"
#include "gshift/member_set.hpp"
#include "gshift/orbit_analysis.hpp"

namespace gshift {

using Json = nlohmann::json;

// Integers travel as JSON numbers when they fit in 64 bits, else as strings.
Json int_to_json(Int value);
Int int_from_json(const Json& j, const std::string& path);

Json domain_to_json(const Domain& domain);
Domain domain_from_json(const Json& j, const std::string& path = "domain");

// Plain coordinates are numbers; side-tagged indices are strings like "L3".
Json index_to_json(const Index& index);
Index index_from_json(const Json& j, const std::string& path = "index");

// {"rule": "successor", "domain": "integers"} | {"rule": "table", "entries": [...]}
// | {"rule": "compose", "outer": ..., "inner": ...}
// | {"rule": "disjoint_union", "left": ..., "right": ...}
Json map_to_json(const SelfMap& map);
SelfMap map_from_json(const Json& j, const std::string& path = "map");

// {"powers_of": [3, ...], "evens": bool, "extras": [...]}
Json member_set_to_json(const MemberSet& set);
MemberSet member_set_from_json(const Json& j, const std::string& path = "members");

// {"window": [ranks], "symbols": [..]}; symbols are numbers or alphabet names.
Json pattern_to_json(const Domain& domain, const CylinderPattern& pattern);
CylinderPattern pattern_from_json(const Domain& domain, const Json& j, const Alphabet& alphabet,
                                  const std::string& path = "pattern");

Json alphabet_to_json(const Alphabet& alphabet);
Alphabet alphabet_from_json(const Json& j, const std::string& path = "alphabet");

// {"kind": "constant" | "finite_patch" | "periodic_word" | "transitive_word"
//  | "orbit_blocks" | "embedded" | "shifted" | "side_view", ...}
Json configuration_to_json(const Configuration& config);
Configuration configuration_from_json(const Json& j, const std::string& path = "configuration");

Json verdict_to_json(const Verdict& verdict);
Json profile_to_json(const MapProfile& profile);

}  // namespace gshift
