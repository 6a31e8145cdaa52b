#pragma once

// Explicit scrambled-family constructions: orbit-block families, densified
// families, transitive weaves, a transitive point of the full shift and the
// embedding of the one-sided shift along a non-quasi-periodic orbit.

#include <optional>
#include <vector>

#include "gshift/block_lengths.hpp"
#include "gshift/config_space.hpp"
#include "gshift/member_set.hpp"
#include "gshift/orbit_analysis.hpp"

namespace gshift {

struct ScrambledFamilySpec {
  SelfMap map;
  std::vector<Index> anchors;  // {θ} for the plain layout; Λ for the weave (empty: computed)
  Alphabet alphabet;
  BlockVariant variant = BlockVariant::Plain;
  AlmostDisjointFamily family;
};

// One plain orbit-block configuration per family member. Requires the
// anchor to be certified non-quasi-periodic.
std::vector<Configuration> dc_family(const ScrambledFamilySpec& spec, Int budget = kDefaultBudget);

// Bijection between ranks 1, 2, ... and cylinder patterns (nonempty window,
// symbol assignment). Patterns are ordered by the largest window rank M,
// then by the window's sorted rank list in lexicographic order, then by the
// assignment read as a base-|alphabet| numeral in window rank order.
class PatternEnumeration {
 public:
  PatternEnumeration(Domain domain, std::size_t alphabet_size);

  CylinderPattern pattern(Int rank) const;
  Int rank_of(const CylinderPattern& pattern) const;
  // Number of patterns whose window ranks are all at most m: (1+a)^m - 1.
  Int count_up_to(Int max_rank) const;

  const Domain& domain() const { return domain_; }
  std::size_t alphabet_size() const { return alphabet_size_; }

 private:
  Int power(Int base, Int exponent) const;

  Domain domain_;
  std::size_t alphabet_size_;
};

// Where two configurations provably differ: a coordinate, or a position on
// an anchor orbit whose coordinate lies beyond the 128-bit budget.
struct Disagreement {
  std::optional<Index> coordinate;
  std::optional<Index> anchor;  // set for orbit addresses
  std::size_t block = 0;
  BigInt orbit_position = 0;
};

struct DenseFamily {
  std::vector<Configuration> members;        // v_1, v_2, ...
  std::vector<std::size_t> base_members;     // index into the input family used for v_n
  std::vector<Disagreement> distinctness;    // v_n vs v_{n-1} (empty for n = 1)
};

// v_n = u patched with pattern ζ(n). Requires has_periodic_point = false.
// A family member is skipped when no disagreement with an earlier v can be
// located.
DenseFamily densify_family(const SelfMap& map, const std::vector<Configuration>& family,
                           const PatternEnumeration& enumeration, std::size_t count, Int budget = kDefaultBudget);

// Locates a disagreement between two configurations. Understands patched
// and plain orbit-block configurations on a shared anchor; otherwise scans
// indices with |coordinate| <= scan_bound.
std::optional<Disagreement> find_disagreement(const Configuration& x, const Configuration& y, Int scan_bound = 64);

// Weave configurations, one per family member. Requires injective = true and
// has_periodic_point = false; Λ comes from chain_decomposition when
// spec.anchors is empty.
std::vector<Configuration> transitive_weave_family(const ScrambledFamilySpec& spec, const Configuration& source,
                                                   Int budget = kDefaultBudget);

// Length-lex concatenation of all words over the alphabet on coordinates
// 0, 1, 2, ...; negative coordinates carry the first symbol. Successor on
// Integers only.
Configuration full_shift_transitive_point(const SelfMap& map, const Alphabet& alphabet);

// Shift exponent at which the transitive word enters the pattern, and the
// advertised bound (word position + largest coordinate magnitude).
Int transitive_entry_shift(std::size_t alphabet_size, const CylinderPattern& pattern);
Int transitive_entry_bound(std::size_t alphabet_size, const CylinderPattern& pattern);

struct WeaveEntry {
  Int radius = 0;          // N: largest chain offset of a window index
  Int source_shift = 0;    // h > N with σ^h(source) in the pattern
  std::size_t block = 0;   // r = h + N + 1
  Int block_end = 0;       // l = S_r + r(r-1)/2
  Int exponent = 0;        // l + h
};

// Constructive entry exponent for a weave configuration and a cylinder:
// every window index is located on an anchor chain, then the source's
// entry shift h is placed inside the source segment after block h + N + 1.
WeaveEntry weave_entry(const Configuration& weave, const CylinderPattern& pattern, Int search_limit = 1 << 20);

// W^x: φ^n(θ) (n >= 1) carries inner's n-th symbol, other coordinates carry
// `fill`. Requires θ certified non-quasi-periodic.
Configuration omega_embedding(const SelfMap& map, const Index& theta, const Configuration& inner, Symbol fill,
                              Int budget = kDefaultBudget);

}  // namespace gshift
