#include "gshift/constructors.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_set>

#include "gshift/errors.hpp"

namespace gshift {

namespace {

void require_non_quasi_periodic(const SelfMap& map, const Index& theta, Int budget, const char* who) {
  const auto c = classify_point(map, theta, budget);
  if (!c.non_quasi_periodic()) {
    throw PreconditionFailed(std::string(who) + " needs a non-quasi-periodic anchor; classify_point(" +
                             map.describe() + ", " + to_string(theta) + ") = " + to_string(c));
  }
}

// Block starts along an orbit in exact arithmetic, extended on demand.
// Both layouts share s_n = (n-1) * start_n + 1.
class BigBlockStarts {
 public:
  explicit BigBlockStarts(BlockVariant variant) : variant_(variant) {}

  std::pair<BigInt, BigInt> start_and_length(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (starts_.size() < n) {
      const std::size_t k = starts_.size() + 1;
      BigInt start = sum_;
      if (variant_ == BlockVariant::Weave) start += BigInt(k) * BigInt(k - 1) / 2;
      const BigInt s = BigInt(k - 1) * start + 1;
      starts_.push_back(start);
      lengths_.push_back(s);
      sum_ += s;
    }
    return {starts_[n - 1], lengths_[n - 1]};
  }

 private:
  BlockVariant variant_;
  std::mutex mutex_;
  std::vector<BigInt> starts_;
  std::vector<BigInt> lengths_;
  BigInt sum_ = 0;
};

BigBlockStarts& big_starts(BlockVariant variant) {
  static BigBlockStarts plain(BlockVariant::Plain);
  static BigBlockStarts weave(BlockVariant::Weave);
  return variant == BlockVariant::Plain ? plain : weave;
}

constexpr std::size_t kDisagreementBlockLimit = 1 << 14;

// Peels FinitePatch layers, merging patches (outer layers win).
Configuration unpatch(const Configuration& c, std::map<Index, Symbol>& merged) {
  Configuration current = c;
  while (current.kind() == Configuration::Kind::FinitePatch) {
    for (const auto& [i, s] : current.patch()) merged.emplace(i, s);
    current = current.base();
  }
  return current;
}

bool same_layout(const OrbitBlocksSpec& a, const OrbitBlocksSpec& b) {
  return a.map == b.map && a.anchors == b.anchors && a.variant == b.variant && a.p == b.p && a.q == b.q &&
         a.source == b.source;
}

std::optional<Disagreement> orbit_block_disagreement(const Configuration& x, const Configuration& y,
                                                     const std::map<Index, Symbol>& px,
                                                     const std::map<Index, Symbol>& py, const OrbitBlocksSpec& bx,
                                                     const OrbitBlocksSpec& by) {
  if (bx.p == bx.q) return std::nullopt;
  const Index& anchor = bx.anchors.front();
  const OrbitIndex orbit(bx.map, anchor);
  // Orbit positions already overwritten by either patch.
  std::set<BigInt> patched;
  for (const auto* patch : {&px, &py}) {
    for (const auto& [i, s] : *patch) {
      if (auto k = orbit.position_of(i)) patched.insert(to_big(*k));
    }
  }
  for (std::size_t r = 1; r <= kDisagreementBlockLimit; ++r) {
    const Int rr = static_cast<Int>(r);
    if (bx.members.contains(rr) == by.members.contains(rr)) continue;
    auto [start, length] = big_starts(bx.variant).start_and_length(r);
    BigInt position = start;
    while (patched.count(position) != 0 && position < start + length) position += 1;
    if (position >= start + length) continue;
    if (position <= to_big(kIntMax)) {
      try {
        const Index coord = iterate(bx.map, anchor, to_int(position));
        if (x.symbol_at(coord) != y.symbol_at(coord)) return Disagreement{coord, std::nullopt, r, position};
        continue;
      } catch (const BudgetExceeded&) {
      }
    }
    return Disagreement{std::nullopt, anchor, r, position};
  }
  return std::nullopt;
}

}  // namespace

std::vector<Configuration> dc_family(const ScrambledFamilySpec& spec, Int budget) {
  if (spec.variant != BlockVariant::Plain) throw InvalidArgument("dc_family builds the plain layout");
  if (spec.anchors.size() != 1) throw InvalidArgument("dc_family needs exactly one anchor θ");
  spec.alphabet.validate();
  require_non_quasi_periodic(spec.map, spec.anchors.front(), budget, "dc_family");
  std::vector<Configuration> out;
  for (const auto& member : spec.family.members) {
    out.push_back(Configuration::orbit_blocks(
        OrbitBlocksSpec{spec.map, spec.anchors, BlockVariant::Plain, member, spec.alphabet.p, spec.alphabet.q, nullptr}));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pattern enumeration

PatternEnumeration::PatternEnumeration(Domain domain, std::size_t alphabet_size)
    : domain_(std::move(domain)), alphabet_size_(alphabet_size) {
  if (alphabet_size < 2) throw InvalidArgument("pattern enumeration needs an alphabet of size >= 2");
}

Int PatternEnumeration::power(Int base, Int exponent) const {
  Int out = 1;
  for (Int k = 0; k < exponent; ++k) out = checked_mul(out, base);
  return out;
}

Int PatternEnumeration::count_up_to(Int max_rank) const {
  if (max_rank < 0) throw InvalidArgument("negative rank bound");
  return power(static_cast<Int>(alphabet_size_) + 1, max_rank) - 1;
}

CylinderPattern PatternEnumeration::pattern(Int rank) const {
  if (rank < 1) throw InvalidArgument("pattern ranks start at 1");
  const Int a = static_cast<Int>(alphabet_size_);
  Int m = 1;
  while (count_up_to(m) < rank) ++m;
  Int offset = rank - count_up_to(m - 1) - 1;

  std::vector<Int> ranks;
  for (Int e = 1; e < m; ++e) {
    const Int chosen = static_cast<Int>(ranks.size());
    // Patterns whose window continues with e: assignments of the chosen
    // ranks and e, any subset of (e, m) with assignments, and rank m.
    const Int block = checked_mul(checked_mul(power(a, chosen + 1), power(a + 1, m - 1 - e)), a);
    if (offset < block) {
      ranks.push_back(e);
    } else {
      offset -= block;
    }
  }
  ranks.push_back(m);

  CylinderPattern out;
  const Int length = static_cast<Int>(ranks.size());
  out.symbols.assign(ranks.size(), 0);
  Int value = offset;
  for (Int k = length - 1; k >= 0; --k) {
    out.symbols[static_cast<std::size_t>(k)] = static_cast<Symbol>(value % a);
    value /= a;
  }
  for (Int r : ranks) out.window.push_back(enumerate(domain_, r));
  return out;
}

Int PatternEnumeration::rank_of(const CylinderPattern& pattern) const {
  validate_pattern(domain_, pattern);
  const Int a = static_cast<Int>(alphabet_size_);
  std::vector<std::pair<Int, Symbol>> entries;
  for (std::size_t k = 0; k < pattern.window.size(); ++k) {
    if (pattern.symbols[k] >= alphabet_size_) throw InvalidArgument("pattern symbol outside the alphabet");
    entries.emplace_back(gshift::rank_of(domain_, pattern.window[k]), pattern.symbols[k]);
  }
  std::sort(entries.begin(), entries.end());
  const Int m = entries.back().first;

  Int offset = 0;
  Int previous = 0;
  Int chosen = 0;
  for (std::size_t k = 0; k + 1 < entries.size(); ++k) {
    const Int e = entries[k].first;
    for (Int f = previous + 1; f < e; ++f) {
      offset = checked_add(offset, checked_mul(checked_mul(power(a, chosen + 1), power(a + 1, m - 1 - f)), a));
    }
    ++chosen;
    previous = e;
  }
  for (Int f = previous + 1; f < m; ++f) {
    offset = checked_add(offset, checked_mul(checked_mul(power(a, chosen + 1), power(a + 1, m - 1 - f)), a));
  }
  Int assignment = 0;
  for (const auto& [r, s] : entries) assignment = checked_add(checked_mul(assignment, a), s);
  return checked_add(checked_add(count_up_to(m - 1), 1), checked_add(offset, assignment));
}

// ---------------------------------------------------------------------------
// Densification

std::optional<Disagreement> find_disagreement(const Configuration& x, const Configuration& y, Int scan_bound) {
  if (!(x.domain() == y.domain())) throw DomainMismatch("configurations live on different domains");
  std::map<Index, Symbol> px;
  std::map<Index, Symbol> py;
  const Configuration bx = unpatch(x, px);
  const Configuration by = unpatch(y, py);
  if (bx.kind() == Configuration::Kind::OrbitBlocks && by.kind() == Configuration::Kind::OrbitBlocks &&
      same_layout(bx.blocks(), by.blocks())) {
    if (auto d = orbit_block_disagreement(x, y, px, py, bx.blocks(), by.blocks())) return d;
  }
  for (const auto& i : region(x.domain(), scan_bound)) {
    if (x.symbol_at(i) != y.symbol_at(i)) return Disagreement{i, std::nullopt, 0, 0};
  }
  return std::nullopt;
}

DenseFamily densify_family(const SelfMap& map, const std::vector<Configuration>& family,
                           const PatternEnumeration& enumeration, std::size_t count, Int budget) {
  const MapProfile profile = map_profile(map, budget);
  if (!profile.has_periodic_point.proven_false()) {
    throw PreconditionFailed("densify_family needs has_periodic_point = false; " + map.describe() + " gives " +
                             to_string(profile.has_periodic_point.value));
  }
  if (!(enumeration.domain() == map.domain())) throw DomainMismatch("pattern enumeration lives on another domain");

  DenseFamily out;
  std::size_t next_base = 0;
  for (std::size_t n = 1; n <= count; ++n) {
    const CylinderPattern pattern = enumeration.pattern(static_cast<Int>(n));
    std::map<Index, Symbol> patch;
    for (std::size_t k = 0; k < pattern.window.size(); ++k) patch.emplace(pattern.window[k], pattern.symbols[k]);
    while (true) {
      if (next_base >= family.size()) {
        throw PreconditionFailed("densify_family ran out of family members at v_" + std::to_string(n));
      }
      const std::size_t base_index = next_base++;
      const Configuration v = Configuration::finite_patch(family[base_index], patch);
      bool distinct = true;
      std::optional<Disagreement> against_previous;
      for (std::size_t m = 0; m < out.members.size() && distinct; ++m) {
        auto d = find_disagreement(v, out.members[m]);
        if (!d) distinct = false;
        if (m + 1 == out.members.size()) against_previous = d;
      }
      if (!distinct) continue;
      out.members.push_back(v);
      out.base_members.push_back(base_index);
      out.distinctness.push_back(against_previous.value_or(Disagreement{}));
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transitivity

std::vector<Configuration> transitive_weave_family(const ScrambledFamilySpec& spec, const Configuration& source,
                                                   Int budget) {
  spec.alphabet.validate();
  const MapProfile profile = map_profile(spec.map, budget);
  if (!profile.injective.proven_true()) {
    throw PreconditionFailed("transitive_weave_family needs injective = true; " + spec.map.describe() + " gives " +
                             to_string(profile.injective.value));
  }
  if (!profile.has_periodic_point.proven_false()) {
    throw PreconditionFailed("transitive_weave_family needs has_periodic_point = false; " + spec.map.describe() +
                             " gives " + to_string(profile.has_periodic_point.value));
  }
  if (!(source.domain() == spec.map.domain())) throw DomainMismatch("source lives on another domain");
  std::vector<Index> anchors = spec.anchors;
  if (anchors.empty()) {
    constexpr Int kChainRegion = 16;
    anchors = chain_decomposition(spec.map, kChainRegion, budget).representatives;
  }
  auto shared_source = std::make_shared<const Configuration>(source);
  std::vector<Configuration> out;
  for (const auto& member : spec.family.members) {
    out.push_back(Configuration::orbit_blocks(OrbitBlocksSpec{spec.map, anchors, BlockVariant::Weave, member,
                                                              spec.alphabet.p, spec.alphabet.q, shared_source}));
  }
  return out;
}

Configuration full_shift_transitive_point(const SelfMap& map, const Alphabet& alphabet) {
  alphabet.validate();
  if (map.rule() != Rule::Successor || map.domain().kind() != Domain::Kind::Integers) {
    throw PreconditionFailed("full_shift_transitive_point is defined for successor on the integers; got " +
                             map.describe());
  }
  return Configuration::transitive_word(alphabet.size());
}

namespace {

struct WordPlacement {
  Int position = 0;
  Int lowest = 0;  // coordinate carried by the word's first symbol
  Int magnitude = 0;
};

WordPlacement place_word(std::size_t alphabet_size, const CylinderPattern& pattern) {
  validate_pattern(Domain::integers(), pattern);
  Int low = 0;
  Int high = kIntMin;
  Int magnitude = 0;
  for (const auto& i : pattern.window) {
    low = std::min(low, i.coord);
    high = std::max(high, i.coord);
    magnitude = std::max(magnitude, i.coord < 0 ? -i.coord : i.coord);
  }
  high = std::max(high, low);
  constexpr Int kMaxWordLength = 100;
  if (high - low + 1 > kMaxWordLength) throw BudgetExceeded("pattern span too wide for the transitive word");
  std::vector<Symbol> word(static_cast<std::size_t>(high - low + 1), 0);
  for (std::size_t k = 0; k < pattern.window.size(); ++k) {
    word[static_cast<std::size_t>(pattern.window[k].coord - low)] = pattern.symbols[k];
  }
  return WordPlacement{transitive_word_position(alphabet_size, word), low, magnitude};
}

}  // namespace

Int transitive_entry_shift(std::size_t alphabet_size, const CylinderPattern& pattern) {
  const WordPlacement w = place_word(alphabet_size, pattern);
  return checked_sub(w.position, w.lowest);
}

Int transitive_entry_bound(std::size_t alphabet_size, const CylinderPattern& pattern) {
  const WordPlacement w = place_word(alphabet_size, pattern);
  return checked_add(w.position, w.magnitude);
}

WeaveEntry weave_entry(const Configuration& weave, const CylinderPattern& pattern, Int search_limit) {
  if (weave.kind() != Configuration::Kind::OrbitBlocks || weave.blocks().variant != BlockVariant::Weave) {
    throw InvalidArgument("weave_entry needs a weave configuration");
  }
  const OrbitBlocksSpec& spec = weave.blocks();
  validate_pattern(weave.domain(), pattern);

  std::vector<std::unique_ptr<OrbitIndex>> chains;
  for (const auto& a : spec.anchors) chains.push_back(std::make_unique<OrbitIndex>(spec.map, a));
  const std::set<Index> anchor_set(spec.anchors.begin(), spec.anchors.end());

  WeaveEntry out;
  for (const auto& i : pattern.window) {
    std::optional<Int> offset;
    for (const auto& chain : chains) {
      if (auto k = chain->position_of(i)) {
        offset = *k;
        break;
      }
    }
    if (!offset) {
      Index x = i;
      for (Int l = 1; l <= search_limit && !offset; ++l) {
        x = evaluate(spec.map, x);
        if (anchor_set.count(x) != 0) offset = -l;
      }
    }
    if (!offset) throw BudgetExceeded("window index " + to_string(i) + " not located on any anchor chain");
    out.radius = std::max(out.radius, *offset < 0 ? -*offset : *offset);
  }

  const Configuration& source = *spec.source;
  std::optional<Int> h;
  for (Int shift = out.radius + 1; shift <= out.radius + search_limit && !h; ++shift) {
    bool match = true;
    for (std::size_t k = 0; k < pattern.window.size() && match; ++k) {
      match = source.symbol_at(iterate(spec.map, pattern.window[k], shift)) == pattern.symbols[k];
    }
    if (match) h = shift;
  }
  if (!h) throw BudgetExceeded("source does not enter the pattern within the search limit");
  out.source_shift = *h;
  out.block = static_cast<std::size_t>(*h + out.radius + 1);
  out.block_end = to_int(block_lengths(out.block, BlockVariant::Weave).boundary(out.block));
  out.exponent = checked_add(out.block_end, out.source_shift);
  return out;
}

Configuration omega_embedding(const SelfMap& map, const Index& theta, const Configuration& inner, Symbol fill,
                              Int budget) {
  require_non_quasi_periodic(map, theta, budget, "omega_embedding");
  return Configuration::embedded(map, theta, inner, fill);
}

}  // namespace gshift
