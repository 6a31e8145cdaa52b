#pragma once

// Lazy configurations x in X^Γ, the shift action, the canonical product
// metric and window (cylinder) agreement.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gshift/block_lengths.hpp"
#include "gshift/index_space.hpp"
#include "gshift/member_set.hpp"
#include "gshift/orbit_analysis.hpp"

namespace gshift {

using Symbol = std::uint8_t;

struct Alphabet {
  std::vector<std::string> names{"p", "q"};
  Symbol p = 0;
  Symbol q = 1;

  std::size_t size() const { return names.size(); }
  void validate() const;  // throws InvalidArgument
  Symbol symbol_named(const std::string& name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// A window D is a finite set of distinct indices, kept in the given order.
using Window = std::vector<Index>;

void validate_window(const Domain& domain, const Window& window, bool require_nonempty = true);
Window window_from_ranks(const Domain& domain, const std::vector<Int>& ranks);
Int max_rank(const Domain& domain, const Window& window);

// Positions of indices on the forward orbit of `start`: the smallest k >= 0
// with iterate(map, start, k) == index. Closed form for parity translations;
// otherwise a lazily extended orbit table, cut off by a growth certificate
// when one exists. Safe for concurrent use.
class OrbitIndex {
 public:
  OrbitIndex(SelfMap map, Index start);

  std::optional<Int> position_of(const Index& index) const;
  std::optional<Int> position_of_uncached(const Index& index) const;
  Index at(Int position) const { return iterate(map_, start_, position); }

  const SelfMap& map() const { return map_; }
  const Index& start() const { return start_; }

  // Upper limit on explicit table length for maps without a certificate.
  static constexpr std::size_t kTableLimit = std::size_t{1} << 20;

 private:
  struct Table {
    std::vector<Int> coords;
    std::unordered_map<Int, Int, IntHash> positions;
    bool complete = false;
  };
  std::optional<Int> search(Table& table, Int coord) const;
  // Translates `index` into the coordinate of the reduced map, if it lies on
  // the same side path as the start.
  std::optional<Int> reduce(const Index& index) const;

  SelfMap map_;
  Index start_;
  SidePath prefix_;  // side tags consumed while descending into union maps
  SelfMap reduced_;  // map acting on the start's component
  std::optional<ParityTranslation> translation_;
  std::optional<GrowthCertificate> growth_;
  mutable std::mutex mutex_;
  mutable Table table_;
};

class Configuration;

struct OrbitBlocksSpec {
  SelfMap map;
  std::vector<Index> anchors;  // θ for the plain layout, Λ for the weave
  BlockVariant variant = BlockVariant::Plain;
  MemberSet members;           // block n carries p iff n is a member
  Symbol p = 0;
  Symbol q = 1;
  std::shared_ptr<const Configuration> source;  // weave only
};

class Configuration {
 public:
  enum class Kind { Constant, FinitePatch, PeriodicWord, TransitiveWord, OrbitBlocks, Embedded, Shifted, SideView };

  static Configuration constant(const Domain& domain, Symbol symbol);
  static Configuration finite_patch(const Configuration& base, std::map<Index, Symbol> patch);
  // Index of rank r carries word[(r-1) mod |word|].
  static Configuration periodic_word(const Domain& domain, std::vector<Symbol> word);
  // Integers: coordinates 0, 1, 2, ... spell the concatenation of all words
  // over {0..alphabet_size-1} in length-lex order; negatives carry 0.
  static Configuration transitive_word(std::size_t alphabet_size);
  static Configuration orbit_blocks(OrbitBlocksSpec spec);
  // φ^n(θ) (n >= 1) carries the inner configuration's symbol at n; every
  // other coordinate carries `fill`. `inner` lives on Naturals.
  static Configuration embedded(const SelfMap& map, const Index& theta, const Configuration& inner, Symbol fill);
  // symbol_at(shifted(c, φ, i), ι) = symbol_at(c, φ^i(ι)).
  static Configuration shifted(const Configuration& base, const SelfMap& map, Int power);
  // Restriction of a configuration on a disjoint union to one side.
  static Configuration side_view(const Configuration& base, Side side);

  Kind kind() const;
  const Domain& domain() const;

  Symbol symbol_at(const Index& index) const;
  // Same value, computed without consulting or filling any memo table.
  Symbol symbol_at_uncached(const Index& index) const;

  // Accessors; each throws InvalidArgument for the wrong kind.
  Symbol constant_symbol() const;
  const Configuration& base() const;  // FinitePatch, Shifted, SideView
  const std::map<Index, Symbol>& patch() const;
  const std::vector<Symbol>& word() const;
  std::size_t alphabet_size() const;  // TransitiveWord
  const OrbitBlocksSpec& blocks() const;
  const SelfMap& map() const;  // Embedded, Shifted
  const Index& theta() const;  // Embedded
  const Configuration& inner() const;  // Embedded
  Symbol fill() const;  // Embedded
  Int power() const;  // Shifted
  Side side() const;  // SideView

  std::string describe() const;

 private:
  struct Node;
  explicit Configuration(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  Symbol evaluate_symbol(const Index& index, bool use_memo) const;
  std::shared_ptr<const Node> node_;
};

// Start coordinate of `word` inside the transitive word concatenation.
Int transitive_word_position(std::size_t alphabet_size, const std::vector<Symbol>& word);

struct CylinderPattern {
  Window window;
  std::vector<Symbol> symbols;

  friend bool operator==(const CylinderPattern&, const CylinderPattern&) = default;
};

void validate_pattern(const Domain& domain, const CylinderPattern& pattern);
bool in_cylinder(const Configuration& config, const CylinderPattern& pattern);
bool agree_on_window(const Configuration& x, const Configuration& y, const Window& window);

// Σ_{i<=depth} [x_{β_i} != y_{β_i}] 2^{-i}, exact.
Rational truncated_distance(const Configuration& x, const Configuration& y, Int depth);
// {β_1..β_m}, m >= 1 minimal with 2^{-m} < t. Throws for t <= 0.
Window threshold_to_window(const Domain& domain, const Rational& t);
// 2^{-m} with m the largest rank in the window.
Rational window_to_threshold(const Domain& domain, const Window& window);

}  // namespace gshift
