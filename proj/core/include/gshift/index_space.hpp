#pragma once

// Countable index domains, their canonical enumerations, and the closed
// catalog of index self-maps together with composition and disjoint union.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gshift/int128.hpp"

namespace gshift {

enum class Side : std::uint8_t { Left = 0, Right = 1 };

// Sequence of left/right tags from the outermost disjoint union inwards.
class SidePath {
 public:
  static constexpr int kMaxDepth = 63;

  SidePath() = default;

  int depth() const noexcept { return depth_; }
  bool empty() const noexcept { return depth_ == 0; }
  Side at(int level) const noexcept { return static_cast<Side>((bits_ >> level) & 1U); }

  SidePath prepended(Side side) const;  // new outermost tag
  SidePath tail() const;                // drops the outermost tag

  friend bool operator==(const SidePath&, const SidePath&) = default;
  friend auto operator<=>(const SidePath& a, const SidePath& b) {
    if (auto c = a.depth_ <=> b.depth_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

  std::uint64_t bits() const noexcept { return bits_; }

 private:
  std::uint64_t bits_ = 0;
  std::uint8_t depth_ = 0;
};

struct Index {
  SidePath path;
  Int coord = 0;

  static Index at(Int coordinate) { return Index{SidePath{}, coordinate}; }
  static Index tagged(Side side, const Index& inner) { return Index{inner.path.prepended(side), inner.coord}; }

  bool has_side() const noexcept { return !path.empty(); }
  Side outer_side() const noexcept { return path.at(0); }
  Index untagged() const { return Index{path.tail(), coord}; }

  friend bool operator==(const Index&, const Index&) = default;
  friend auto operator<=>(const Index& a, const Index& b) {
    if (auto c = a.path <=> b.path; c != 0) return c;
    return a.coord <=> b.coord;
  }
};

// "L0", "R-3", "LR12": side tags outermost first, then the coordinate.
std::string to_string(const Index& index);
std::optional<Index> parse_index(std::string_view text);

struct IndexHash {
  std::size_t operator()(const Index& index) const noexcept {
    std::size_t h = IntHash{}(index.coord);
    h ^= (index.path.bits() * 0x9E3779B97F4A7C15ULL) + static_cast<std::uint64_t>(index.path.depth()) + (h << 6) + (h >> 2);
    return h;
  }
};

class Domain {
 public:
  enum class Kind { FiniteRange, Integers, Naturals, DisjointUnion };

  static Domain finite_range(std::uint64_t size);
  static Domain integers();
  static Domain naturals();
  static Domain disjoint_union(Domain left, Domain right);

  Kind kind() const noexcept;
  // nullopt for infinite domains.
  std::optional<Int> size() const;
  bool finite() const { return size().has_value(); }
  const Domain& left() const;
  const Domain& right() const;
  // Domain addressed by a side path; throws DomainMismatch if the path is invalid.
  const Domain& resolve(const SidePath& path) const;

  bool contains(const Index& index) const;
  void require(const Index& index) const;  // throws DomainMismatch

  std::string describe() const;

  friend bool operator==(const Domain& a, const Domain& b);

 private:
  struct Node;
  explicit Domain(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Canonical orders: FiniteRange 0..m-1; Naturals 1,2,3,...;
// Integers 0,1,-1,2,-2,...; DisjointUnion interleaves left and right ranks
// while both sides have elements left, then continues with the longer side.
Index enumerate(const Domain& domain, Int rank);
Int rank_of(const Domain& domain, const Index& index);

// All indices of `domain` whose coordinate magnitude is at most `bound`,
// in enumeration order.
std::vector<Index> region(const Domain& domain, Int bound);

enum class Rule {
  Table,
  Successor,
  Predecessor,
  Square,
  SquarePlusOne,
  ParityUp,
  ParityDown,
  Composition,
  DisjointUnion,
};

class SelfMap {
 public:
  // Table over FiniteRange(entries.size()); entry i is the image of i.
  static SelfMap table(std::vector<std::uint64_t> entries);
  static SelfMap identity_table(std::uint64_t size);
  // n -> n+1 on Integers, or on Naturals when requested.
  static SelfMap successor(const Domain& domain = Domain::integers());
  static SelfMap predecessor();
  static SelfMap square();
  static SelfMap square_plus_one();
  // even n -> n+1, odd n -> n-1
  static SelfMap parity_up();
  // odd n -> n+1, even n -> n-1
  static SelfMap parity_down();

  Rule rule() const noexcept;
  const Domain& domain() const noexcept;
  const std::vector<std::uint64_t>& entries() const;  // Table only
  const SelfMap& outer() const;                       // Composition only
  const SelfMap& inner() const;                       // Composition only
  const SelfMap& left() const;                        // DisjointUnion only
  const SelfMap& right() const;                       // DisjointUnion only

  std::string describe() const;

  // Structural equality of rule trees.
  friend bool operator==(const SelfMap& a, const SelfMap& b);

 private:
  friend SelfMap compose_maps(const SelfMap& outer, const SelfMap& inner);
  friend SelfMap disjoint_union_maps(const SelfMap& f, const SelfMap& g);

  struct Node;
  static SelfMap leaf(Rule rule, const Domain& domain);
  explicit SelfMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// compose_maps(outer, inner)(i) = outer(inner(i)).
SelfMap compose_maps(const SelfMap& outer, const SelfMap& inner);
// Acts as f on left-tagged indices and g on right-tagged indices.
SelfMap disjoint_union_maps(const SelfMap& f, const SelfMap& g);

Index evaluate(const SelfMap& map, const Index& index);
// k-fold iterate. Closed forms are used where the rule admits one, so k may
// be astronomically large for translation-type maps.
Index iterate(const SelfMap& map, const Index& index, Int k);

// Maps of the form n -> n + shift(parity of n) on Integers (or Naturals).
// Successor, Predecessor, ParityUp, ParityDown and every composition of
// them belong to this class, which is closed under composition.
struct ParityTranslation {
  Int even_shift = 0;
  Int odd_shift = 0;

  Int shift_for(Int n) const { return (n % 2 == 0) ? even_shift : odd_shift; }
  Int apply(Int n) const { return checked_add(n, shift_for(n)); }
  Int power(Int n, Int k) const;
  // Smallest k >= 0 with power(start, k) == target, if any.
  std::optional<Int> first_hit(Int start, Int target) const;

  friend bool operator==(const ParityTranslation&, const ParityTranslation&) = default;
};

std::optional<ParityTranslation> as_parity_translation(const SelfMap& map);

}  // namespace gshift
