#include "gshift/index_space.hpp"

#include <algorithm>
#include <unordered_map>

#include "gshift/errors.hpp"

namespace gshift {

// ---------------------------------------------------------------------------
// SidePath / Index

SidePath SidePath::prepended(Side side) const {
  if (depth_ >= kMaxDepth) throw InvalidArgument("side path too deep");
  SidePath out;
  out.bits_ = (bits_ << 1) | static_cast<std::uint64_t>(side);
  out.depth_ = static_cast<std::uint8_t>(depth_ + 1);
  return out;
}

SidePath SidePath::tail() const {
  if (depth_ == 0) throw InvalidArgument("tail of empty side path");
  SidePath out;
  out.bits_ = bits_ >> 1;
  out.depth_ = static_cast<std::uint8_t>(depth_ - 1);
  return out;
}

std::string to_string(const Index& index) {
  std::string out;
  for (int level = 0; level < index.path.depth(); ++level) out.push_back(index.path.at(level) == Side::Left ? 'L' : 'R');
  out += to_string(index.coord);
  return out;
}

std::optional<Index> parse_index(std::string_view text) {
  std::size_t i = 0;
  std::vector<Side> sides;
  while (i < text.size() && (text[i] == 'L' || text[i] == 'R')) {
    sides.push_back(text[i] == 'L' ? Side::Left : Side::Right);
    ++i;
  }
  if (i < text.size() && text[i] == ':') ++i;
  auto coord = parse_int(text.substr(i));
  if (!coord) return std::nullopt;
  Index out = Index::at(*coord);
  for (auto it = sides.rbegin(); it != sides.rend(); ++it) out = Index::tagged(*it, out);
  return out;
}

// ---------------------------------------------------------------------------
// Domain

struct Domain::Node {
  Kind kind;
  std::uint64_t finite_size = 0;
  std::vector<Domain> parts;  // DisjointUnion: left, right
};

Domain Domain::finite_range(std::uint64_t size) {
  if (size == 0) throw InvalidArgument("FiniteRange size must be at least 1");
  return Domain(std::make_shared<const Node>(Node{Kind::FiniteRange, size, {}}));
}

Domain Domain::integers() {
  static const Domain instance(std::make_shared<const Node>(Node{Kind::Integers, 0, {}}));
  return instance;
}

Domain Domain::naturals() {
  static const Domain instance(std::make_shared<const Node>(Node{Kind::Naturals, 0, {}}));
  return instance;
}

Domain Domain::disjoint_union(Domain left, Domain right) {
  return Domain(std::make_shared<const Node>(Node{Kind::DisjointUnion, 0, {std::move(left), std::move(right)}}));
}

Domain::Kind Domain::kind() const noexcept { return node_->kind; }

std::optional<Int> Domain::size() const {
  switch (node_->kind) {
    case Kind::FiniteRange:
      return static_cast<Int>(node_->finite_size);
    case Kind::Integers:
    case Kind::Naturals:
      return std::nullopt;
    case Kind::DisjointUnion: {
      auto l = left().size();
      auto r = right().size();
      if (!l || !r) return std::nullopt;
      return checked_add(*l, *r);
    }
  }
  return std::nullopt;
}

const Domain& Domain::left() const {
  if (node_->kind != Kind::DisjointUnion) throw InvalidArgument("left() of a non-union domain");
  return node_->parts[0];
}

const Domain& Domain::right() const {
  if (node_->kind != Kind::DisjointUnion) throw InvalidArgument("right() of a non-union domain");
  return node_->parts[1];
}

const Domain& Domain::resolve(const SidePath& path) const {
  const Domain* current = this;
  for (int level = 0; level < path.depth(); ++level) {
    if (current->kind() != Kind::DisjointUnion) throw DomainMismatch("side path deeper than the domain");
    current = path.at(level) == Side::Left ? &current->left() : &current->right();
  }
  return *current;
}

bool Domain::contains(const Index& index) const {
  const Domain* current = this;
  for (int level = 0; level < index.path.depth(); ++level) {
    if (current->kind() != Kind::DisjointUnion) return false;
    current = index.path.at(level) == Side::Left ? &current->left() : &current->right();
  }
  switch (current->kind()) {
    case Kind::FiniteRange:
      return index.coord >= 0 && index.coord < static_cast<Int>(current->node_->finite_size);
    case Kind::Integers:
      return true;
    case Kind::Naturals:
      return index.coord >= 1;
    case Kind::DisjointUnion:
      return false;
  }
  return false;
}

void Domain::require(const Index& index) const {
  if (!contains(index)) throw DomainMismatch("index " + to_string(index) + " is outside domain " + describe());
}

std::string Domain::describe() const {
  switch (node_->kind) {
    case Kind::FiniteRange:
      return "finite(" + std::to_string(node_->finite_size) + ")";
    case Kind::Integers:
      return "integers";
    case Kind::Naturals:
      return "naturals";
    case Kind::DisjointUnion:
      return "disjoint_union(" + left().describe() + ", " + right().describe() + ")";
  }
  return "?";
}

bool operator==(const Domain& a, const Domain& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Domain::Kind::FiniteRange:
      return a.node_->finite_size == b.node_->finite_size;
    case Domain::Kind::Integers:
    case Domain::Kind::Naturals:
      return true;
    case Domain::Kind::DisjointUnion:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Enumeration

Index enumerate(const Domain& domain, Int rank) {
  if (rank < 1) throw InvalidArgument("enumeration ranks start at 1");
  if (auto size = domain.size(); size && rank > *size) {
    throw InvalidArgument("rank " + to_string(rank) + " exceeds domain size " + to_string(*size));
  }
  switch (domain.kind()) {
    case Domain::Kind::FiniteRange:
      return Index::at(rank - 1);
    case Domain::Kind::Naturals:
      return Index::at(rank);
    case Domain::Kind::Integers:
      if (rank == 1) return Index::at(0);
      return rank % 2 == 0 ? Index::at(rank / 2) : Index::at(-(rank - 1) / 2);
    case Domain::Kind::DisjointUnion: {
      auto left_size = domain.left().size();
      auto right_size = domain.right().size();
      std::optional<Int> shorter;
      if (left_size && right_size) shorter = std::min(*left_size, *right_size);
      else if (left_size) shorter = left_size;
      else if (right_size) shorter = right_size;

      if (!shorter || rank <= 2 * *shorter) {
        if (rank % 2 == 1) return Index::tagged(Side::Left, enumerate(domain.left(), (rank + 1) / 2));
        return Index::tagged(Side::Right, enumerate(domain.right(), rank / 2));
      }
      const bool left_is_longer = !left_size || (right_size && *left_size > *right_size);
      const Int local = rank - *shorter;
      return left_is_longer ? Index::tagged(Side::Left, enumerate(domain.left(), local))
                            : Index::tagged(Side::Right, enumerate(domain.right(), local));
    }
  }
  throw InvalidArgument("unknown domain kind");
}

Int rank_of(const Domain& domain, const Index& index) {
  domain.require(index);
  switch (domain.kind()) {
    case Domain::Kind::FiniteRange:
      return index.coord + 1;
    case Domain::Kind::Naturals:
      return index.coord;
    case Domain::Kind::Integers:
      if (index.coord == 0) return 1;
      if (index.coord > 0) return checked_mul(index.coord, 2);
      return checked_add(checked_mul(-index.coord, 2), 1);
    case Domain::Kind::DisjointUnion: {
      const Index inner = index.untagged();
      if (index.outer_side() == Side::Left) {
        const Int local = rank_of(domain.left(), inner);
        auto other = domain.right().size();
        if (!other || local <= *other) return checked_sub(checked_mul(local, 2), 1);
        return checked_add(*other, local);
      }
      const Int local = rank_of(domain.right(), inner);
      auto other = domain.left().size();
      if (!other || local <= *other) return checked_mul(local, 2);
      return checked_add(*other, local);
    }
  }
  throw InvalidArgument("unknown domain kind");
}

std::vector<Index> region(const Domain& domain, Int bound) {
  std::vector<Index> out;
  if (bound < 0) return out;
  switch (domain.kind()) {
    case Domain::Kind::FiniteRange: {
      const Int last = std::min(bound, *domain.size() - 1);
      for (Int c = 0; c <= last; ++c) out.push_back(Index::at(c));
      return out;
    }
    case Domain::Kind::Naturals:
      for (Int c = 1; c <= bound; ++c) out.push_back(Index::at(c));
      return out;
    case Domain::Kind::Integers:
      out.push_back(Index::at(0));
      for (Int c = 1; c <= bound; ++c) {
        out.push_back(Index::at(c));
        out.push_back(Index::at(-c));
      }
      return out;
    case Domain::Kind::DisjointUnion: {
      for (const auto& i : region(domain.left(), bound)) out.push_back(Index::tagged(Side::Left, i));
      for (const auto& i : region(domain.right(), bound)) out.push_back(Index::tagged(Side::Right, i));
      std::vector<std::pair<Int, Index>> keyed;
      keyed.reserve(out.size());
      for (const auto& i : out) keyed.emplace_back(rank_of(domain, i), i);
      std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 0; k < keyed.size(); ++k) out[k] = keyed[k].second;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SelfMap

struct SelfMap::Node {
  Rule rule;
  Domain domain;
  std::vector<std::uint64_t> entries;
  std::vector<SelfMap> children;  // Composition: outer, inner; DisjointUnion: left, right
};

SelfMap SelfMap::table(std::vector<std::uint64_t> entries) {
  if (entries.empty()) throw InvalidArgument("table map needs at least one entry");
  for (auto e : entries) {
    if (e >= entries.size()) throw InvalidArgument("table entry " + std::to_string(e) + " outside FiniteRange(" + std::to_string(entries.size()) + ")");
  }
  auto domain = Domain::finite_range(entries.size());
  return SelfMap(std::make_shared<const Node>(Node{Rule::Table, std::move(domain), std::move(entries), {}}));
}

SelfMap SelfMap::identity_table(std::uint64_t size) {
  std::vector<std::uint64_t> entries(size);
  for (std::uint64_t i = 0; i < size; ++i) entries[i] = i;
  return table(std::move(entries));
}

SelfMap SelfMap::leaf(Rule rule, const Domain& domain) {
  return SelfMap(std::make_shared<const Node>(Node{rule, domain, {}, {}}));
}

SelfMap SelfMap::successor(const Domain& domain) {
  if (domain.kind() != Domain::Kind::Integers && domain.kind() != Domain::Kind::Naturals) {
    throw InvalidArgument("successor is defined on integers or naturals only");
  }
  return leaf(Rule::Successor, domain);
}
SelfMap SelfMap::predecessor() { return leaf(Rule::Predecessor, Domain::integers()); }
SelfMap SelfMap::square() { return leaf(Rule::Square, Domain::integers()); }
SelfMap SelfMap::square_plus_one() { return leaf(Rule::SquarePlusOne, Domain::integers()); }
SelfMap SelfMap::parity_up() { return leaf(Rule::ParityUp, Domain::integers()); }
SelfMap SelfMap::parity_down() { return leaf(Rule::ParityDown, Domain::integers()); }


Rule SelfMap::rule() const noexcept { return node_->rule; }
const Domain& SelfMap::domain() const noexcept { return node_->domain; }

const std::vector<std::uint64_t>& SelfMap::entries() const {
  if (node_->rule != Rule::Table) throw InvalidArgument("entries() of a non-table map");
  return node_->entries;
}
const SelfMap& SelfMap::outer() const {
  if (node_->rule != Rule::Composition) throw InvalidArgument("outer() of a non-composition map");
  return node_->children[0];
}
const SelfMap& SelfMap::inner() const {
  if (node_->rule != Rule::Composition) throw InvalidArgument("inner() of a non-composition map");
  return node_->children[1];
}
const SelfMap& SelfMap::left() const {
  if (node_->rule != Rule::DisjointUnion) throw InvalidArgument("left() of a non-union map");
  return node_->children[0];
}
const SelfMap& SelfMap::right() const {
  if (node_->rule != Rule::DisjointUnion) throw InvalidArgument("right() of a non-union map");
  return node_->children[1];
}

std::string SelfMap::describe() const {
  switch (node_->rule) {
    case Rule::Table: {
      std::string out = "table[";
      for (std::size_t i = 0; i < node_->entries.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(node_->entries[i]);
      }
      return out + "]";
    }
    case Rule::Successor:
      return domain().kind() == Domain::Kind::Naturals ? "successor@naturals" : "successor";
    case Rule::Predecessor:
      return "predecessor";
    case Rule::Square:
      return "square";
    case Rule::SquarePlusOne:
      return "square_plus_one";
    case Rule::ParityUp:
      return "parity_up";
    case Rule::ParityDown:
      return "parity_down";
    case Rule::Composition:
      return "compose(" + outer().describe() + ", " + inner().describe() + ")";
    case Rule::DisjointUnion:
      return "disjoint_union(" + left().describe() + ", " + right().describe() + ")";
  }
  return "?";
}

bool operator==(const SelfMap& a, const SelfMap& b) {
  if (a.node_ == b.node_) return true;
  if (a.rule() != b.rule() || !(a.domain() == b.domain())) return false;
  switch (a.rule()) {
    case Rule::Table:
      return a.entries() == b.entries();
    case Rule::Composition:
      return a.outer() == b.outer() && a.inner() == b.inner();
    case Rule::DisjointUnion:
      return a.left() == b.left() && a.right() == b.right();
    default:
      return true;
  }
}

SelfMap compose_maps(const SelfMap& outer, const SelfMap& inner) {
  if (!(outer.domain() == inner.domain())) {
    throw DomainMismatch("cannot compose " + outer.describe() + " on " + outer.domain().describe() + " with " +
                         inner.describe() + " on " + inner.domain().describe());
  }
  return SelfMap(std::make_shared<const SelfMap::Node>(SelfMap::Node{Rule::Composition, outer.domain(), {}, {outer, inner}}));
}

SelfMap disjoint_union_maps(const SelfMap& f, const SelfMap& g) {
  auto domain = Domain::disjoint_union(f.domain(), g.domain());
  return SelfMap(std::make_shared<const SelfMap::Node>(SelfMap::Node{Rule::DisjointUnion, std::move(domain), {}, {f, g}}));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Index evaluate_unchecked(const SelfMap& map, const Index& index) {
  const Int n = index.coord;
  switch (map.rule()) {
    case Rule::Table:
      return Index::at(static_cast<Int>(map.entries()[static_cast<std::size_t>(n)]));
    case Rule::Successor:
      return Index::at(checked_add(n, 1));
    case Rule::Predecessor:
      return Index::at(checked_sub(n, 1));
    case Rule::Square:
      return Index::at(checked_mul(n, n));
    case Rule::SquarePlusOne:
      return Index::at(checked_add(checked_mul(n, n), 1));
    case Rule::ParityUp:
      return Index::at(n % 2 == 0 ? checked_add(n, 1) : checked_sub(n, 1));
    case Rule::ParityDown:
      return Index::at(n % 2 == 0 ? checked_sub(n, 1) : checked_add(n, 1));
    case Rule::Composition:
      return evaluate_unchecked(map.outer(), evaluate_unchecked(map.inner(), index));
    case Rule::DisjointUnion: {
      const Side side = index.outer_side();
      const SelfMap& part = side == Side::Left ? map.left() : map.right();
      return Index::tagged(side, evaluate_unchecked(part, index.untagged()));
    }
  }
  throw InvalidArgument("unknown rule");
}

constexpr Int kDirectIterationLimit = Int{1} << 20;

// Iterates a map whose orbit from `index` is eventually periodic within the
// step limit; used for large exponents on maps without a closed form.
Index iterate_with_cycle_reduction(const SelfMap& map, const Index& index, Int k, Int step_limit) {
  std::unordered_map<Index, Int, IndexHash> first_seen;
  std::vector<Index> orbit;
  Index current = index;
  for (Int step = 0; step <= step_limit; ++step) {
    if (step == k) return current;
    auto [it, inserted] = first_seen.emplace(current, step);
    if (!inserted) {
      const Int mu = it->second;
      const Int period = step - mu;
      const Int offset = (k - mu) % period;
      return orbit[static_cast<std::size_t>(mu + offset)];
    }
    orbit.push_back(current);
    current = evaluate_unchecked(map, current);
  }
  throw BudgetExceeded("iterate: exponent " + to_string(k) + " too large for " + map.describe() +
                       " without a detected cycle");
}

}  // namespace

Index evaluate(const SelfMap& map, const Index& index) {
  map.domain().require(index);
  return evaluate_unchecked(map, index);
}

Index iterate(const SelfMap& map, const Index& index, Int k) {
  if (k < 0) throw InvalidArgument("iterate: negative exponent");
  map.domain().require(index);
  if (k == 0) return index;
  if (map.rule() == Rule::DisjointUnion) {
    const Side side = index.outer_side();
    const SelfMap& part = side == Side::Left ? map.left() : map.right();
    return Index::tagged(side, iterate(part, index.untagged(), k));
  }
  if (auto pt = as_parity_translation(map)) {
    Index out = Index::at(pt->power(index.coord, k));
    map.domain().require(out);
    return out;
  }
  if (map.domain().finite()) {
    return iterate_with_cycle_reduction(map, index, k, *map.domain().size());
  }
  if (k <= kDirectIterationLimit) {
    Index current = index;
    for (Int step = 0; step < k; ++step) {
      Index next = evaluate_unchecked(map, current);
      if (next == current) return current;
      current = next;
    }
    return current;
  }
  return iterate_with_cycle_reduction(map, index, k, kDirectIterationLimit);
}

// ---------------------------------------------------------------------------
// Parity translations

Int ParityTranslation::power(Int n, Int k) const {
  if (k < 0) throw InvalidArgument("negative exponent");
  if (k == 0) return n;
  const Int n1 = apply(n);
  if (k == 1) return n1;
  // From n1 on, the parities of consecutive points follow a fixed 2-cycle,
  // so every two further steps move by the same displacement.
  const Int n2 = apply(n1);
  const Int displacement = checked_sub(apply(n2), n1);
  const Int rest = k - 1;
  const Int base = (rest % 2 == 0) ? n1 : n2;
  return checked_add(base, checked_mul(displacement, rest / 2));
}

std::optional<Int> ParityTranslation::first_hit(Int start, Int target) const {
  if (start == target) return Int{0};
  const Int n1 = apply(start);
  const Int n2 = apply(n1);
  const Int displacement = checked_sub(apply(n2), n1);
  std::optional<Int> best;
  const std::pair<Int, Int> bases[] = {{n1, 1}, {n2, 2}};
  for (auto [base, offset] : bases) {
    if (displacement == 0) {
      if (base == target && (!best || offset < *best)) best = offset;
      continue;
    }
    const Int diff = checked_sub(target, base);
    if (diff % displacement != 0) continue;
    const Int j = diff / displacement;
    if (j < 0) continue;
    const Int candidate = checked_add(offset, checked_mul(j, 2));
    if (!best || candidate < *best) best = candidate;
  }
  return best;
}

std::optional<ParityTranslation> as_parity_translation(const SelfMap& map) {
  switch (map.rule()) {
    case Rule::Successor:
      return ParityTranslation{1, 1};
    case Rule::Predecessor:
      return ParityTranslation{-1, -1};
    case Rule::ParityUp:
      return ParityTranslation{1, -1};
    case Rule::ParityDown:
      return ParityTranslation{-1, 1};
    case Rule::Composition: {
      auto outer = as_parity_translation(map.outer());
      auto inner = as_parity_translation(map.inner());
      if (!outer || !inner) return std::nullopt;
      // An even shift preserves parity, an odd shift flips it.
      const Int even = checked_add(inner->even_shift, inner->even_shift % 2 == 0 ? outer->even_shift : outer->odd_shift);
      const Int odd = checked_add(inner->odd_shift, inner->odd_shift % 2 == 0 ? outer->odd_shift : outer->even_shift);
      return ParityTranslation{even, odd};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace gshift
