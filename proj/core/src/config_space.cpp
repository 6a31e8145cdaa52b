#include "gshift/config_space.hpp"

#include <algorithm>
#include <set>

#include "gshift/errors.hpp"

namespace gshift {

namespace {
constexpr Int kMaxDyadicExponent = Int{1} << 20;
}

void Alphabet::validate() const {
  if (names.size() < 2) throw InvalidArgument("alphabet needs at least two symbols");
  if (names.size() > 256) throw InvalidArgument("alphabet has more than 256 symbols");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw InvalidArgument("alphabet symbols must be distinct");
  if (p >= names.size() || q >= names.size()) throw InvalidArgument("p and q must be alphabet symbols");
  if (p == q) throw InvalidArgument("p and q must be distinct");
}

Symbol Alphabet::symbol_named(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("'" + name + "' is not an alphabet symbol");
  return static_cast<Symbol>(it - names.begin());
}

void validate_window(const Domain& domain, const Window& window, bool require_nonempty) {
  if (require_nonempty && window.empty()) throw InvalidArgument("window must be nonempty");
  std::set<Index> seen;
  for (const auto& i : window) {
    domain.require(i);
    if (!seen.insert(i).second) throw InvalidArgument("window repeats index " + to_string(i));
  }
}

Window window_from_ranks(const Domain& domain, const std::vector<Int>& ranks) {
  Window out;
  out.reserve(ranks.size());
  for (Int r : ranks) out.push_back(enumerate(domain, r));
  validate_window(domain, out, false);
  return out;
}

Int max_rank(const Domain& domain, const Window& window) {
  Int out = 0;
  for (const auto& i : window) out = std::max(out, rank_of(domain, i));
  return out;
}

// ---------------------------------------------------------------------------
// OrbitIndex

OrbitIndex::OrbitIndex(SelfMap map, Index start) : map_(std::move(map)), start_(start), reduced_(map_) {
  map_.domain().require(start_);
  reduced_ = distribute_unions(map_);
  Index local = start_;
  while (reduced_.rule() == Rule::DisjointUnion) {
    const Side side = local.outer_side();
    prefix_ = SidePath{};
    reduced_ = distribute_unions(side == Side::Left ? reduced_.left() : reduced_.right());
    local = local.untagged();
  }
  // Rebuild the consumed prefix from the start's path.
  const int consumed = start_.path.depth() - local.path.depth();
  for (int level = consumed - 1; level >= 0; --level) prefix_ = prefix_.prepended(start_.path.at(level));
  translation_ = as_parity_translation(reduced_);
  if (!translation_) growth_ = growth_certificate(reduced_, local);
  table_.coords.push_back(local.coord);
  table_.positions.emplace(local.coord, 0);
}

std::optional<Int> OrbitIndex::reduce(const Index& index) const {
  if (index.path.depth() != prefix_.depth()) return std::nullopt;
  for (int level = 0; level < prefix_.depth(); ++level) {
    if (index.path.at(level) != prefix_.at(level)) return std::nullopt;
  }
  return index.coord;
}

std::optional<Int> OrbitIndex::search(Table& table, Int coord) const {
  if (auto it = table.positions.find(coord); it != table.positions.end()) return it->second;
  while (true) {
    if (table.complete) return std::nullopt;
    const Int last_position = static_cast<Int>(table.coords.size()) - 1;
    if (growth_ && last_position >= growth_->from_position && table.coords.back() > coord) return std::nullopt;
    if (!growth_ && table.coords.size() >= kTableLimit) {
      throw BudgetExceeded("orbit table of " + map_.describe() + " exceeded " + std::to_string(kTableLimit) +
                           " positions without a growth certificate");
    }
    Int next;
    try {
      next = evaluate(reduced_, Index::at(table.coords.back())).coord;
    } catch (const BudgetExceeded&) {
      // Past an overflow a certified orbit only holds values above the budget.
      if (!growth_) throw;
      table.complete = true;
      return std::nullopt;
    }
    const Int position = last_position + 1;
    auto [it, inserted] = table.positions.emplace(next, position);
    if (!inserted) {
      table.complete = true;  // the orbit closed a cycle
      return std::nullopt;
    }
    table.coords.push_back(next);
    if (next == coord) return position;
  }
}

std::optional<Int> OrbitIndex::position_of(const Index& index) const {
  auto coord = reduce(index);
  if (!coord) return std::nullopt;
  if (translation_) return translation_->first_hit(table_.coords.front(), *coord);
  std::lock_guard<std::mutex> lock(mutex_);
  return search(table_, *coord);
}

std::optional<Int> OrbitIndex::position_of_uncached(const Index& index) const {
  auto coord = reduce(index);
  if (!coord) return std::nullopt;
  Int start;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    start = table_.coords.front();
  }
  if (translation_) return translation_->first_hit(start, *coord);
  Table fresh;
  fresh.coords.push_back(start);
  fresh.positions.emplace(start, 0);
  return search(fresh, *coord);
}

// ---------------------------------------------------------------------------
// Configuration

struct Configuration::Node {
  Node(Kind k, Domain d) : kind(k), domain(std::move(d)) {}

  Kind kind;
  Domain domain;
  Symbol symbol = 0;
  std::optional<Configuration> base;
  std::map<Index, Symbol> patch;
  std::vector<Symbol> word;
  std::size_t alphabet_size = 0;
  std::optional<OrbitBlocksSpec> blocks;
  std::vector<std::shared_ptr<OrbitIndex>> orbit_indices;  // one per anchor / θ
  std::optional<SelfMap> map;
  Index theta;
  std::optional<Configuration> inner;
  Int power = 0;
  Side side = Side::Left;
};

Configuration Configuration::constant(const Domain& domain, Symbol symbol) {
  auto node = std::make_shared<Node>(Kind::Constant, domain);
  node->symbol = symbol;
  return Configuration(node);
}

Configuration Configuration::finite_patch(const Configuration& base, std::map<Index, Symbol> patch) {
  for (const auto& [i, s] : patch) base.domain().require(i);
  auto node = std::make_shared<Node>(Kind::FinitePatch, base.domain());
  node->base = base;
  node->patch = std::move(patch);
  return Configuration(node);
}

Configuration Configuration::periodic_word(const Domain& domain, std::vector<Symbol> word) {
  if (word.empty()) throw InvalidArgument("periodic word must be nonempty");
  auto node = std::make_shared<Node>(Kind::PeriodicWord, domain);
  node->word = std::move(word);
  return Configuration(node);
}

Configuration Configuration::transitive_word(std::size_t alphabet_size) {
  if (alphabet_size < 2) throw InvalidArgument("transitive word needs an alphabet of size >= 2");
  auto node = std::make_shared<Node>(Kind::TransitiveWord, Domain::integers());
  node->alphabet_size = alphabet_size;
  return Configuration(node);
}

Configuration Configuration::orbit_blocks(OrbitBlocksSpec spec) {
  if (spec.anchors.empty()) throw InvalidArgument("orbit blocks need at least one anchor");
  if (spec.variant == BlockVariant::Plain && spec.anchors.size() != 1) {
    throw InvalidArgument("the plain orbit-block layout has exactly one anchor");
  }
  if (spec.variant == BlockVariant::Weave) {
    if (!spec.source) throw InvalidArgument("the weave layout needs a source configuration");
    if (!(spec.source->domain() == spec.map.domain())) throw DomainMismatch("weave source lives on another domain");
  }
  auto node = std::make_shared<Node>(Kind::OrbitBlocks, spec.map.domain());
  for (const auto& a : spec.anchors) node->orbit_indices.push_back(std::make_shared<OrbitIndex>(spec.map, a));
  node->blocks = std::move(spec);
  return Configuration(node);
}

Configuration Configuration::embedded(const SelfMap& map, const Index& theta, const Configuration& inner, Symbol fill) {
  if (inner.domain().kind() != Domain::Kind::Naturals) throw DomainMismatch("embedded inner configuration must live on naturals");
  auto node = std::make_shared<Node>(Kind::Embedded, map.domain());
  node->map = map;
  node->theta = theta;
  node->inner = inner;
  node->symbol = fill;
  node->orbit_indices.push_back(std::make_shared<OrbitIndex>(map, theta));
  return Configuration(node);
}

Configuration Configuration::shifted(const Configuration& base, const SelfMap& map, Int power) {
  if (power < 0) throw InvalidArgument("shift power must be nonnegative");
  if (!(base.domain() == map.domain())) throw DomainMismatch("shift map and configuration live on different domains");
  if (base.kind() == Kind::Shifted && base.map() == map) {
    return shifted(base.base(), map, checked_add(base.power(), power));
  }
  auto node = std::make_shared<Node>(Kind::Shifted, base.domain());
  node->base = base;
  node->map = map;
  node->power = power;
  return Configuration(node);
}

Configuration Configuration::side_view(const Configuration& base, Side side) {
  if (base.domain().kind() != Domain::Kind::DisjointUnion) throw DomainMismatch("side view of a configuration not on a union");
  auto node = std::make_shared<Node>(Kind::SideView, side == Side::Left ? base.domain().left() : base.domain().right());
  node->base = base;
  node->side = side;
  return Configuration(node);
}

Configuration::Kind Configuration::kind() const { return node_->kind; }
const Domain& Configuration::domain() const { return node_->domain; }

namespace {

[[noreturn]] void wrong_kind(const char* what) { throw InvalidArgument(std::string(what) + " is not defined for this configuration kind"); }

Symbol transitive_symbol(std::size_t alphabet_size, Int coord) {
  if (coord < 0) return 0;
  const Int a = static_cast<Int>(alphabet_size);
  Int offset = coord;
  Int length = 1;
  Int count = a;  // a^length
  while (true) {
    const Int block = checked_mul(length, count);
    if (offset < block) break;
    offset -= block;
    ++length;
    count = checked_mul(count, a);
  }
  const Int word = offset / length;
  const Int digit = offset % length;
  Int divisor = 1;
  for (Int k = 0; k < length - 1 - digit; ++k) divisor *= a;
  return static_cast<Symbol>((word / divisor) % a);
}

}  // namespace

Int transitive_word_position(std::size_t alphabet_size, const std::vector<Symbol>& word) {
  if (word.empty()) throw InvalidArgument("word must be nonempty");
  const Int a = static_cast<Int>(alphabet_size);
  Int position = 0;
  Int count = a;
  for (Int length = 1; length < static_cast<Int>(word.size()); ++length) {
    position = checked_add(position, checked_mul(length, count));
    count = checked_mul(count, a);
  }
  Int value = 0;
  for (Symbol s : word) {
    if (s >= alphabet_size) throw InvalidArgument("word symbol outside the alphabet");
    value = checked_add(checked_mul(value, a), s);
  }
  return checked_add(position, checked_mul(value, static_cast<Int>(word.size())));
}

Symbol Configuration::symbol_at(const Index& index) const {
  node_->domain.require(index);
  return evaluate_symbol(index, true);
}

Symbol Configuration::symbol_at_uncached(const Index& index) const {
  node_->domain.require(index);
  return evaluate_symbol(index, false);
}

Symbol Configuration::evaluate_symbol(const Index& index, bool use_memo) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
      return n.symbol;
    case Kind::FinitePatch: {
      if (auto it = n.patch.find(index); it != n.patch.end()) return it->second;
      return n.base->evaluate_symbol(index, use_memo);
    }
    case Kind::PeriodicWord: {
      const Int r = rank_of(n.domain, index);
      return n.word[static_cast<std::size_t>((r - 1) % static_cast<Int>(n.word.size()))];
    }
    case Kind::TransitiveWord:
      return transitive_symbol(n.alphabet_size, index.coord);
    case Kind::OrbitBlocks: {
      const OrbitBlocksSpec& spec = *n.blocks;
      const BlockLayout& layout = block_layout(spec.variant);
      for (const auto& orbit : n.orbit_indices) {
        auto position = use_memo ? orbit->position_of(index) : orbit->position_of_uncached(index);
        if (!position) continue;
        const auto loc = layout.locate(*position);
        if (loc.in_block) return spec.members.contains(static_cast<Int>(loc.block)) ? spec.p : spec.q;
        const Index source_index = orbit->at(loc.offset);
        return use_memo ? spec.source->symbol_at(source_index) : spec.source->symbol_at_uncached(source_index);
      }
      return spec.q;
    }
    case Kind::Embedded: {
      const auto& orbit = n.orbit_indices.front();
      auto position = use_memo ? orbit->position_of(index) : orbit->position_of_uncached(index);
      if (!position || *position < 1) return n.symbol;
      return use_memo ? n.inner->symbol_at(Index::at(*position)) : n.inner->symbol_at_uncached(Index::at(*position));
    }
    case Kind::Shifted:
      return n.base->evaluate_symbol(iterate(*n.map, index, n.power), use_memo);
    case Kind::SideView:
      return n.base->evaluate_symbol(Index::tagged(n.side, index), use_memo);
  }
  throw InvalidArgument("unknown configuration kind");
}

Symbol Configuration::constant_symbol() const {
  if (node_->kind != Kind::Constant) wrong_kind("constant_symbol");
  return node_->symbol;
}
const Configuration& Configuration::base() const {
  if (!node_->base) wrong_kind("base");
  return *node_->base;
}
const std::map<Index, Symbol>& Configuration::patch() const {
  if (node_->kind != Kind::FinitePatch) wrong_kind("patch");
  return node_->patch;
}
const std::vector<Symbol>& Configuration::word() const {
  if (node_->kind != Kind::PeriodicWord) wrong_kind("word");
  return node_->word;
}
std::size_t Configuration::alphabet_size() const {
  if (node_->kind != Kind::TransitiveWord) wrong_kind("alphabet_size");
  return node_->alphabet_size;
}
const OrbitBlocksSpec& Configuration::blocks() const {
  if (!node_->blocks) wrong_kind("blocks");
  return *node_->blocks;
}
const SelfMap& Configuration::map() const {
  if (!node_->map) wrong_kind("map");
  return *node_->map;
}
const Index& Configuration::theta() const {
  if (node_->kind != Kind::Embedded) wrong_kind("theta");
  return node_->theta;
}
const Configuration& Configuration::inner() const {
  if (!node_->inner) wrong_kind("inner");
  return *node_->inner;
}
Symbol Configuration::fill() const {
  if (node_->kind != Kind::Embedded) wrong_kind("fill");
  return node_->symbol;
}
Int Configuration::power() const {
  if (node_->kind != Kind::Shifted) wrong_kind("power");
  return node_->power;
}
Side Configuration::side() const {
  if (node_->kind != Kind::SideView) wrong_kind("side");
  return node_->side;
}

std::string Configuration::describe() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
      return "constant(" + std::to_string(n.symbol) + ")";
    case Kind::FinitePatch:
      return "patch(" + n.base->describe() + ", " + std::to_string(n.patch.size()) + " coordinates)";
    case Kind::PeriodicWord: {
      std::string w;
      for (Symbol s : n.word) w += std::to_string(s);
      return "periodic(" + w + ")";
    }
    case Kind::TransitiveWord:
      return "transitive_word(" + std::to_string(n.alphabet_size) + ")";
    case Kind::OrbitBlocks: {
      std::string anchors;
      for (const auto& a : n.blocks->anchors) anchors += (anchors.empty() ? "" : ",") + to_string(a);
      return "orbit_blocks(" + n.blocks->map.describe() + ", " + to_string(n.blocks->variant) + ", anchors " + anchors +
             ", " + n.blocks->members.describe() + ")";
    }
    case Kind::Embedded:
      return "embedded(" + n.map->describe() + ", " + to_string(n.theta) + ", " + n.inner->describe() + ")";
    case Kind::Shifted:
      return "shifted(" + n.base->describe() + ", " + n.map->describe() + ", " + to_string(n.power) + ")";
    case Kind::SideView:
      return std::string(n.side == Side::Left ? "left" : "right") + "(" + n.base->describe() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Windows, cylinders, metric

void validate_pattern(const Domain& domain, const CylinderPattern& pattern) {
  validate_window(domain, pattern.window, true);
  if (pattern.symbols.size() != pattern.window.size()) {
    throw InvalidArgument("cylinder pattern needs one symbol per window index");
  }
}

bool in_cylinder(const Configuration& config, const CylinderPattern& pattern) {
  validate_pattern(config.domain(), pattern);
  for (std::size_t k = 0; k < pattern.window.size(); ++k) {
    if (config.symbol_at(pattern.window[k]) != pattern.symbols[k]) return false;
  }
  return true;
}

bool agree_on_window(const Configuration& x, const Configuration& y, const Window& window) {
  if (!(x.domain() == y.domain())) throw DomainMismatch("configurations live on different domains");
  for (const auto& i : window) {
    if (x.symbol_at(i) != y.symbol_at(i)) return false;
  }
  return true;
}

Rational truncated_distance(const Configuration& x, const Configuration& y, Int depth) {
  if (depth < 1) throw InvalidArgument("distance depth must be at least 1");
  if (!(x.domain() == y.domain())) throw DomainMismatch("configurations live on different domains");
  Int last = std::min(depth, kMaxDyadicExponent);
  if (auto size = x.domain().size()) last = std::min(last, *size);
  // Accumulate the numerator over 2^last.
  BigInt numerator = 0;
  for (Int r = 1; r <= last; ++r) {
    numerator <<= 1;
    const Index i = enumerate(x.domain(), r);
    if (x.symbol_at(i) != y.symbol_at(i)) numerator += 1;
  }
  BigInt denominator = 1;
  denominator <<= static_cast<unsigned>(last);
  return Rational(numerator, denominator);
}

Window threshold_to_window(const Domain& domain, const Rational& t) {
  if (t <= 0) throw InvalidArgument("threshold must be positive");
  Int m = 1;
  BigInt power = 2;  // 2^m
  // 2^{-m} < t  <=>  2^m * t > 1
  while (!(Rational(power) * t > 1)) {
    ++m;
    power <<= 1;
  }
  if (auto size = domain.size()) m = std::min(m, *size);
  Window out;
  for (Int r = 1; r <= m; ++r) out.push_back(enumerate(domain, r));
  return out;
}

Rational window_to_threshold(const Domain& domain, const Window& window) {
  validate_window(domain, window, true);
  const Int m = max_rank(domain, window);
  if (m > kMaxDyadicExponent) throw BudgetExceeded("window rank too large for an exact threshold");
  BigInt denominator = 1;
  denominator <<= static_cast<unsigned>(m);
  return Rational(BigInt(1), denominator);
}

}  // namespace gshift
