#include "gshift/orbit_analysis.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "gshift/errors.hpp"

namespace gshift {

Truth truth_not(Truth a) {
  if (a == Truth::True) return Truth::False;
  if (a == Truth::False) return Truth::True;
  return Truth::Unknown;
}

Truth truth_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}

Truth truth_or(Truth a, Truth b) {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::False && b == Truth::False) return Truth::False;
  return Truth::Unknown;
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::True:
      return "true";
    case Truth::False:
      return "false";
    case Truth::Unknown:
      return "unknown";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Exhaustive:
      return "exhaustive";
    case Provenance::AnalyticMetadata:
      return "analytic-metadata";
    case Provenance::BoundedSearch:
      return "bounded-search";
  }
  return "?";
}

Verdict Verdict::proven(bool value, Provenance provenance, std::string certificate) {
  Verdict v;
  v.value = value ? Truth::True : Truth::False;
  v.provenance = provenance;
  v.certificate = std::move(certificate);
  return v;
}

Verdict Verdict::unknown_after(Int budget, std::string certificate) {
  Verdict v;
  v.value = Truth::Unknown;
  v.provenance = Provenance::BoundedSearch;
  v.exhausted_budget = budget;
  v.certificate = std::move(certificate);
  return v;
}

std::string to_string(const PointClassification& c) {
  switch (c.kind) {
    case PointClassification::Kind::Periodic:
      return "periodic(" + to_string(c.period) + ")";
    case PointClassification::Kind::QuasiPeriodic:
      return "quasi-periodic(" + to_string(c.preperiod) + "," + to_string(c.period) + ")";
    case PointClassification::Kind::NonQuasiPeriodic:
      return "non-quasi-periodic";
    case PointClassification::Kind::Unknown:
      return "unknown";
  }
  return "?";
}

SelfMap distribute_unions(const SelfMap& map) {
  if (map.rule() != Rule::Composition) return map;
  SelfMap outer = distribute_unions(map.outer());
  SelfMap inner = distribute_unions(map.inner());
  if (outer.rule() == Rule::DisjointUnion && inner.rule() == Rule::DisjointUnion) {
    return disjoint_union_maps(distribute_unions(compose_maps(outer.left(), inner.left())),
                               distribute_unions(compose_maps(outer.right(), inner.right())));
  }
  return map;
}

namespace {

Index retag(Side side, const Index& index) { return Index::tagged(side, index); }

std::optional<std::pair<Index, Index>> retag_pair(Side side, const std::optional<std::pair<Index, Index>>& pair) {
  if (!pair) return std::nullopt;
  return std::make_pair(retag(side, pair->first), retag(side, pair->second));
}

Verdict retag_verdict(Side side, Verdict v) {
  if (v.witness) v.witness = retag(side, *v.witness);
  v.witness_pair = retag_pair(side, v.witness_pair);
  return v;
}

PointClassification make_periodic(Int period, Provenance provenance, std::string certificate) {
  return PointClassification{PointClassification::Kind::Periodic, period, 0, provenance, std::move(certificate)};
}

PointClassification make_quasi(Int preperiod, Int period, Provenance provenance, std::string certificate) {
  return PointClassification{PointClassification::Kind::QuasiPeriodic, period, preperiod, provenance,
                             std::move(certificate)};
}

PointClassification make_nqp(std::string certificate) {
  return PointClassification{PointClassification::Kind::NonQuasiPeriodic, 0, 0, Provenance::AnalyticMetadata,
                             std::move(certificate)};
}

// Brent's cycle detection within `budget` evaluations.
std::optional<std::pair<Int, Int>> brent(const SelfMap& map, const Index& start, Int budget) {
  Int steps = 0;
  auto step = [&](const Index& i) {
    if (++steps > budget) throw BudgetExceeded("cycle search budget exhausted");
    return evaluate(map, i);
  };
  try {
    Int power = 1;
    Int lambda = 1;
    Index tortoise = start;
    Index hare = step(start);
    while (!(tortoise == hare)) {
      if (power == lambda) {
        tortoise = hare;
        power *= 2;
        lambda = 0;
      }
      hare = step(hare);
      ++lambda;
    }
    tortoise = start;
    hare = start;
    for (Int i = 0; i < lambda; ++i) hare = evaluate(map, hare);
    Int mu = 0;
    while (!(tortoise == hare)) {
      tortoise = evaluate(map, tortoise);
      hare = evaluate(map, hare);
      ++mu;
    }
    return std::make_pair(mu, lambda);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

PointClassification classify_parity_translation(const ParityTranslation& pt, Int n) {
  const std::string cert = "parity translation (" + to_string(pt.even_shift) + "," + to_string(pt.odd_shift) + ")";
  if (pt.shift_for(n) == 0) return make_periodic(1, Provenance::AnalyticMetadata, cert + ": fixed point");
  const Int n1 = pt.apply(n);
  const Int n2 = pt.apply(n1);
  const Int displacement = pt.apply(n2) - n1;
  if (displacement != 0) {
    return make_nqp(cert + ": two-step displacement " + to_string(displacement) + " is nonzero");
  }
  if (n2 == n) return make_periodic(2, Provenance::AnalyticMetadata, cert + ": two-cycle");
  if (n2 == n1) return make_quasi(1, 1, Provenance::AnalyticMetadata, cert + ": falls onto a fixed point");
  return make_quasi(1, 2, Provenance::AnalyticMetadata, cert + ": falls onto a two-cycle");
}

PointClassification classify_bounded(const SelfMap& map, const Index& index, Int budget, Provenance provenance) {
  auto cycle = brent(map, index, budget);
  if (!cycle) {
    PointClassification out;
    out.kind = PointClassification::Kind::Unknown;
    out.provenance = Provenance::BoundedSearch;
    out.certificate = "no cycle within " + to_string(budget) + " steps";
    return out;
  }
  auto [mu, lambda] = *cycle;
  const std::string cert = "cycle detected by iteration";
  if (mu == 0) return make_periodic(lambda, provenance, cert);
  return make_quasi(mu, lambda, provenance, cert);
}

}  // namespace

PointClassification classify_point(const SelfMap& input, const Index& index, Int budget) {
  input.domain().require(index);
  const SelfMap map = distribute_unions(input);
  if (map.rule() == Rule::DisjointUnion) {
    const Side side = index.outer_side();
    return classify_point(side == Side::Left ? map.left() : map.right(), index.untagged(), budget);
  }
  if (map.domain().finite()) {
    const Int size = *map.domain().size();
    return classify_bounded(map, index, checked_mul(size, 4) + 4, Provenance::Exhaustive);
  }
  if (auto pt = as_parity_translation(map)) return classify_parity_translation(*pt, index.coord);
  const Int n = index.coord;
  switch (map.rule()) {
    case Rule::Square:
      if (n == 0 || n == 1) return make_periodic(1, Provenance::AnalyticMetadata, "square: fixed points are 0 and 1");
      if (n == -1) return make_quasi(1, 1, Provenance::AnalyticMetadata, "square: -1 maps to the fixed point 1");
      return make_nqp("square: |n| >= 2 gives n^2 > |n| along the orbit");
    case Rule::SquarePlusOne:
      return make_nqp("square_plus_one: n^2 + 1 > n for every integer n");
    default:
      return classify_bounded(map, index, budget, Provenance::BoundedSearch);
  }
}

namespace {

Index first_of_parity(const Domain& domain, bool even) {
  if (domain.kind() == Domain::Kind::Naturals) return Index::at(even ? 2 : 1);
  return Index::at(even ? 0 : 1);
}

MapProfile profile_parity_translation(const ParityTranslation& pt, const Domain& domain) {
  const Int ce = pt.even_shift;
  const Int co = pt.odd_shift;
  const std::string name = "parity translation (" + to_string(ce) + "," + to_string(co) + ")";
  const Provenance a = Provenance::AnalyticMetadata;
  MapProfile p;
  const bool ce_even = ce % 2 == 0;
  const bool co_even = co % 2 == 0;
  if (ce_even && co_even) {
    p.injective = Verdict::proven(true, a, name + ": preserves parity and translates each class");
    const bool fixed_even = ce == 0;
    const bool fixed_odd = co == 0;
    p.has_periodic_point = Verdict::proven(fixed_even || fixed_odd, a, name + ": periodic iff a class shift is zero");
    if (fixed_even || fixed_odd) p.has_periodic_point.witness = first_of_parity(domain, fixed_even);
    p.has_non_quasi_periodic_point =
        Verdict::proven(!fixed_even || !fixed_odd, a, name + ": nonzero class shift gives an infinite orbit");
    if (!fixed_even || !fixed_odd) p.has_non_quasi_periodic_point.witness = first_of_parity(domain, !fixed_even);
    return p;
  }
  if (!ce_even && !co_even) {
    const Int s = checked_add(ce, co);
    p.injective = Verdict::proven(true, a, name + ": swaps parity classes bijectively");
    p.has_periodic_point = Verdict::proven(s == 0, a, name + ": two-step displacement " + to_string(s));
    p.has_non_quasi_periodic_point = Verdict::proven(s != 0, a, name + ": two-step displacement " + to_string(s));
    const Index w = first_of_parity(domain, domain.kind() != Domain::Kind::Naturals);
    if (s == 0) p.has_periodic_point.witness = w;
    else p.has_non_quasi_periodic_point.witness = w;
    return p;
  }
  // Exactly one class shift is even: both classes land in the class it preserves.
  const bool evens_preserved = ce_even;
  const Int preserved_shift = evens_preserved ? ce : co;
  p.injective = Verdict::proven(false, a, name + ": both parity classes map into one class");
  if (evens_preserved) {
    p.injective.witness_pair = std::make_pair(Index::at(0), Index::at(checked_sub(ce, co)));
  } else {
    p.injective.witness_pair = std::make_pair(Index::at(1), Index::at(checked_sub(checked_add(1, co), ce)));
  }
  if (p.injective.witness_pair->second < p.injective.witness_pair->first) {
    std::swap(p.injective.witness_pair->first, p.injective.witness_pair->second);
  }
  p.has_periodic_point =
      Verdict::proven(preserved_shift == 0, a, name + ": periodic iff the preserved class shift is zero");
  p.has_non_quasi_periodic_point =
      Verdict::proven(preserved_shift != 0, a, name + ": nonzero preserved class shift gives infinite orbits");
  const Index w = first_of_parity(domain, evens_preserved);
  if (preserved_shift == 0) p.has_periodic_point.witness = w;
  else p.has_non_quasi_periodic_point.witness = w;
  return p;
}

MapProfile profile_finite(const SelfMap& map) {
  const Int size = *map.domain().size();
  std::vector<Index> points;
  points.reserve(static_cast<std::size_t>(size));
  for (Int r = 1; r <= size; ++r) points.push_back(enumerate(map.domain(), r));

  MapProfile p;
  const Provenance e = Provenance::Exhaustive;
  p.injective = Verdict::proven(true, e, "no image collision among all points");
  std::unordered_map<Index, Index, IndexHash> first_preimage;
  for (const auto& i : points) {
    auto [it, inserted] = first_preimage.emplace(evaluate(map, i), i);
    if (!inserted) {
      p.injective = Verdict::proven(false, e, "image collision");
      auto a = it->second;
      auto b = i;
      if (b < a) std::swap(a, b);
      p.injective.witness_pair = std::make_pair(a, b);
      break;
    }
  }
  // Every orbit in a finite set is eventually periodic; walk from the first point.
  Index x = points.front();
  for (Int k = 0; k < size; ++k) x = evaluate(map, x);
  p.has_periodic_point = Verdict::proven(true, e, "finite domain: every orbit reaches a cycle");
  p.has_periodic_point.witness = x;
  p.has_non_quasi_periodic_point = Verdict::proven(false, e, "finite domain: every orbit is finite");
  return p;
}

MapProfile profile_bounded(const SelfMap& map, Int budget) {
  constexpr Int kRegion = 32;
  MapProfile p;
  if (auto pair = injectivity_witness(map, kRegion)) {
    p.injective = Verdict::proven(false, Provenance::BoundedSearch, "image collision found by search");
    p.injective.witness_pair = pair;
  } else {
    p.injective = Verdict::unknown_after(budget, "no collision with |coordinate| <= " + to_string(kRegion));
  }
  p.has_periodic_point = Verdict::unknown_after(budget, "no periodic point found");
  std::optional<Index> nqp;
  for (const auto& i : region(map.domain(), kRegion)) {
    auto c = classify_point(map, i, budget);
    if (c.periodic()) {
      p.has_periodic_point = Verdict::proven(true, Provenance::BoundedSearch, "cycle found by iteration");
      p.has_periodic_point.witness = i;
      break;
    }
    if (c.non_quasi_periodic() && !nqp) nqp = i;
  }
  if (nqp) {
    p.has_non_quasi_periodic_point = Verdict::proven(true, Provenance::BoundedSearch, "certified point");
    p.has_non_quasi_periodic_point.witness = nqp;
  } else {
    p.has_non_quasi_periodic_point = Verdict::unknown_after(budget, "no certified infinite orbit");
  }
  return p;
}

}  // namespace

MapProfile map_profile(const SelfMap& input, Int budget) {
  const SelfMap map = distribute_unions(input);
  if (map.rule() == Rule::DisjointUnion) {
    const MapProfile l = map_profile(map.left(), budget);
    const MapProfile r = map_profile(map.right(), budget);
    auto combine = [](const Verdict& lv, const Verdict& rv, bool conjunction) {
      const Truth value = conjunction ? truth_and(lv.value, rv.value) : truth_or(lv.value, rv.value);
      // Prefer the side that decides the combined value.
      const Truth decisive = conjunction ? Truth::False : Truth::True;
      Verdict out;
      if (value == Truth::Unknown) {
        out = lv.unknown() ? retag_verdict(Side::Left, lv) : retag_verdict(Side::Right, rv);
      } else if (lv.value == decisive) {
        out = retag_verdict(Side::Left, lv);
      } else if (rv.value == decisive) {
        out = retag_verdict(Side::Right, rv);
      } else {
        out = retag_verdict(Side::Left, lv);
        out.certificate = "left: " + lv.certificate + "; right: " + rv.certificate;
        if (lv.provenance != rv.provenance) out.provenance = Provenance::BoundedSearch;
      }
      out.value = value;
      return out;
    };
    return MapProfile{combine(l.injective, r.injective, true), combine(l.has_periodic_point, r.has_periodic_point, false),
                      combine(l.has_non_quasi_periodic_point, r.has_non_quasi_periodic_point, false)};
  }
  if (map.domain().finite()) return profile_finite(map);
  if (auto pt = as_parity_translation(map)) return profile_parity_translation(*pt, map.domain());

  const Provenance a = Provenance::AnalyticMetadata;
  MapProfile p;
  switch (map.rule()) {
    case Rule::Square:
      p.injective = Verdict::proven(false, a, "square: (-1)^2 = 1^2");
      p.injective.witness_pair = std::make_pair(Index::at(-1), Index::at(1));
      p.has_periodic_point = Verdict::proven(true, a, "square: 0 is fixed");
      p.has_periodic_point.witness = Index::at(0);
      p.has_non_quasi_periodic_point = Verdict::proven(true, a, "square: |n| >= 2 grows strictly");
      p.has_non_quasi_periodic_point.witness = Index::at(2);
      return p;
    case Rule::SquarePlusOne:
      p.injective = Verdict::proven(false, a, "square_plus_one: (-1)^2 + 1 = 1^2 + 1");
      p.injective.witness_pair = std::make_pair(Index::at(-1), Index::at(1));
      p.has_periodic_point = Verdict::proven(false, a, "square_plus_one: n^2 + 1 > n for every integer n");
      p.has_non_quasi_periodic_point = Verdict::proven(true, a, "square_plus_one: orbits increase strictly");
      p.has_non_quasi_periodic_point.witness = Index::at(0);
      return p;
    default:
      return profile_bounded(map, budget);
  }
}

MapProfile brute_force_profile(const SelfMap& table_map) {
  if (table_map.rule() != Rule::Table) throw InvalidArgument("brute_force_profile needs a table map");
  const auto& f = table_map.entries();
  const std::size_t n = f.size();
  const Provenance e = Provenance::Exhaustive;

  bool injective = true;
  for (std::size_t i = 0; i < n && injective; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (f[i] == f[j]) {
        injective = false;
        break;
      }
    }
  }
  bool periodic = false;
  bool infinite_orbit = false;
  for (std::size_t start = 0; start < n; ++start) {
    std::set<std::uint64_t> orbit;
    std::uint64_t x = start;
    while (orbit.insert(x).second) x = f[x];
    if (orbit.size() > n) infinite_orbit = true;
    // `start` is periodic iff the first repeated point is `start` itself.
    if (x == start) periodic = true;
  }
  MapProfile p;
  p.injective = Verdict::proven(injective, e, "pairwise image comparison");
  p.has_periodic_point = Verdict::proven(periodic, e, "explicit orbit sets");
  p.has_non_quasi_periodic_point = Verdict::proven(infinite_orbit, e, "explicit orbit sets");
  return p;
}

std::optional<std::pair<Index, Index>> injectivity_witness(const SelfMap& map, Int bound) {
  std::unordered_map<Index, Index, IndexHash> first_preimage;
  for (const auto& i : region(map.domain(), bound)) {
    Index image;
    try {
      image = evaluate(map, i);
    } catch (const BudgetExceeded&) {
      continue;
    }
    auto [it, inserted] = first_preimage.emplace(image, i);
    if (!inserted) {
      auto a = it->second;
      auto b = i;
      if (b < a) std::swap(a, b);
      return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

std::optional<Index> preimage(const SelfMap& map, const Index& index) {
  map.domain().require(index);
  if (map.rule() == Rule::DisjointUnion) {
    const Side side = index.outer_side();
    auto inner = preimage(side == Side::Left ? map.left() : map.right(), index.untagged());
    if (!inner) return std::nullopt;
    return Index::tagged(side, *inner);
  }
  if (auto pt = as_parity_translation(map)) {
    std::vector<Index> found;
    const Int from_even = checked_sub(index.coord, pt->even_shift);
    const Int from_odd = checked_sub(index.coord, pt->odd_shift);
    if (from_even % 2 == 0 && map.domain().contains(Index::at(from_even))) found.push_back(Index::at(from_even));
    if (from_odd % 2 != 0 && map.domain().contains(Index::at(from_odd))) found.push_back(Index::at(from_odd));
    if (found.size() > 1) throw InvalidArgument("preimage of " + to_string(index) + " is not unique");
    if (found.empty()) return std::nullopt;
    return found.front();
  }
  switch (map.rule()) {
    case Rule::Table: {
      std::optional<Index> found;
      const auto& entries = map.entries();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (static_cast<Int>(entries[i]) == index.coord) {
          if (found) throw InvalidArgument("preimage of " + to_string(index) + " is not unique");
          found = Index::at(static_cast<Int>(i));
        }
      }
      return found;
    }
    case Rule::Composition: {
      auto mid = preimage(map.outer(), index);
      if (!mid) return std::nullopt;
      return preimage(map.inner(), *mid);
    }
    default:
      throw InvalidArgument("no preimage rule for " + map.describe());
  }
}

std::optional<GrowthCertificate> growth_certificate(const SelfMap& input, const Index& start) {
  const SelfMap map = distribute_unions(input);
  if (map.rule() == Rule::DisjointUnion) {
    const Side side = start.outer_side();
    return growth_certificate(side == Side::Left ? map.left() : map.right(), start.untagged());
  }
  if (auto pt = as_parity_translation(map)) {
    if (pt->even_shift > 0 && pt->odd_shift > 0) return GrowthCertificate{0};
    return std::nullopt;
  }
  switch (map.rule()) {
    case Rule::Square:
      // |n| >= 2: from position 1 on the orbit is positive and n^2 > n.
      if (start.coord >= 2 || start.coord <= -2) return GrowthCertificate{1};
      return std::nullopt;
    case Rule::SquarePlusOne:
      return GrowthCertificate{0};
    default:
      return std::nullopt;
  }
}

ChainDecomposition chain_decomposition(const SelfMap& map, Int bound, Int budget) {
  const MapProfile profile = map_profile(map, budget);
  if (!profile.injective.proven_true()) {
    throw PreconditionFailed("chain_decomposition needs injective = true, got " + to_string(profile.injective.value) +
                             " for " + map.describe());
  }
  if (!profile.has_periodic_point.proven_false()) {
    throw PreconditionFailed("chain_decomposition needs has_periodic_point = false, got " +
                             to_string(profile.has_periodic_point.value) + " for " + map.describe());
  }
  const std::vector<Index> area = region(map.domain(), bound);
  std::unordered_map<Index, int, IndexHash> reach;
  for (const auto& i : area) reach.emplace(i, 0);

  ChainDecomposition out;
  out.region_bound = bound;
  auto mark = [&](const Index& i) {
    auto it = reach.find(i);
    if (it != reach.end()) ++it->second;
  };
  for (const auto& candidate : area) {
    if (reach.at(candidate) != 0) continue;
    out.representatives.push_back(candidate);
    mark(candidate);
    try {
      Index x = candidate;
      for (Int k = 0; k < budget; ++k) {
        x = evaluate(map, x);
        mark(x);
      }
    } catch (const BudgetExceeded&) {
    }
    try {
      Index x = candidate;
      for (Int k = 0; k < budget; ++k) {
        auto prev = preimage(map, x);
        if (!prev) break;
        x = *prev;
        mark(x);
      }
    } catch (const BudgetExceeded&) {
    }
  }
  for (const auto& i : area) {
    if (reach.at(i) != 1) out.residual.push_back(i);
  }
  return out;
}

}  // namespace gshift
