#pragma once

// Point classification, three-valued map profiles and orbit-chain
// decomposition for index self-maps.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gshift/index_space.hpp"

namespace gshift {

enum class Truth { True, False, Unknown };

Truth truth_not(Truth a);
Truth truth_and(Truth a, Truth b);
Truth truth_or(Truth a, Truth b);
std::string to_string(Truth t);

enum class Provenance { Exhaustive, AnalyticMetadata, BoundedSearch };
std::string to_string(Provenance p);

inline constexpr Int kDefaultBudget = Int{1} << 16;

struct Verdict {
  Truth value = Truth::Unknown;
  std::optional<Index> witness;
  std::optional<std::pair<Index, Index>> witness_pair;
  Provenance provenance = Provenance::BoundedSearch;
  std::string certificate;
  std::optional<Int> exhausted_budget;  // set on Unknown

  bool proven_true() const { return value == Truth::True; }
  bool proven_false() const { return value == Truth::False; }
  bool unknown() const { return value == Truth::Unknown; }

  static Verdict proven(bool value, Provenance provenance, std::string certificate);
  static Verdict unknown_after(Int budget, std::string certificate = {});
};

struct PointClassification {
  enum class Kind { Periodic, QuasiPeriodic, NonQuasiPeriodic, Unknown };
  Kind kind = Kind::Unknown;
  Int period = 0;     // Periodic, QuasiPeriodic
  Int preperiod = 0;  // QuasiPeriodic
  Provenance provenance = Provenance::BoundedSearch;
  std::string certificate;

  bool periodic() const { return kind == Kind::Periodic; }
  bool non_quasi_periodic() const { return kind == Kind::NonQuasiPeriodic; }
};
std::string to_string(const PointClassification& c);

PointClassification classify_point(const SelfMap& map, const Index& index, Int budget = kDefaultBudget);

struct MapProfile {
  Verdict injective;
  Verdict has_periodic_point;
  Verdict has_non_quasi_periodic_point;
};

MapProfile map_profile(const SelfMap& map, Int budget = kDefaultBudget);

// Independent exhaustive profile of a Table map: explicit orbit sets per
// point and a quadratic injectivity scan.
MapProfile brute_force_profile(const SelfMap& table_map);

// First colliding pair among indices with |coordinate| <= bound, scanning in
// enumeration order; the pair is returned in Index order.
std::optional<std::pair<Index, Index>> injectivity_witness(const SelfMap& map, Int bound);

// Unique preimage of `index`, or nullopt if it has none. Throws
// InvalidArgument when the preimage is not unique or cannot be computed.
std::optional<Index> preimage(const SelfMap& map, const Index& index);

// Orbit of `start` is strictly increasing in coordinate from position
// `from_position` on (same side path throughout).
struct GrowthCertificate {
  Int from_position = 0;
};
std::optional<GrowthCertificate> growth_certificate(const SelfMap& map, const Index& start);

struct ChainDecomposition {
  std::vector<Index> representatives;
  Int region_bound = 0;
  std::vector<Index> residual;  // region indices not reached by exactly one representative
};

ChainDecomposition chain_decomposition(const SelfMap& map, Int bound, Int budget = kDefaultBudget);

// Rewrites compositions of disjoint-union maps sidewise:
// (f ⊔ g) ∘ (f' ⊔ g') becomes (f ∘ f') ⊔ (g ∘ g'). Other maps are returned as is.
SelfMap distribute_unions(const SelfMap& map);

}  // namespace gshift
