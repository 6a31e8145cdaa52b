#pragma once

// Chaos predictions from map profiles, the catalog of counterexample maps,
// and the product / composition laws for generalized shifts.

#include <cstdint>
#include <string>
#include <vector>

#include "gshift/config_space.hpp"
#include "gshift/orbit_analysis.hpp"

namespace gshift {

struct ChaosPrediction {
  Verdict li_yorke;
  Verdict distributional;  // uniform, DC1 and DC2 alike
  Verdict omega_chaotic;
  Verdict dense_distributional;
  Verdict transitive_distributional;
};

// distributional = ω-chaos = Li-Yorke = has a non-quasi-periodic point;
// dense = no periodic point; transitive = injective and no periodic point.
// A proven absence of periodic points also proves a non-quasi-periodic
// point (finite forward orbits end in cycles), and vice versa.
ChaosPrediction predict(const MapProfile& profile);

// transitive => dense => distributional, on proven-true verdicts.
bool implication_chain_holds(const ChaosPrediction& prediction);

struct ExpectedPrediction {
  Truth distributional = Truth::Unknown;
  Truth omega_chaotic = Truth::Unknown;
  Truth li_yorke = Truth::Unknown;
  Truth dense = Truth::Unknown;
  Truth transitive = Truth::Unknown;

  friend bool operator==(const ExpectedPrediction&, const ExpectedPrediction&) = default;
};

ExpectedPrediction truths_of(const ChaosPrediction& prediction);
std::string to_string(const ExpectedPrediction& e);

struct SuiteEntry {
  std::string name;
  SelfMap map;
  std::string provenance;  // where the expected values come from
  ExpectedPrediction expected;
  ChaosPrediction computed;
  bool pass = false;
};

std::vector<SuiteEntry> counterexample_suite(Int budget = kDefaultBudget);

struct LawReport {
  std::size_t samples = 0;
  std::size_t mismatches = 0;
  bool verdict_algebra = true;  // product law only
  std::string detail;           // first mismatch, if any

  bool pass() const { return mismatches == 0 && verdict_algebra; }
};

// Random configuration on `domain`: a periodic word base with a random
// finite patch near the origin.
Configuration random_configuration(const Domain& domain, std::size_t alphabet_size, std::uint64_t seed);

// Shifting by f ⊔ g agrees with shifting each side by f and g; and the
// predictions satisfy distributional(f ⊔ g) = or, dense and transitive = and.
LawReport check_product_law(const SelfMap& f, const SelfMap& g, std::size_t samples, std::uint64_t seed = 1,
                            Int budget = kDefaultBudget);

// Applying the shift of g and then the shift of f equals the shift of
// compose_maps(g, f).
LawReport check_composition_law(const SelfMap& f, const SelfMap& g, std::size_t samples, std::uint64_t seed = 1);

}  // namespace gshift
