#include "gshift/theorems.hpp"

#include <random>

#include "gshift/errors.hpp"

namespace gshift {

namespace {

Verdict derived(const Verdict& from, Truth value, std::string certificate) {
  Verdict v = from;
  v.value = value;
  v.certificate = std::move(certificate);
  if (value != Truth::Unknown) v.exhausted_budget.reset();
  return v;
}

Verdict negated(const Verdict& v, const std::string& certificate) {
  Verdict out = derived(v, truth_not(v.value), certificate);
  out.witness.reset();
  out.witness_pair.reset();
  return out;
}

Verdict conjunction(const Verdict& a, const Verdict& b, const std::string& certificate) {
  const Truth value = truth_and(a.value, b.value);
  const Verdict& decisive = (a.value == Truth::False || (a.value == Truth::Unknown && b.value != Truth::False)) ? a : b;
  Verdict out = derived(decisive, value, certificate);
  if (value == Truth::True && a.provenance != b.provenance) out.provenance = Provenance::BoundedSearch;
  return out;
}

}  // namespace

ChaosPrediction predict(const MapProfile& input) {
  MapProfile p = input;
  // Finite forward orbits end in cycles.
  if (p.has_periodic_point.proven_false() && !p.has_non_quasi_periodic_point.proven_true()) {
    p.has_non_quasi_periodic_point =
        derived(p.has_periodic_point, Truth::True, "no periodic point, so every forward orbit is infinite");
  }
  if (p.has_non_quasi_periodic_point.proven_false() && !p.has_periodic_point.proven_true()) {
    p.has_periodic_point =
        derived(p.has_non_quasi_periodic_point, Truth::True, "every forward orbit is finite and ends in a cycle");
  }
  ChaosPrediction out;
  const Verdict& nqp = p.has_non_quasi_periodic_point;
  out.distributional = derived(nqp, nqp.value, "distributional chaos iff a non-quasi-periodic point exists");
  out.omega_chaotic = derived(nqp, nqp.value, "omega chaos iff a non-quasi-periodic point exists");
  out.li_yorke = derived(nqp, nqp.value, "Li-Yorke chaos iff a non-quasi-periodic point exists");
  out.dense_distributional = negated(p.has_periodic_point, "dense distributional chaos iff no periodic point");
  out.transitive_distributional =
      conjunction(p.injective, out.dense_distributional, "transitive distributional chaos iff injective and no periodic point");
  return out;
}

bool implication_chain_holds(const ChaosPrediction& prediction) {
  if (prediction.transitive_distributional.proven_true() && !prediction.dense_distributional.proven_true()) return false;
  if (prediction.dense_distributional.proven_true() && !prediction.distributional.proven_true()) return false;
  return true;
}

ExpectedPrediction truths_of(const ChaosPrediction& p) {
  return ExpectedPrediction{p.distributional.value, p.omega_chaotic.value, p.li_yorke.value,
                            p.dense_distributional.value, p.transitive_distributional.value};
}

std::string to_string(const ExpectedPrediction& e) {
  return "distributional=" + to_string(e.distributional) + " omega=" + to_string(e.omega_chaotic) +
         " li_yorke=" + to_string(e.li_yorke) + " dense=" + to_string(e.dense) +
         " transitive=" + to_string(e.transitive);
}

std::vector<SuiteEntry> counterexample_suite(Int budget) {
  constexpr Truth T = Truth::True;
  constexpr Truth F = Truth::False;
  const SelfMap lambda = SelfMap::parity_up();
  const SelfMap mu = SelfMap::parity_down();
  std::vector<SuiteEntry> suite{
      {"phi1 = successor", SelfMap::successor(), "successor shift: transitive distributional chaos", {T, T, T, T, T}, {}, false},
      {"phi2 = square_plus_one", SelfMap::square_plus_one(),
       "n -> n^2+1: dense distributional chaos, not transitive", {T, T, T, T, F}, {}, false},
      {"phi3 = square", SelfMap::square(), "n -> n^2: uniform distributional chaos, not dense", {T, T, T, F, F}, {}, false},
      {"lambda = parity_up", lambda, "every point 2-periodic: no distributional chaos", {F, F, F, F, F}, {}, false},
      {"mu = parity_down", mu, "every point 2-periodic: no distributional chaos", {F, F, F, F, F}, {}, false},
      {"lambda o mu", compose_maps(lambda, mu), "composition of the parity swaps: transitive distributional chaos",
       {T, T, T, T, T}, {}, false},
      {"mu o lambda", compose_maps(mu, lambda), "composition of the parity swaps: transitive distributional chaos",
       {T, T, T, T, T}, {}, false},
      {"predecessor o successor", compose_maps(SelfMap::predecessor(), SelfMap::successor()),
       "identity composition: no distributional chaos", {F, F, F, F, F}, {}, false},
      {"lambda + mu", disjoint_union_maps(lambda, mu), "product of two non-chaotic shifts: no distributional chaos",
       {F, F, F, F, F}, {}, false},
  };
  for (auto& entry : suite) {
    entry.computed = predict(map_profile(entry.map, budget));
    entry.pass = truths_of(entry.computed) == entry.expected && implication_chain_holds(entry.computed);
  }
  return suite;
}

Configuration random_configuration(const Domain& domain, std::size_t alphabet_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> symbol(0, static_cast<int>(alphabet_size) - 1);
  std::uniform_int_distribution<int> length(1, 5);
  std::vector<Symbol> word(static_cast<std::size_t>(length(rng)));
  for (auto& s : word) s = static_cast<Symbol>(symbol(rng));
  std::map<Index, Symbol> patch;
  for (const auto& i : region(domain, 12)) {
    if (rng() % 2 == 0) patch.emplace(i, static_cast<Symbol>(symbol(rng)));
  }
  return Configuration::finite_patch(Configuration::periodic_word(domain, std::move(word)), std::move(patch));
}

namespace {

Index random_index(const Domain& domain, std::mt19937_64& rng, Int bound) {
  const auto candidates = region(domain, bound);
  return candidates[rng() % candidates.size()];
}

}  // namespace

LawReport check_product_law(const SelfMap& f, const SelfMap& g, std::size_t samples, std::uint64_t seed, Int budget) {
  const SelfMap u = disjoint_union_maps(f, g);
  std::mt19937_64 rng(seed);
  LawReport report;
  for (std::size_t k = 0; k < samples; ++k) {
    const Configuration c = random_configuration(u.domain(), 2, rng());
    const Index i = random_index(u.domain(), rng, 10);
    const Int power = static_cast<Int>(rng() % 6);
    const Side side = i.outer_side();
    const Symbol whole = Configuration::shifted(c, u, power).symbol_at(i);
    const Symbol part =
        Configuration::shifted(Configuration::side_view(c, side), side == Side::Left ? f : g, power).symbol_at(i.untagged());
    ++report.samples;
    if (whole != part) {
      if (report.mismatches++ == 0) {
        report.detail = "pointwise mismatch at " + to_string(i) + " power " + to_string(power);
      }
    }
  }
  const ExpectedPrediction pf = truths_of(predict(map_profile(f, budget)));
  const ExpectedPrediction pg = truths_of(predict(map_profile(g, budget)));
  const ExpectedPrediction pu = truths_of(predict(map_profile(u, budget)));
  const bool dist_ok = pu.distributional == truth_or(pf.distributional, pg.distributional);
  const bool dense_ok = pu.dense == truth_and(pf.dense, pg.dense);
  const bool trans_ok = pu.transitive == truth_and(pf.transitive, pg.transitive);
  report.verdict_algebra = dist_ok && dense_ok && trans_ok;
  if (!report.verdict_algebra && report.detail.empty()) {
    report.detail = "verdict algebra fails: union " + to_string(pu) + "; left " + to_string(pf) + "; right " + to_string(pg);
  }
  return report;
}

LawReport check_composition_law(const SelfMap& f, const SelfMap& g, std::size_t samples, std::uint64_t seed) {
  if (!(f.domain() == g.domain())) throw DomainMismatch("composition law needs maps on the same domain");
  const SelfMap composed = compose_maps(g, f);
  std::mt19937_64 rng(seed);
  LawReport report;
  for (std::size_t k = 0; k < samples; ++k) {
    const Configuration c = random_configuration(f.domain(), 2, rng());
    const Index i = random_index(f.domain(), rng, 10);
    const Symbol stepwise = Configuration::shifted(Configuration::shifted(c, g, 1), f, 1).symbol_at(i);
    const Symbol at_once = Configuration::shifted(c, composed, 1).symbol_at(i);
    ++report.samples;
    if (stepwise != at_once) {
      if (report.mismatches++ == 0) report.detail = "mismatch at " + to_string(i);
    }
  }
  return report;
}

}  // namespace gshift
