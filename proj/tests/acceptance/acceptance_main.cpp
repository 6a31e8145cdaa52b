// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gshift/chaos_stats.hpp>
#include <gshift/constructors.hpp>
#include <gshift/errors.hpp>
#include <gshift/theorems.hpp>

#include "oracles.hpp"

using namespace gshift;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string str(Int v) { return to_string(v); }

Window coords(const std::vector<long long>& cs) {
  Window w;
  for (long long c : cs) w.push_back(Index::at(c));
  return w;
}

long long radius_of(const std::vector<long long>& cs) {
  long long n = 0;
  for (long long c : cs) n = std::max(n, c < 0 ? -c : c);
  return n;
}

// Random configuration with an explicit reference model: a periodic word
// indexed by rank plus a patch on coordinates |c| <= 12.
struct ModelConfig {
  bool integers = true;
  std::vector<int> word;
  std::map<long long, int> patch;
  Configuration config = Configuration::constant(Domain::integers(), 0);

  long long rank(long long c) const { return integers ? oracle::rank_of_integer(c) : c; }
  long long coordinate(long long r) const { return integers ? oracle::integer_at_rank(r) : r; }
  int at(long long c) const {
    if (auto it = patch.find(c); it != patch.end()) return it->second;
    return word[static_cast<std::size_t>((rank(c) - 1) % static_cast<long long>(word.size()))];
  }
  int at_rank(long long r) const { return at(coordinate(r)); }
};

ModelConfig model_config(bool integers, std::mt19937_64& rng) {
  ModelConfig m;
  m.integers = integers;
  m.word.resize(1 + rng() % 5);
  for (auto& s : m.word) s = static_cast<int>(rng() % 2);
  const long long lo = integers ? -12 : 1;
  for (long long c = lo; c <= 12; ++c) {
    if (rng() % 2) m.patch[c] = static_cast<int>(rng() % 2);
  }
  const Domain d = integers ? Domain::integers() : Domain::naturals();
  std::vector<Symbol> word(m.word.begin(), m.word.end());
  std::map<Index, Symbol> patch;
  for (auto [c, s] : m.patch) patch.emplace(Index::at(c), static_cast<Symbol>(s));
  m.config = Configuration::finite_patch(Configuration::periodic_word(d, word), patch);
  return m;
}

// Exact d(x, y) = Σ_r [x_r != y_r] 2^{-r}: past rank 25 the disagreement
// pattern is periodic in the rank with period lcm of the word lengths.
Rational exact_distance(const ModelConfig& x, const ModelConfig& y) {
  const long long tail_start = 26;
  const long long period = std::lcm(static_cast<long long>(x.word.size()), static_cast<long long>(y.word.size()));
  auto weight = [](long long r) { return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(r)); };
  Rational head = 0;
  for (long long r = 1; r < tail_start; ++r) {
    if (x.at_rank(r) != y.at_rank(r)) head += weight(r);
  }
  Rational cycle = 0;
  for (long long j = 0; j < period; ++j) {
    if (x.at_rank(tail_start + j) != y.at_rank(tail_start + j)) cycle += weight(tail_start + j);
  }
  return head + cycle / (Rational(1) - weight(period));
}

oracle::Big big(Int v) { return to_big(v); }

// ---------------------------------------------------------------------------

Outcome suite_and_verdict_algebra() {
  Outcome out;
  using T = Truth;
  const T t = T::True, f = T::False;
  const std::vector<std::pair<std::string, ExpectedPrediction>> expected{
      {"phi1 = successor", {t, t, t, t, t}}, {"phi2 = square_plus_one", {t, t, t, t, f}},
      {"phi3 = square", {t, t, t, f, f}},    {"lambda = parity_up", {f, f, f, f, f}},
      {"mu = parity_down", {f, f, f, f, f}}, {"lambda o mu", {t, t, t, t, t}},
      {"mu o lambda", {t, t, t, t, t}},      {"predecessor o successor", {f, f, f, f, f}},
      {"lambda + mu", {f, f, f, f, f}}};
  const auto suite = counterexample_suite();
  if (suite.size() != expected.size()) out.fail("suite has " + std::to_string(suite.size()) + " entries");
  std::size_t passed = 0;
  for (std::size_t i = 0; i < std::min(suite.size(), expected.size()); ++i) {
    const auto computed = truths_of(suite[i].computed);
    if (suite[i].name != expected[i].first) out.fail("entry " + std::to_string(i) + " is " + suite[i].name);
    if (computed != expected[i].second || !suite[i].pass) {
      out.fail(suite[i].name + " computed " + to_string(computed));
    } else {
      ++passed;
    }
  }
  // or/and/and over the component predictions.
  const std::vector<std::pair<SelfMap, SelfMap>> pairs{{SelfMap::successor(), SelfMap::parity_up()},
                                                        {SelfMap::parity_up(), SelfMap::parity_down()},
                                                        {SelfMap::successor(), SelfMap::successor()}};
  for (const auto& [a, b] : pairs) {
    const auto pa = truths_of(predict(map_profile(a)));
    const auto pb = truths_of(predict(map_profile(b)));
    const auto pu = truths_of(predict(map_profile(disjoint_union_maps(a, b))));
    if (pu.distributional != truth_or(pa.distributional, pb.distributional) ||
        pu.dense != truth_and(pa.dense, pb.dense) || pu.transitive != truth_and(pa.transitive, pb.transitive)) {
      out.fail("verdict algebra fails for " + a.describe() + " + " + b.describe());
    }
    if (!check_product_law(a, b, 20, 11).verdict_algebra) out.fail("library verdict algebra flag false");
  }
  if (out.pass) out.detail = std::to_string(passed) + "/9 entries, verdict algebra on 3 unions";
  return out;
}

Outcome finite_tables() {
  Outcome out;
  std::size_t checked = 0;
  for (std::uint64_t code = 0; code < 46656; ++code) {
    const auto entries = oracle::table_from_number(code, 6);
    const SelfMap m = SelfMap::table(entries);
    const MapProfile lib = map_profile(m);
    const MapProfile brute = brute_force_profile(m);
    const auto facts = oracle::table_facts(entries);
    auto truth = [](bool b) { return b ? Truth::True : Truth::False; };
    const bool same = lib.injective.value == brute.injective.value &&
                      lib.has_periodic_point.value == brute.has_periodic_point.value &&
                      lib.has_non_quasi_periodic_point.value == brute.has_non_quasi_periodic_point.value;
    const bool matches_oracle = lib.injective.value == truth(facts.injective) &&
                                lib.has_periodic_point.value == truth(facts.has_periodic) &&
                                lib.has_non_quasi_periodic_point.value == truth(facts.has_nqp);
    if (!same || !matches_oracle) {
      out.fail("profile mismatch for table code " + std::to_string(code));
      break;
    }
    if (!predict(lib).distributional.proven_false()) {
      out.fail("distributional not proven false for table code " + std::to_string(code));
      break;
    }
    ++checked;
  }
  if (out.pass) out.detail = std::to_string(checked) + " tables";
  return out;
}

struct Phi1Family {
  std::vector<Configuration> members;
  std::vector<MemberSet> sets;
  std::vector<long long> bases{3, 5, 7};
};

Phi1Family phi1_family() {
  Phi1Family f;
  const auto family = almost_disjoint_family(3, true);
  f.sets = family.members;
  f.members = dc_family(ScrambledFamilySpec{SelfMap::successor(), {Index::at(0)}, Alphabet{}, BlockVariant::Plain, family});
  return f;
}

const std::vector<std::vector<long long>> kRadiusOneWindows{{0}, {0, 1}, {-1, 0}, {-1, 0, 1}};

Outcome proof_bounds(const Phi1Family& fam) {
  Outcome out;
  const auto s = oracle::block_lengths(9, false);
  std::vector<long long> n_r;  // S_r
  long long total = 0;
  for (const auto& v : s) n_r.push_back(total += static_cast<long long>(v));
  const BlockLengths lengths = block_lengths(8, BlockVariant::Plain);
  std::size_t agreement_checks = 0, disagreement_checks = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto la = oracle::plain_layout(9, fam.bases[i], true);
      const auto lb = oracle::plain_layout(9, fam.bases[j], true);
      auto sa = [&](long long c) { return la.symbol(c); };
      auto sb = [&](long long c) { return lb.symbol(c); };
      for (std::size_t r = 2; r <= 8; ++r) {
        const bool in_a = oracle::member(static_cast<long long>(r), fam.bases[i], true);
        const bool in_b = oracle::member(static_cast<long long>(r), fam.bases[j], true);
        if (!in_a && !in_b) continue;
        const long long horizon = n_r[r - 1];
        const long long sr = static_cast<long long>(s[r - 1]);
        const std::string where = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") r=" + std::to_string(r);
        DcFamilyParams params{SelfMap::successor(), Index::at(0), lengths, fam.sets[i], fam.sets[j], coords({0}), 0,
                              0, 1, nullptr};
        if (in_a && in_b) {
          for (const auto& w : kRadiusOneWindows) {
            const long long big_n = radius_of(w);
            params.window = coords(w);
            params.radius = big_n;
            const auto res = proof_bound_check_dc(params, r);
            const long long count = oracle::successor_zeta(sa, sb, w, horizon);
            const long long bound = sr - 4 * big_n - 1;
            if (!res.agreement || res.horizon != horizon || res.count != count || res.bound != bound) {
              out.fail(where + ": library " + res.describe() + " oracle count " + std::to_string(count));
            }
            if (count < bound || !res.holds) out.fail(where + ": agreement " + std::to_string(count) + " < " + std::to_string(bound));
            ++agreement_checks;
          }
        } else {
          const auto res = proof_bound_check_dc(params, r);
          const long long count = oracle::successor_zeta(sa, sb, {0}, horizon);
          const long long bound = horizon - sr + 1;
          if (res.agreement || res.horizon != horizon || res.count != count || res.bound != bound) {
            out.fail(where + ": library " + res.describe() + " oracle count " + std::to_string(count));
          }
          if (count > bound || !res.holds) out.fail(where + ": agreement " + std::to_string(count) + " > " + std::to_string(bound));
          ++disagreement_checks;
        }
      }
    }
  }
  if (out.pass) {
    out.detail = std::to_string(agreement_checks) + " lower-bound and " + std::to_string(disagreement_checks) +
                 " upper-bound checks, horizon n_8 = " + std::to_string(n_r[7]);
  }
  return out;
}

Outcome dc_surrogate(const Phi1Family& fam) {
  Outcome out;
  const auto s = oracle::block_lengths(8, false);
  long long n8 = 0;
  for (const auto& v : s) n8 += static_cast<long long>(v);
  std::vector<Window> windows;
  for (const auto& w : kRadiusOneWindows) windows.push_back(coords(w));
  const Rational quarter(1, 4);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto v = dc_pair_report(SelfMap::successor(), fam.members[i], fam.members[j], windows,
                                    block_boundary_schedule(BlockVariant::Plain, 8), quarter, quarter);
      const std::string where = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (v.horizon != n8) out.fail(where + ": horizon " + str(v.horizon));
      bool some_low = false;
      bool all_high = true;
      for (const auto& p : v.profiles) {
        some_low = some_low || p.min() <= quarter;
        all_high = all_high && p.max() >= Rational(3, 4);
      }
      if (!some_low || !all_high || !v.dc1) out.fail(where + ": running extremes miss the 1/4, 3/4 thresholds");
      ++pairs;
    }
  }
  if (out.pass) out.detail = std::to_string(pairs) + " pairs, 4 windows each, horizon " + std::to_string(n8);
  return out;
}

// Every nonempty window of ranks from {1..3} with every 2-symbol assignment.
std::vector<CylinderPattern> small_patterns(const Domain& d) {
  std::vector<CylinderPattern> out;
  for (int mask = 1; mask < 8; ++mask) {
    std::vector<Int> ranks;
    for (int r = 1; r <= 3; ++r) {
      if (mask & (1 << (r - 1))) ranks.push_back(r);
    }
    for (int a = 0; a < (1 << ranks.size()); ++a) {
      CylinderPattern p;
      for (std::size_t k = 0; k < ranks.size(); ++k) {
        p.window.push_back(enumerate(d, ranks[k]));
        p.symbols.push_back(static_cast<Symbol>((a >> k) & 1));
      }
      out.push_back(p);
    }
  }
  return out;
}

// n -> n^2 + 1 on the integers: every orbit is positive and strictly
// increasing after one step, so no value repeats.
bool phi2_orbit_never_repeats(long long c) {
  __int128 x = c * static_cast<__int128>(c) + 1;
  for (int k = 0; k < 5; ++k) {
    const __int128 next = x * x + 1;
    if (next <= x) return false;
    x = next;
  }
  return true;
}

Outcome density() {
  Outcome out;
  const SelfMap phi2 = SelfMap::square_plus_one();
  const auto patterns = small_patterns(phi2.domain());
  const PatternEnumeration e(phi2.domain(), 2);
  if (static_cast<Int>(patterns.size()) != e.count_up_to(3)) out.fail("pattern count " + std::to_string(patterns.size()));
  const std::size_t count = patterns.size();
  const auto family = dc_family(
      ScrambledFamilySpec{phi2, {Index::at(0)}, Alphabet{}, BlockVariant::Plain, almost_disjoint_family(count + 4)});
  const auto dense = densify_family(phi2, family, e, count);
  if (dense.members.size() != count) {
    out.fail("densified family has " + std::to_string(dense.members.size()) + " members");
    return out;
  }
  std::size_t support = 0;
  for (const auto& p : patterns) {
    const Int bound = e.rank_of(p);
    std::optional<Int> hit;
    for (std::size_t n = 0; n < count && !hit; ++n) {
      if (in_cylinder(dense.members[n], p)) hit = static_cast<Int>(n + 1);
    }
    if (!hit || *hit > bound) out.fail("pattern of rank " + str(bound) + " not hit by member <= rank");
  }
  for (const auto& v : dense.members) {
    for (const auto& [index, sym] : v.patch()) {
      const auto cls = classify_point(phi2, index);
      if (!cls.non_quasi_periodic() || !phi2_orbit_never_repeats(static_cast<long long>(index.coord))) {
        out.fail("patch coordinate " + to_string(index) + " is " + to_string(cls));
      }
      ++support;
    }
  }
  if (out.pass) out.detail = std::to_string(count) + " patterns hit, " + std::to_string(support) + " patch coordinates NQP";
  return out;
}

// Symbol at orbit position `pos` of the weave along the successor orbit of
// 0: block r holds s_r copies of the member symbol, then t_0 .. t_{r-1}.
int weave_symbol(const oracle::Big& pos, const std::vector<oracle::Big>& s, long long base,
                 const std::vector<int>& source) {
  oracle::Big start = 0;
  for (std::size_t r = 1; r <= s.size(); ++r) {
    if (pos < start + s[r - 1]) return oracle::member(static_cast<long long>(r), base, true) ? 0 : 1;
    start += s[r - 1];
    if (pos < start + r) return source[static_cast<std::size_t>(pos - start)];
    start += r;
  }
  return -1;
}

Outcome transitivity() {
  Outcome out;
  const SelfMap phi1 = SelfMap::successor();
  const Configuration source = Configuration::transitive_word(2);
  const auto family = almost_disjoint_family(2, true);
  const auto weaves = transitive_weave_family(
      ScrambledFamilySpec{phi1, {Index::at(0)}, Alphabet{}, BlockVariant::Weave, family}, source);
  const auto s = oracle::block_lengths(48, true);
  const auto t = oracle::transitive_prefix(2, 4096);
  const long long bases[] = {3, 5};
  const auto patterns = small_patterns(phi1.domain());
  Int largest = 0;
  for (std::size_t m = 0; m < weaves.size(); ++m) {
    for (const auto& p : patterns) {
      const WeaveEntry entry = weave_entry(weaves[m], p);
      std::vector<long long> cs;
      for (const auto& i : p.window) cs.push_back(static_cast<long long>(i.coord));
      const long long big_n = radius_of(cs);
      const long long h = static_cast<long long>(entry.source_shift);
      const std::size_t r = static_cast<std::size_t>(h + big_n + 1);
      oracle::Big l = oracle::Big(r) * (r - 1) / 2;
      for (std::size_t k = 0; k < r && k < s.size(); ++k) l += s[k];
      const std::string where = "member " + std::to_string(m) + " pattern rank " + str(PatternEnumeration(phi1.domain(), 2).rank_of(p));
      if (entry.radius != big_n || h <= big_n || entry.block != r || r > s.size() || big(entry.block_end) != l ||
          big(entry.exponent) != l + h) {
        out.fail(where + ": entry exponent " + str(entry.exponent) + " disagrees with l + h");
        continue;
      }
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (h + cs[k] < 0 || t[static_cast<std::size_t>(h + cs[k])] != p.symbols[k]) {
          out.fail(where + ": source not in the cylinder at shift " + std::to_string(h));
        }
        if (weave_symbol(big(entry.exponent) + cs[k], s, bases[m], t) != p.symbols[k]) {
          out.fail(where + ": reference weave not in the cylinder at exponent " + str(entry.exponent));
        }
      }
      if (!in_cylinder(Configuration::shifted(weaves[m], phi1, entry.exponent), p)) {
        out.fail(where + ": shifted weave not in the cylinder");
      }
      largest = std::max(largest, entry.exponent);
    }
  }
  if (out.pass) {
    out.detail = std::to_string(patterns.size() * weaves.size()) + " entries, largest exponent " + str(largest);
  }
  return out;
}

Outcome conjugacy() {
  Outcome out;
  std::mt19937_64 rng(20);
  const SelfMap phi1 = SelfMap::successor();
  const SelfMap one_sided = SelfMap::successor(Domain::naturals());
  const Index theta = Index::at(0);
  std::vector<ModelConfig> inner;
  std::vector<Configuration> embedded;
  for (int k = 0; k < 100; ++k) {
    inner.push_back(model_config(false, rng));
    embedded.push_back(omega_embedding(phi1, theta, inner.back().config, 0));
  }
  std::uniform_int_distribution<long long> position(1, 1000000);
  std::size_t checks = 0;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    for (Int power = 1; power <= 5; ++power) {
      const Configuration lhs = Configuration::shifted(embedded[k], phi1, power);
      const Configuration rhs =
          omega_embedding(phi1, theta, Configuration::shifted(inner[k].config, one_sided, power), 0);
      for (int c = 0; c < 50; ++c) {
        const long long n = position(rng);
        const Index at = iterate(phi1, theta, n);
        const int want = inner[k].at(n + static_cast<long long>(power));
        if (lhs.symbol_at(at) != want || rhs.symbol_at(at) != want) {
          out.fail("sequence " + std::to_string(k) + " power " + str(power) + " position " + std::to_string(n));
        }
        ++checks;
      }
    }
  }
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    for (std::size_t j = i + 1; j < inner.size(); ++j) {
      // Beyond the patch both sequences are periodic with period <= 5.
      std::optional<long long> first;
      for (long long n = 1; n <= 12 + 60 && !first; ++n) {
        if (inner[i].at(n) != inner[j].at(n)) first = n;
      }
      if (!first) continue;
      ++distinct;
      const Index at = iterate(phi1, theta, *first);
      if (embedded[i].symbol_at(at) == embedded[j].symbol_at(at)) {
        out.fail("embedding identifies sequences " + std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
  if (out.pass) {
    out.detail = std::to_string(checks) + " coordinate checks, " + std::to_string(distinct) + " distinct pairs separated";
  }
  return out;
}

Outcome duality() {
  Outcome out;
  std::mt19937_64 rng(8);
  const Domain z = Domain::integers();
  const SelfMap phi1 = SelfMap::successor();
  for (int trial = 0; trial < 1000; ++trial) {
    const ModelConfig x = model_config(true, rng);
    const ModelConfig y = model_config(true, rng);
    const unsigned j = 1 + static_cast<unsigned>(rng() % 12);
    const BigInt numer = 1 + BigInt(rng() % (1ULL << j));
    const Rational t(numer, BigInt(1) << j);
    std::vector<long long> ranks;
    for (long long r = 1; r <= 12; ++r) {
      if (rng() % 3 == 0) ranks.push_back(r);
    }
    if (ranks.empty()) ranks.push_back(1 + static_cast<long long>(rng() % 12));
    Window d;
    for (long long r : ranks) d.push_back(enumerate(z, r));
    const long long d_max = ranks.back();

    const Rational dist = exact_distance(x, y);
    const std::string where = "trial " + std::to_string(trial);

    // Window of a threshold: ranks 1..m, m minimal with 2^-m < t.
    long long m = 1;
    while (Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(m)) >= t) ++m;
    const Window tw = threshold_to_window(z, t);
    bool window_ok = static_cast<long long>(tw.size()) == m;
    for (long long r = 1; window_ok && r <= m; ++r) window_ok = rank_of(z, tw[static_cast<std::size_t>(r - 1)]) == r;
    if (!window_ok) out.fail(where + ": threshold window");
    const Rational dt = window_to_threshold(z, d);
    if (dt != Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(d_max))) out.fail(where + ": window threshold");

    auto agree_ranks = [&](const std::vector<long long>& rs) {
      for (long long r : rs) {
        if (x.at_rank(r) != y.at_rank(r)) return false;
      }
      return true;
    };
    std::vector<long long> prefix_m(static_cast<std::size_t>(m));
    std::iota(prefix_m.begin(), prefix_m.end(), 1);
    std::vector<long long> prefix_d(static_cast<std::size_t>(d_max));
    std::iota(prefix_d.begin(), prefix_d.end(), 1);

    if (agree_on_window(x.config, y.config, tw) != agree_ranks(prefix_m)) out.fail(where + ": agreement on threshold window");
    if (agree_on_window(x.config, y.config, d) != agree_ranks(ranks)) out.fail(where + ": agreement on D");
    // Agreement on the threshold window forces d < t; d < t forces agreement
    // on every rank r with 2^-r >= t.
    if (agree_ranks(prefix_m) && !(dist < t)) out.fail(where + ": agreement without closeness");
    if (dist < t) {
      for (long long r = 1; r < m; ++r) {
        if (x.at_rank(r) != y.at_rank(r)) out.fail(where + ": close but disagree at rank " + std::to_string(r));
      }
    }
    // Agreement on ranks 1..max(D) gives d <= 2^-max(D); d < 2^-max(D) gives agreement on D.
    if (agree_ranks(prefix_d) && dist > dt) out.fail(where + ": prefix agreement but d > threshold");
    if (dist < dt && !agree_ranks(ranks)) out.fail(where + ": d below window threshold but disagree on D");

    Rational truncated = 0;
    for (long long r = 1; r <= 20; ++r) {
      if (x.at_rank(r) != y.at_rank(r)) truncated += Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(r));
    }
    if (truncated_distance(x.config, y.config, 20) != truncated) out.fail(where + ": truncated distance");
    const auto xi = xi_count_detailed(phi1, x.config, y.config, t, 1);
    if (xi.close != (dist < t ? 1 : 0)) out.fail(where + ": xi decision differs from exact distance");
  }
  if (out.pass) out.detail = "1000 triples";
  return out;
}

Outcome block_length_inequalities() {
  Outcome out;
  for (bool weave : {false, true}) {
    const BlockLengths lengths = block_lengths(64, weave ? BlockVariant::Weave : BlockVariant::Plain);
    const auto reference = oracle::block_lengths(64, weave);
    BigInt sum = 0;
    for (std::size_t n = 1; n <= 64; ++n) {
      const BigInt& sn = lengths.s(n);
      if (sn != reference[n - 1]) out.fail(std::string(weave ? "weave" : "plain") + " s_" + std::to_string(n));
      sum += sn;
      const BigInt denom = weave ? sum + BigInt(n) * (n - 1) / 2 : sum;
      // s_n / denom > (n-1)/n
      if (!(sn * n > denom * (n - 1))) out.fail(std::string(weave ? "weave" : "plain") + " inequality at " + std::to_string(n));
      if (!weave && n > 1 && !(sn > lengths.s(n - 1))) out.fail("plain not increasing at " + std::to_string(n));
    }
    if (!block_lengths_valid(lengths)) out.fail("library validity check rejects a minimal sequence");
  }
  if (out.pass) out.detail = "n <= 64, both variants";
  return out;
}

Outcome algebra_laws() {
  Outcome out;
  const SelfMap lambda = SelfMap::parity_up();
  const SelfMap mu = SelfMap::parity_down();
  const std::vector<std::pair<SelfMap, SelfMap>> products{
      {lambda, mu}, {SelfMap::successor(), lambda}, {SelfMap::successor(), SelfMap::successor()}, {mu, SelfMap::predecessor()}};
  const std::vector<std::pair<SelfMap, SelfMap>> compositions{{lambda, mu},
                                                              {mu, lambda},
                                                              {SelfMap::successor(), SelfMap::predecessor()},
                                                              {SelfMap::predecessor(), SelfMap::successor()},
                                                              {SelfMap::square(), SelfMap::successor()},
                                                              {SelfMap::successor(), SelfMap::square_plus_one()}};
  std::size_t samples = 0;
  std::uint64_t seed = 100;
  for (const auto& [f, g] : products) {
    const auto r = check_product_law(f, g, 100, ++seed);
    samples += r.samples;
    if (!r.pass()) out.fail("product " + f.describe() + " + " + g.describe() + ": " + r.detail);
  }
  for (const auto& [f, g] : compositions) {
    const auto r = check_composition_law(f, g, 100, ++seed);
    samples += r.samples;
    if (!r.pass()) out.fail("composition " + f.describe() + " then " + g.describe() + ": " + r.detail);
  }
  if (out.pass) out.detail = std::to_string(samples) + " samples over " + std::to_string(products.size() + compositions.size()) + " pairs";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  std::optional<Phi1Family> phi1;
  auto family = [&]() -> const Phi1Family& {
    if (!phi1) phi1 = phi1_family();
    return *phi1;
  };
  const std::vector<Criterion> criteria{
      {"AC1 counterexample suite", 1, suite_and_verdict_algebra},
      {"AC2 finite-table oracle equivalence", 30, finite_tables},
      {"AC3 proof bounds for phi1", 120, [&] { return proof_bounds(family()); }},
      {"AC4 DC surrogate for phi1", 120, [&] { return dc_surrogate(family()); }},
      {"AC5 density for phi2", 10, density},
      {"AC6 transitivity of the weave", 60, transitivity},
      {"AC7 one-sided shift conjugacy", 5, conjugacy},
      {"AC8 metric/window duality", 5, duality},
      {"AC9 block-length inequalities", 1, block_length_inequalities},
      {"AC10 product and composition laws", 5, algebra_laws},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (o.pass && seconds > c.limit_seconds) {
      std::ostringstream why;
      why << "took " << seconds << " s, limit " << c.limit_seconds << " s";
      o.fail(why.str());
    }
    std::printf("%-40s %s  (%.3f s, limit %.0f s)  %s\n", c.name, o.pass ? "PASS" : "FAIL", seconds, c.limit_seconds,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
