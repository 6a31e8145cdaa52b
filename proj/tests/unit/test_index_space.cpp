#include <gtest/gtest.h>

#include <random>

#include <gshift/errors.hpp>
#include <gshift/index_space.hpp>

#include "oracles.hpp"

using namespace gshift;

namespace {

long long ll(Int v) { return static_cast<long long>(v); }

// Catalog maps on the integers, used by the property tests.
std::vector<SelfMap> integer_maps() {
  const SelfMap up = SelfMap::parity_up();
  const SelfMap down = SelfMap::parity_down();
  return {SelfMap::successor(),
          SelfMap::predecessor(),
          up,
          down,
          compose_maps(up, down),
          compose_maps(down, up),
          compose_maps(SelfMap::successor(), up),
          compose_maps(SelfMap::predecessor(), compose_maps(down, SelfMap::successor()))};
}

Int naive_evaluate(Rule rule, Int n) {
  switch (rule) {
    case Rule::Successor: return n + 1;
    case Rule::Predecessor: return n - 1;
    case Rule::Square: return n * n;
    case Rule::SquarePlusOne: return n * n + 1;
    case Rule::ParityUp: return n % 2 == 0 ? n + 1 : n - 1;
    case Rule::ParityDown: return n % 2 == 0 ? n - 1 : n + 1;
    default: return 0;
  }
}

}  // namespace

TEST(IndexText, PrintsAndParsesTaggedIndices) {
  EXPECT_EQ(to_string(Index::at(5)), "5");
  EXPECT_EQ(to_string(Index::tagged(Side::Left, Index::at(-3))), "L-3");
  EXPECT_EQ(to_string(Index::tagged(Side::Left, Index::tagged(Side::Right, Index::at(12)))), "LR12");
  EXPECT_EQ(parse_index("R-3"), Index::tagged(Side::Right, Index::at(-3)));
  EXPECT_EQ(parse_index("L:4"), Index::tagged(Side::Left, Index::at(4)));
  EXPECT_FALSE(parse_index("X3").has_value());
  EXPECT_FALSE(parse_index("L").has_value());
}

TEST(IndexText, RoundTripOnRandomPaths) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    Index i = Index::at(static_cast<Int>(rng() % 2001) - 1000);
    const int depth = static_cast<int>(rng() % 6);
    for (int d = 0; d < depth; ++d) i = Index::tagged(rng() % 2 ? Side::Left : Side::Right, i);
    const auto parsed = parse_index(to_string(i));
    ASSERT_TRUE(parsed.has_value()) << to_string(i);
    EXPECT_EQ(*parsed, i);
  }
}

TEST(Enumeration, IntegersFollowTheZigZagOrder) {
  const Domain z = Domain::integers();
  for (long long r = 1; r <= 2000; ++r) {
    const Index i = enumerate(z, r);
    ASSERT_EQ(ll(i.coord), oracle::integer_at_rank(r));
    ASSERT_EQ(ll(rank_of(z, i)), r);
  }
  EXPECT_EQ(ll(rank_of(z, Index::at(-7))), oracle::rank_of_integer(-7));
}

TEST(Enumeration, NaturalsAndFiniteRanges) {
  EXPECT_EQ(enumerate(Domain::naturals(), 1), Index::at(1));
  EXPECT_EQ(ll(rank_of(Domain::naturals(), Index::at(9))), 9);
  const Domain f = Domain::finite_range(4);
  for (Int r = 1; r <= 4; ++r) EXPECT_EQ(enumerate(f, r), Index::at(r - 1));
  EXPECT_THROW(enumerate(f, 5), InvalidArgument);
  EXPECT_FALSE(f.contains(Index::at(4)));
  EXPECT_FALSE(Domain::naturals().contains(Index::at(0)));
}

TEST(Enumeration, DisjointUnionInterleavesThenContinues) {
  const Domain du = Domain::disjoint_union(Domain::finite_range(2), Domain::integers());
  const std::vector<std::string> expected{"L0", "R0", "L1", "R1", "R-1", "R2"};
  for (std::size_t r = 1; r <= expected.size(); ++r) {
    EXPECT_EQ(to_string(enumerate(du, static_cast<Int>(r))), expected[r - 1]);
  }
  for (Int r = 1; r <= 300; ++r) ASSERT_EQ(rank_of(du, enumerate(du, r)), r);
  EXPECT_FALSE(du.contains(Index::at(0)));
  EXPECT_FALSE(du.contains(Index::tagged(Side::Left, Index::at(2))));
}

TEST(Region, ListsIndicesByMagnitudeInEnumerationOrder) {
  const auto r = region(Domain::integers(), 2);
  ASSERT_EQ(r.size(), 5U);
  EXPECT_EQ(r[0], Index::at(0));
  EXPECT_EQ(r[4], Index::at(-2));
  EXPECT_EQ(region(Domain::naturals(), 3).size(), 3U);
  EXPECT_EQ(region(Domain::disjoint_union(Domain::naturals(), Domain::finite_range(3)), 1).size(), 3U);
}

TEST(SelfMapRules, LeafRulesMatchTheirFormulas) {
  const std::vector<SelfMap> leaves{SelfMap::successor(), SelfMap::predecessor(), SelfMap::square(),
                                    SelfMap::square_plus_one(), SelfMap::parity_up(), SelfMap::parity_down()};
  for (const auto& m : leaves) {
    for (Int n = -40; n <= 40; ++n) {
      ASSERT_EQ(evaluate(m, Index::at(n)).coord, naive_evaluate(m.rule(), n)) << m.describe() << " at " << ll(n);
    }
  }
}

TEST(SelfMapRules, DescribeNamesTheStructure) {
  EXPECT_EQ(SelfMap::successor(Domain::naturals()).describe(), "successor@naturals");
  EXPECT_EQ(compose_maps(SelfMap::parity_up(), SelfMap::parity_down()).describe(), "compose(parity_up, parity_down)");
  EXPECT_EQ(SelfMap::table({1, 2, 0}).describe(), "table[1,2,0]");
  EXPECT_EQ(disjoint_union_maps(SelfMap::parity_up(), SelfMap::successor()).describe(),
            "disjoint_union(parity_up, successor)");
}

TEST(SelfMapRules, CompositionAppliesInnerFirst) {
  const SelfMap sq_after_succ = compose_maps(SelfMap::square(), SelfMap::successor());
  EXPECT_EQ(evaluate(sq_after_succ, Index::at(2)).coord, 9);
  const SelfMap succ_after_sq = compose_maps(SelfMap::successor(), SelfMap::square());
  EXPECT_EQ(evaluate(succ_after_sq, Index::at(2)).coord, 5);
}

TEST(SelfMapRules, DisjointUnionActsSidewise) {
  const SelfMap u = disjoint_union_maps(SelfMap::successor(), SelfMap::table({1, 0}));
  EXPECT_EQ(evaluate(u, *parse_index("L7")), *parse_index("L8"));
  EXPECT_EQ(evaluate(u, *parse_index("R0")), *parse_index("R1"));
  EXPECT_THROW(evaluate(u, Index::at(0)), DomainMismatch);
}

TEST(SelfMapRules, InvalidConstructionsThrow) {
  EXPECT_THROW(SelfMap::table({0, 3}), InvalidArgument);
  EXPECT_THROW(SelfMap::table({}), InvalidArgument);
  EXPECT_THROW(compose_maps(SelfMap::successor(), SelfMap::table({0})), DomainMismatch);
  EXPECT_THROW(evaluate(SelfMap::successor(Domain::naturals()), Index::at(0)), DomainMismatch);
  EXPECT_THROW(iterate(SelfMap::square(), Index::at(2), 8), BudgetExceeded);
}

TEST(Iterate, AgreesWithStepwiseEvaluation) {
  std::mt19937_64 rng(5);
  const auto maps = integer_maps();
  for (int trial = 0; trial < 400; ++trial) {
    const SelfMap& m = maps[rng() % maps.size()];
    Index x = Index::at(static_cast<Int>(rng() % 201) - 100);
    const Int k = static_cast<Int>(rng() % 60);
    const Index fast = iterate(m, x, k);
    for (Int s = 0; s < k; ++s) x = evaluate(m, x);
    ASSERT_EQ(fast, x) << m.describe();
  }
}

TEST(Iterate, ParityCompositionsUseClosedForms) {
  const SelfMap lm = compose_maps(SelfMap::parity_up(), SelfMap::parity_down());
  const Int k = 1'000'000'000'000'000LL;
  EXPECT_EQ(iterate(lm, Index::at(0), k).coord, -2 * k);
  EXPECT_EQ(iterate(lm, Index::at(1), k).coord, 1 + 2 * k);
  EXPECT_EQ(iterate(SelfMap::parity_up(), Index::at(4), k + 1).coord, 5);
  EXPECT_EQ(iterate(SelfMap::successor(), Index::at(-3), k).coord, k - 3);
}

TEST(Iterate, FiniteTablesReduceModuloTheCycle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t n = 1 + rng() % 9;
    const auto entries = oracle::table_from_number(rng(), n);
    const SelfMap m = SelfMap::table(entries);
    const std::uint64_t start = rng() % n;
    // Oracle: walk the rho shape explicitly.
    std::vector<std::uint64_t> path{start};
    std::map<std::uint64_t, std::size_t> first;
    first[start] = 0;
    while (true) {
      const auto next = entries[path.back()];
      if (first.count(next)) break;
      first[next] = path.size();
      path.push_back(next);
    }
    const std::size_t mu = first[entries[path.back()]];
    const std::size_t lambda = path.size() - mu;
    const long long k = 1'000'000'007LL * static_cast<long long>(1 + rng() % 1000);
    const std::uint64_t expected = path[mu + static_cast<std::size_t>((k - static_cast<long long>(mu)) % static_cast<long long>(lambda))];
    ASSERT_EQ(iterate(m, Index::at(static_cast<Int>(start)), k).coord, static_cast<Int>(expected));
  }
}

TEST(ParityTranslationClass, RecognizesCatalogCompositions) {
  const auto lm = as_parity_translation(compose_maps(SelfMap::parity_up(), SelfMap::parity_down()));
  ASSERT_TRUE(lm.has_value());
  EXPECT_EQ(lm->even_shift, -2);
  EXPECT_EQ(lm->odd_shift, 2);
  const auto id = as_parity_translation(compose_maps(SelfMap::predecessor(), SelfMap::successor()));
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(id->even_shift, 0);
  EXPECT_EQ(id->odd_shift, 0);
  EXPECT_FALSE(as_parity_translation(SelfMap::square()).has_value());
  EXPECT_FALSE(as_parity_translation(SelfMap::table({1, 0})).has_value());
}

TEST(ParityTranslationClass, ShiftsMatchEvaluationOnRandomCompositions) {
  std::mt19937_64 rng(17);
  const std::vector<SelfMap> atoms{SelfMap::successor(), SelfMap::predecessor(), SelfMap::parity_up(),
                                   SelfMap::parity_down()};
  for (int trial = 0; trial < 200; ++trial) {
    SelfMap m = atoms[rng() % atoms.size()];
    const int depth = static_cast<int>(rng() % 5);
    for (int d = 0; d < depth; ++d) m = compose_maps(atoms[rng() % atoms.size()], m);
    const auto t = as_parity_translation(m);
    ASSERT_TRUE(t.has_value()) << m.describe();
    for (Int n = -6; n <= 6; ++n) ASSERT_EQ(t->apply(n), evaluate(m, Index::at(n)).coord) << m.describe();
  }
}
