#include <benchmark/benchmark.h>

#include <gshift/chaos_stats.hpp>
#include <gshift/constructors.hpp>
#include <gshift/orbit_analysis.hpp>

using namespace gshift;

namespace {

std::vector<Configuration> successor_family(std::size_t k) {
  return dc_family(ScrambledFamilySpec{SelfMap::successor(), {Index::at(0)}, Alphabet{}, BlockVariant::Plain,
                                       almost_disjoint_family(k)});
}

std::vector<std::uint64_t> table_from_code(std::uint64_t code) {
  std::vector<std::uint64_t> out(6);
  for (auto& e : out) {
    e = code % 6;
    code /= 6;
  }
  return out;
}

}  // namespace

// ζ over blocks 1..r of the plain layout, one window of radius 1.
static void BM_ZetaCountPhi1(benchmark::State& state) {
  const auto family = successor_family(2);
  const Window w{Index::at(-1), Index::at(0), Index::at(1)};
  const Int n = block_boundary_schedule(BlockVariant::Plain, static_cast<std::size_t>(state.range(0))).last();
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta_count(SelfMap::successor(), family[0], family[1], w, n));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ZetaCountPhi1)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

static void BM_ZetaCountParallel(benchmark::State& state) {
  const auto family = successor_family(2);
  const Window w{Index::at(0)};
  const Int n = block_boundary_schedule(BlockVariant::Plain, 8).last();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        zeta_count_parallel(SelfMap::successor(), family[0], family[1], w, n, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_ZetaCountParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

// Uncached lookups far along the orbit, where block location dominates.
static void BM_OrbitBlockSymbol(benchmark::State& state) {
  const auto family = successor_family(2);
  Int c = 1;
  for (auto _ : state) {
    c = (c * 6364136223846793005LL + 1442695040888963407LL) % 1000000007;
    benchmark::DoNotOptimize(family[0].symbol_at_uncached(Index::at(c)));
  }
}
BENCHMARK(BM_OrbitBlockSymbol);

static void BM_MapProfileTables(benchmark::State& state) {
  std::uint64_t code = 0;
  for (auto _ : state) {
    const SelfMap m = SelfMap::table(table_from_code(code));
    benchmark::DoNotOptimize(map_profile(m));
    code = (code + 7919) % 46656;
  }
}
BENCHMARK(BM_MapProfileTables);

static void BM_PatternEnumeration(benchmark::State& state) {
  const PatternEnumeration e(Domain::integers(), 2);
  const Int count = e.count_up_to(state.range(0));
  Int r = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.rank_of(e.pattern(r)));
    r = r % count + 1;
  }
}
BENCHMARK(BM_PatternEnumeration)->Arg(4)->Arg(10);

static void BM_XiCount(benchmark::State& state) {
  const auto family = successor_family(2);
  const Rational t(1, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(xi_count(SelfMap::successor(), family[0], family[1], t, 10000));
  }
}
BENCHMARK(BM_XiCount)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
