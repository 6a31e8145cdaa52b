#pragma once

// Counting statistics ξ and ζ over the shift orbit of a configuration pair,
// finite-horizon density profiles, and checks of the exact inequalities
// behind the scrambled-family constructions.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gshift/block_lengths.hpp"
#include "gshift/config_space.hpp"
#include "gshift/member_set.hpp"

namespace gshift {

// #{ i in [0, n) : σ^i x and σ^i y agree on the window }.
Int zeta_count(const SelfMap& map, const Configuration& x, const Configuration& y, const Window& window, Int n);
// Same count restricted to shifts i in [begin, end).
Int zeta_count_range(const SelfMap& map, const Configuration& x, const Configuration& y, const Window& window,
                     Int begin, Int end);
// zeta_count split into `threads` contiguous ranges counted concurrently.
Int zeta_count_parallel(const SelfMap& map, const Configuration& x, const Configuration& y, const Window& window,
                        Int n, unsigned threads);

struct XiCount {
  Int close = 0;      // shifts proven to satisfy d < t
  Int undecided = 0;  // shifts not decided within the depth cap (not counted)
};

// #{ i in [0, n) : d(σ^i x, σ^i y) < t } with exact dyadic comparisons.
// Each distance is refined rank by rank until the comparison is decided; a
// shift still open at `depth_cap` ranks is not counted.
XiCount xi_count_detailed(const SelfMap& map, const Configuration& x, const Configuration& y, const Rational& t, Int n,
                          Int depth_cap = 128);
Int xi_count(const SelfMap& map, const Configuration& x, const Configuration& y, const Rational& t, Int n,
             Int depth_cap = 128);

struct Schedule {
  std::vector<Int> horizons;
  std::vector<std::string> labels;

  void validate() const;  // strictly increasing positive horizons
  Int last() const { return horizons.back(); }
};

Schedule explicit_schedule(std::vector<Int> horizons);
// Horizons at the end of blocks 1..max_block.
Schedule block_boundary_schedule(BlockVariant variant, std::size_t max_block);

struct DensityPoint {
  Int n = 0;
  Int count = 0;
  Rational fraction;
  Rational running_min;
  Rational running_max;
};

struct DensityProfile {
  std::vector<DensityPoint> points;

  const Rational& min() const { return points.back().running_min; }
  const Rational& max() const { return points.back().running_max; }
};

// One pass over shifts up to the last horizon.
DensityProfile density_profile(const SelfMap& map, const Configuration& x, const Configuration& y, const Window& window,
                               const Schedule& schedule);

struct PairVerdict {
  bool dc1 = false;
  bool dc2 = false;
  std::optional<std::size_t> witnessing_window;  // window whose running minimum is low
  Rational eps_low;
  Rational eps_high;
  Int horizon = 0;
  std::vector<DensityProfile> profiles;  // one per window
};

// dc1: some window's running minimum <= eps_low and every window's running
// maximum >= 1 - eps_high. dc2: the same with the low condition relaxed to
// min <= max(eps_low, 1 - eps_low).
PairVerdict dc_pair_report(const SelfMap& map, const Configuration& x, const Configuration& y,
                           const std::vector<Window>& windows, const Schedule& schedule, const Rational& eps_low,
                           const Rational& eps_high);

struct DcFamilyParams {
  SelfMap map;
  Index theta;
  BlockLengths lengths;  // plain or weave; must cover block r
  MemberSet a;
  MemberSet b;
  Window window;  // within orbit radius `radius` of θ
  Int radius = 0;
  Symbol p = 0;
  Symbol q = 1;
  std::shared_ptr<const Configuration> source;  // weave only
};

struct ProofBoundResult {
  bool holds = false;
  bool agreement = false;  // true: r in A∩B lower bound; false: r in A△B upper bound
  Int horizon = 0;
  Int count = 0;
  Int bound = 0;
  std::string describe() const;
};

// Checks that every window index is φ^k(θ) for some 0 <= k <= radius, or
// satisfies φ^l(ι) = θ for some 1 <= l <= radius. Throws InvalidArgument.
void validate_orbit_window(const SelfMap& map, const Index& theta, const Window& window, Int radius);

// Plain layout. r in A∩B: count on the window at n_r = S_r is at least
// s_r - 4N - 1. r in exactly one of A, B: count on {θ} at n_r is at most
// n_r - s_r + 1. Weave layout: horizon S_r + r(r-1)/2 and agreement bound
// s_r - 2N - 1. r in neither set is rejected.
ProofBoundResult proof_bound_check_dc(const DcFamilyParams& params, std::size_t r);

}  // namespace gshift
