#include "gshift/chaos_stats.hpp"

#include <algorithm>
#include <thread>

#include "gshift/errors.hpp"

namespace gshift {

namespace {

void require_same_domain(const SelfMap& map, const Configuration& x, const Configuration& y) {
  if (!(x.domain() == map.domain()) || !(y.domain() == map.domain())) {
    throw DomainMismatch("configurations and map live on different domains");
  }
}

// Images of the window under φ^i for consecutive i, advanced one step at a time.
class WindowCursor {
 public:
  WindowCursor(const SelfMap& map, const Window& window, Int start) : map_(map) {
    images_.reserve(window.size());
    for (const auto& i : window) images_.push_back(iterate(map, i, start));
  }

  bool agree(const Configuration& x, const Configuration& y) const {
    for (const auto& i : images_) {
      if (x.symbol_at(i) != y.symbol_at(i)) return false;
    }
    return true;
  }

  void advance() {
    for (auto& i : images_) i = evaluate(map_, i);
  }

 private:
  const SelfMap& map_;
  std::vector<Index> images_;
};

}  // namespace

Int zeta_count_range(const SelfMap& map, const Configuration& x, const Configuration& y, const Window& window,
                     Int begin, Int end) {
  require_same_domain(map, x, y);
  validate_window(map.domain(), window, true);
  if (begin < 0 || end < begin) throw InvalidArgument("invalid shift range");
  if (begin == end) return 0;
  WindowCursor cursor(map, window, begin);
  Int count = 0;
  for (Int i = begin; i < end; ++i) {
    if (cursor.agree(x, y)) ++count;
    if (i + 1 < end) cursor.advance();
  }
  return count;
}

Int zeta_count(const SelfMap& map, const Configuration& x, const Configuration& y, const Window& window, Int n) {
  if (n < 1) throw InvalidArgument("horizon must be at least 1");
  return zeta_count_range(map, x, y, window, 0, n);
}

Int zeta_count_parallel(const SelfMap& map, const Configuration& x, const Configuration& y, const Window& window,
                        Int n, unsigned threads) {
  if (n < 1) throw InvalidArgument("horizon must be at least 1");
  threads = std::max(1U, threads);
  if (threads == 1) return zeta_count(map, x, y, window, n);
  std::vector<Int> partial(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  const Int chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const Int begin = std::min(n, chunk * t);
    const Int end = std::min(n, begin + chunk);
    workers.emplace_back([&, t, begin, end] {
      try {
        partial[t] = zeta_count_range(map, x, y, window, begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Int total = 0;
  for (Int p : partial) total += p;
  return total;
}

XiCount xi_count_detailed(const SelfMap& map, const Configuration& x, const Configuration& y, const Rational& t, Int n,
                          Int depth_cap) {
  require_same_domain(map, x, y);
  if (t <= 0) throw InvalidArgument("threshold must be positive");
  if (n < 1) throw InvalidArgument("horizon must be at least 1");
  const BigInt t_num = boost::multiprecision::numerator(t);
  const BigInt t_den = boost::multiprecision::denominator(t);
  const auto size = map.domain().size();
  const Int depth_limit = size ? std::min(*size, depth_cap) : depth_cap;

  std::vector<Index> ranks;
  for (Int r = 1; r <= depth_limit; ++r) ranks.push_back(enumerate(map.domain(), r));

  XiCount out;
  for (Int i = 0; i < n; ++i) {
    // Distance partial sum P / 2^m after m ranks; the tail is below 2^{-m}
    // unless every later rank differs.
    BigInt partial = 0;
    BigInt scale = 1;
    bool decided = false;
    bool close = false;
    for (Int m = 1; m <= depth_limit; ++m) {
      const Index j = iterate(map, ranks[static_cast<std::size_t>(m - 1)], i);
      partial <<= 1;
      scale <<= 1;
      if (x.symbol_at(j) != y.symbol_at(j)) partial += 1;
      if (partial * t_den >= t_num * scale) {
        decided = true;
        break;
      }
      const bool exhausted = size && m == *size;
      if ((exhausted ? partial : BigInt(partial + 1)) * t_den < t_num * scale) {
        decided = true;
        close = true;
        break;
      }
      if (exhausted) {
        decided = true;
        break;
      }
    }
    if (!decided) ++out.undecided;
    else if (close) ++out.close;
  }
  return out;
}

Int xi_count(const SelfMap& map, const Configuration& x, const Configuration& y, const Rational& t, Int n,
             Int depth_cap) {
  return xi_count_detailed(map, x, y, t, n, depth_cap).close;
}

void Schedule::validate() const {
  if (horizons.empty()) throw InvalidArgument("schedule needs at least one horizon");
  if (horizons.front() < 1) throw InvalidArgument("schedule horizons must be positive");
  for (std::size_t k = 1; k < horizons.size(); ++k) {
    if (horizons[k] <= horizons[k - 1]) throw InvalidArgument("schedule horizons must be strictly increasing");
  }
  if (!labels.empty() && labels.size() != horizons.size()) throw InvalidArgument("one label per horizon");
}

Schedule explicit_schedule(std::vector<Int> horizons) {
  Schedule s;
  s.horizons = std::move(horizons);
  s.validate();
  return s;
}

Schedule block_boundary_schedule(BlockVariant variant, std::size_t max_block) {
  const BlockLengths lengths = block_lengths(max_block, variant);
  Schedule s;
  for (std::size_t r = 1; r <= max_block; ++r) {
    s.horizons.push_back(to_int(lengths.boundary(r)));
    s.labels.push_back("r=" + std::to_string(r));
  }
  s.validate();
  return s;
}

DensityProfile density_profile(const SelfMap& map, const Configuration& x, const Configuration& y, const Window& window,
                               const Schedule& schedule) {
  require_same_domain(map, x, y);
  validate_window(map.domain(), window, true);
  schedule.validate();
  DensityProfile out;
  WindowCursor cursor(map, window, 0);
  Int count = 0;
  std::size_t next = 0;
  const Int last = schedule.last();
  for (Int i = 0; i < last; ++i) {
    if (cursor.agree(x, y)) ++count;
    if (i + 1 == schedule.horizons[next]) {
      DensityPoint point;
      point.n = i + 1;
      point.count = count;
      point.fraction = Rational(to_big(count), to_big(i + 1));
      point.running_min = out.points.empty() ? point.fraction : std::min(out.points.back().running_min, point.fraction);
      point.running_max = out.points.empty() ? point.fraction : std::max(out.points.back().running_max, point.fraction);
      out.points.push_back(point);
      ++next;
    }
    if (i + 1 < last) cursor.advance();
  }
  return out;
}

PairVerdict dc_pair_report(const SelfMap& map, const Configuration& x, const Configuration& y,
                           const std::vector<Window>& windows, const Schedule& schedule, const Rational& eps_low,
                           const Rational& eps_high) {
  if (windows.empty()) throw InvalidArgument("dc_pair_report needs at least one window");
  PairVerdict v;
  v.eps_low = eps_low;
  v.eps_high = eps_high;
  v.horizon = schedule.last();
  for (const auto& w : windows) v.profiles.push_back(density_profile(map, x, y, w, schedule));

  const Rational high = Rational(1) - eps_high;
  const Rational relaxed_low = std::max(eps_low, Rational(1) - eps_low);
  bool all_high = true;
  std::optional<std::size_t> low_strict;
  std::optional<std::size_t> low_relaxed;
  for (std::size_t k = 0; k < v.profiles.size(); ++k) {
    const auto& p = v.profiles[k];
    if (p.max() < high) all_high = false;
    if (!low_strict && p.min() <= eps_low) low_strict = k;
    if (!low_relaxed && p.min() <= relaxed_low) low_relaxed = k;
  }
  v.dc1 = all_high && low_strict.has_value();
  v.dc2 = all_high && low_relaxed.has_value();
  v.witnessing_window = v.dc1 ? low_strict : low_relaxed;
  return v;
}

std::string ProofBoundResult::describe() const {
  return std::string(agreement ? "agreement" : "disagreement") + " at n=" + to_string(horizon) + ": count " +
         to_string(count) + (agreement ? " >= " : " <= ") + to_string(bound) + (holds ? " holds" : " FAILS");
}

void validate_orbit_window(const SelfMap& map, const Index& theta, const Window& window, Int radius) {
  validate_window(map.domain(), window, true);
  if (radius < 0) throw InvalidArgument("radius must be nonnegative");
  for (const auto& i : window) {
    bool ok = false;
    Index forward = theta;
    for (Int k = 0; k <= radius && !ok; ++k) {
      if (forward == i) ok = true;
      if (k < radius) forward = evaluate(map, forward);
    }
    Index backward = i;
    for (Int l = 1; l <= radius && !ok; ++l) {
      backward = evaluate(map, backward);
      if (backward == theta) ok = true;
    }
    if (!ok) {
      throw InvalidArgument("window index " + to_string(i) + " is not within orbit radius " + to_string(radius) +
                            " of " + to_string(theta));
    }
  }
}

ProofBoundResult proof_bound_check_dc(const DcFamilyParams& params, std::size_t r) {
  if (r < 1 || r > params.lengths.size()) throw InvalidArgument("block r is outside the given block lengths");
  const Int rr = static_cast<Int>(r);
  const bool in_a = params.a.contains(rr);
  const bool in_b = params.b.contains(rr);
  if (!in_a && !in_b) throw InvalidArgument("block " + std::to_string(r) + " belongs to neither member set");

  const BlockVariant variant = params.lengths.variant;
  if (!(params.lengths == block_lengths(params.lengths.size(), variant))) {
    throw InvalidArgument("block lengths do not follow the layout recurrence");
  }
  auto make = [&](const MemberSet& members) {
    OrbitBlocksSpec spec{params.map, {params.theta}, variant, members, params.p, params.q, params.source};
    return Configuration::orbit_blocks(spec);
  };
  const Configuration x = make(params.a);
  const Configuration y = make(params.b);

  ProofBoundResult out;
  out.horizon = to_int(params.lengths.boundary(r));
  const Int s_r = to_int(params.lengths.s(r));
  if (in_a && in_b) {
    validate_orbit_window(params.map, params.theta, params.window, params.radius);
    out.agreement = true;
    const Int slack = variant == BlockVariant::Plain ? 4 * params.radius : 2 * params.radius;
    out.bound = s_r - slack - 1;
    out.count = zeta_count(params.map, x, y, params.window, out.horizon);
    out.holds = out.count >= out.bound;
  } else {
    out.agreement = false;
    out.bound = out.horizon - s_r + 1;
    out.count = zeta_count(params.map, x, y, Window{params.theta}, out.horizon);
    out.holds = out.count <= out.bound;
  }
  return out;
}

}  // namespace gshift
