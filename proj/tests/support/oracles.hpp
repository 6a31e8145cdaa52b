#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's algorithms; inputs and outputs use
// plain integers so the oracles can be read on their own.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;

struct TableFacts {
  bool injective = false;
  bool has_periodic = false;
  bool has_nqp = false;  // always false on a finite set
};

// Walks each point's forward orbit with an explicit visited set.
inline TableFacts table_facts(const std::vector<std::uint64_t>& f) {
  TableFacts out;
  std::vector<std::uint64_t> sorted(f);
  std::sort(sorted.begin(), sorted.end());
  out.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  for (std::uint64_t start = 0; start < f.size(); ++start) {
    std::uint64_t x = f[start];
    for (std::size_t steps = 0; steps < f.size(); ++steps) {
      if (x == start) {
        out.has_periodic = true;
        break;
      }
      x = f[x];
    }
    std::set<std::uint64_t> seen;
    x = start;
    while (seen.insert(x).second) x = f[x];
    if (seen.size() > f.size()) out.has_nqp = true;
  }
  return out;
}

// Mixed-radix decoding of a table number in [0, n^n).
inline std::vector<std::uint64_t> table_from_number(std::uint64_t code, std::uint64_t n) {
  std::vector<std::uint64_t> out(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out[i] = code % n;
    code /= n;
  }
  return out;
}

// Smallest s with n*s > (n-1)*(sum + s + extra), found by doubling and bisection.
inline Big minimal_block(std::size_t n, const Big& sum, const Big& extra) {
  auto ok = [&](const Big& s) { return Big(n) * s > Big(n - 1) * (sum + s + extra); };
  Big hi = 1;
  while (!ok(hi)) hi *= 2;
  Big lo = 0;  // not ok
  while (hi - lo > 1) {
    Big mid = (lo + hi) / 2;
    if (ok(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

inline std::vector<Big> block_lengths(std::size_t k, bool weave) {
  std::vector<Big> out;
  Big sum = 0;
  for (std::size_t n = 1; n <= k; ++n) {
    const Big extra = weave ? Big(n * (n - 1) / 2) : Big(0);
    out.push_back(minimal_block(n, sum, extra));
    sum += out.back();
  }
  return out;
}

// Canonical integer enumeration: 0, 1, -1, 2, -2, ...
inline long long integer_at_rank(long long rank) { return rank % 2 == 0 ? rank / 2 : -(rank / 2); }
inline long long rank_of_integer(long long z) { return z > 0 ? 2 * z : 1 - 2 * z; }

// Concatenation of every word over {0..a-1}, by length then lexicographically.
inline std::vector<int> transitive_prefix(int a, std::size_t length) {
  std::vector<int> out;
  for (std::size_t len = 1; out.size() < length; ++len) {
    std::vector<int> word(len, 0);
    while (true) {
      out.insert(out.end(), word.begin(), word.end());
      if (out.size() >= length) break;
      std::size_t i = len;
      while (i > 0 && word[i - 1] == a - 1) word[--i] = 0;
      if (i == 0) break;
      ++word[i - 1];
    }
  }
  out.resize(length);
  return out;
}

// Membership in "positive powers of base (b, b^2, ...) plus optionally the evens".
inline bool member(long long n, long long base, bool evens) {
  if (evens && n % 2 == 0) return true;
  long long p = base;
  while (p < n) p *= base;
  return p == n;
}

// Symbol at orbit position k >= 0 of the successor orbit from 0 under the
// plain layout: block r spans positions [S_{r-1}, S_r).
struct PlainSuccessorLayout {
  std::vector<long long> ends;  // S_1, S_2, ...
  long long base;
  bool evens;

  int symbol(long long coordinate) const {  // 0 = p, 1 = q
    if (coordinate < 0) return 1;
    for (std::size_t r = 0; r < ends.size(); ++r) {
      if (coordinate < ends[r]) return member(static_cast<long long>(r + 1), base, evens) ? 0 : 1;
    }
    return -1;  // beyond the oracle's table
  }
};

inline PlainSuccessorLayout plain_layout(std::size_t blocks, long long base, bool evens) {
  PlainSuccessorLayout out{{}, base, evens};
  const auto s = block_lengths(blocks, false);
  long long total = 0;
  for (const auto& v : s) {
    total += static_cast<long long>(v);
    out.ends.push_back(total);
  }
  return out;
}

// #{ i < n : every window coordinate w + i carries equal symbols }.
template <typename X, typename Y>
long long successor_zeta(const X& x, const Y& y, const std::vector<long long>& window, long long n) {
  long long count = 0;
  for (long long i = 0; i < n; ++i) {
    bool agree = true;
    for (long long w : window) agree = agree && x(w + i) == y(w + i);
    if (agree) ++count;
  }
  return count;
}

// Weave layout along the successor orbit of 0: block r (s_r symbols of the
// member's block symbol) followed by source symbols t_0 .. t_{r-1}.
inline std::vector<int> weave_successor_prefix(std::size_t blocks, long long base, bool evens,
                                               const std::vector<int>& source) {
  const auto s = block_lengths(blocks, true);
  std::vector<int> out;
  for (std::size_t r = 1; r <= blocks; ++r) {
    const int z = member(static_cast<long long>(r), base, evens) ? 0 : 1;
    out.insert(out.end(), static_cast<std::size_t>(s[r - 1]), z);
    for (std::size_t k = 0; k < r; ++k) out.push_back(source[k]);
  }
  return out;
}

}  // namespace oracle
