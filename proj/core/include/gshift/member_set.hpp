#pragma once

// Infinite subsets of the naturals with O(1)-ish membership: unions of
// prime-power sets {b^e : e >= 1}, optionally all evens, plus explicit extras.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gshift/int128.hpp"

namespace gshift {

class MemberSet {
 public:
  MemberSet() = default;

  static MemberSet powers_of(std::uint64_t base);
  static MemberSet evens();
  static MemberSet explicit_members(std::set<Int> members);

  MemberSet with_evens() const;
  MemberSet united(const MemberSet& other) const;

  bool contains(Int n) const;
  std::vector<Int> members_up_to(Int bound) const;

  const std::vector<std::uint64_t>& power_bases() const { return bases_; }
  bool includes_evens() const { return evens_; }
  const std::set<Int>& extras() const { return extras_; }

  std::string describe() const;

  friend bool operator==(const MemberSet&, const MemberSet&) = default;

 private:
  std::vector<std::uint64_t> bases_;  // sorted, distinct, each >= 2
  bool evens_ = false;
  std::set<Int> extras_;
};

struct AlmostDisjointFamily {
  bool augmented = false;
  std::vector<MemberSet> members;
};

// k >= 2 sets A_j = powers of the j-th odd prime (3, 5, 7, 11, ...); when
// augmented, each member is A_j united with the even naturals.
AlmostDisjointFamily almost_disjoint_family(std::size_t k, bool augmented = true);

std::uint64_t nth_odd_prime(std::size_t j);  // 1-based: 3, 5, 7, ...

}  // namespace gshift
