#include "gshift/member_set.hpp"

#include <algorithm>

#include "gshift/errors.hpp"

namespace gshift {

MemberSet MemberSet::powers_of(std::uint64_t base) {
  if (base < 2) throw InvalidArgument("power base must be at least 2");
  MemberSet out;
  out.bases_.push_back(base);
  return out;
}

MemberSet MemberSet::evens() {
  MemberSet out;
  out.evens_ = true;
  return out;
}

MemberSet MemberSet::explicit_members(std::set<Int> members) {
  for (Int m : members) {
    if (m < 1) throw InvalidArgument("member sets hold positive naturals only");
  }
  MemberSet out;
  out.extras_ = std::move(members);
  return out;
}

MemberSet MemberSet::with_evens() const {
  MemberSet out = *this;
  out.evens_ = true;
  return out;
}

MemberSet MemberSet::united(const MemberSet& other) const {
  MemberSet out = *this;
  for (auto b : other.bases_) {
    if (std::find(out.bases_.begin(), out.bases_.end(), b) == out.bases_.end()) out.bases_.push_back(b);
  }
  std::sort(out.bases_.begin(), out.bases_.end());
  out.evens_ = evens_ || other.evens_;
  out.extras_.insert(other.extras_.begin(), other.extras_.end());
  return out;
}

bool MemberSet::contains(Int n) const {
  if (n < 1) return false;
  if (evens_ && n % 2 == 0) return true;
  if (extras_.count(n) != 0) return true;
  for (auto b : bases_) {
    const Int base = static_cast<Int>(b);
    Int x = n;
    if (x % base != 0) continue;
    while (x % base == 0) x /= base;
    if (x == 1) return true;
  }
  return false;
}

std::vector<Int> MemberSet::members_up_to(Int bound) const {
  std::set<Int> out;
  if (evens_) {
    for (Int n = 2; n <= bound; n += 2) out.insert(n);
  }
  for (Int e : extras_) {
    if (e <= bound) out.insert(e);
  }
  for (auto b : bases_) {
    const Int base = static_cast<Int>(b);
    for (Int x = base; x <= bound; x *= base) {
      out.insert(x);
      if (x > bound / base) break;
    }
  }
  return {out.begin(), out.end()};
}

std::string MemberSet::describe() const {
  std::string out;
  auto add = [&](const std::string& part) {
    if (!out.empty()) out += " | ";
    out += part;
  };
  for (auto b : bases_) add("powers(" + std::to_string(b) + ")");
  if (evens_) add("evens");
  if (!extras_.empty()) {
    std::string list;
    for (Int e : extras_) list += (list.empty() ? "" : ",") + to_string(e);
    add("{" + list + "}");
  }
  return out.empty() ? "{}" : out;
}

std::uint64_t nth_odd_prime(std::size_t j) {
  if (j < 1) throw InvalidArgument("odd primes are indexed from 1");
  std::size_t found = 0;
  for (std::uint64_t n = 3;; n += 2) {
    bool prime = true;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime && ++found == j) return n;
  }
}

AlmostDisjointFamily almost_disjoint_family(std::size_t k, bool augmented) {
  if (k < 2) throw InvalidArgument("almost_disjoint_family needs k >= 2");
  AlmostDisjointFamily out;
  out.augmented = augmented;
  for (std::size_t j = 1; j <= k; ++j) {
    MemberSet a = MemberSet::powers_of(nth_odd_prime(j));
    out.members.push_back(augmented ? a.with_evens() : a);
  }
  return out;
}

}  // namespace gshift
