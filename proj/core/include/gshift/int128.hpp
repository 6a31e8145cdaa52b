#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace gshift {

// Coordinates, ranks, orbit positions and shift exponents all live in a
// checked 128-bit budget. Overflow raises BudgetExceeded instead of wrapping.
__extension__ typedef __int128 Int;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr Int kIntMax = static_cast<Int>(~static_cast<unsigned __int128>(0) >> 1);
inline constexpr Int kIntMin = -kIntMax - 1;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

std::string to_string(Int value);
std::optional<Int> parse_int(std::string_view text);

BigInt to_big(Int value);
// Throws BudgetExceeded if the value does not fit.
Int to_int(const BigInt& value);

// Exact rational from a decimal literal ("0.3", "-2", "1e-3") or a
// fraction ("3/10").
std::optional<Rational> parse_rational(std::string_view text);
std::string to_string(const Rational& value);

struct IntHash {
  std::size_t operator()(Int value) const noexcept {
    const auto bits = static_cast<unsigned __int128>(value);
    auto lo = static_cast<std::uint64_t>(bits);
    auto hi = static_cast<std::uint64_t>(bits >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL;
    h ^= hi + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace gshift
