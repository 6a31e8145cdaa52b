#include "gshift/int128.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "gshift/errors.hpp"

namespace gshift {

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw BudgetExceeded("coordinate arithmetic overflow in addition");
  return out;
}

Int checked_sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) throw BudgetExceeded("coordinate arithmetic overflow in subtraction");
  return out;
}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw BudgetExceeded("coordinate arithmetic overflow in multiplication");
  return out;
}

std::string to_string(Int value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  auto magnitude = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1 : static_cast<unsigned __int128>(value);
  std::string digits;
  while (magnitude != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::optional<Int> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) return std::nullopt;
  Int value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    const Int digit = text[i] - '0';
    if (__builtin_mul_overflow(value, Int{10}, &value)) return std::nullopt;
    if (__builtin_sub_overflow(value, digit, &value)) return std::nullopt;  // accumulate negatively
  }
  if (!negative) {
    if (value == kIntMin) return std::nullopt;
    value = -value;
  }
  return value;
}

BigInt to_big(Int value) {
  const bool negative = value < 0;
  auto magnitude = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1 : static_cast<unsigned __int128>(value);
  BigInt out = static_cast<std::uint64_t>(magnitude >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(magnitude);
  return negative ? BigInt(-out) : out;
}

Int to_int(const BigInt& value) {
  static const BigInt upper = to_big(kIntMax);
  static const BigInt lower = to_big(kIntMin);
  if (value > upper || value < lower) throw BudgetExceeded("value exceeds the 128-bit coordinate budget");
  const bool negative = value < 0;
  BigInt magnitude = negative ? BigInt(-value) : value;
  const auto lo = static_cast<std::uint64_t>(magnitude & BigInt(0xFFFFFFFFFFFFFFFFULL));
  const auto hi = static_cast<std::uint64_t>(magnitude >> 64);
  auto bits = (static_cast<unsigned __int128>(hi) << 64) | lo;
  return negative ? static_cast<Int>(-bits) : static_cast<Int>(bits);
}

std::optional<Rational> parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(to_big(*num), to_big(*den));
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_value = parse_int(text.substr(e + 1));
    if (!exp_value || *exp_value > 4000 || *exp_value < -4000) return std::nullopt;
    exponent = static_cast<long>(*exp_value);
    mantissa = text.substr(0, e);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  BigInt digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    any_digit = true;
    digits = digits * 10 + (c - '0');
    if (seen_point) --exponent;
  }
  if (!any_digit) return std::nullopt;
  BigInt scale = 1;
  for (long k = 0; k < std::abs(exponent); ++k) scale *= 10;
  Rational out = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace gshift
