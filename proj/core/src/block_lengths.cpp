#include "gshift/block_lengths.hpp"

#include <algorithm>

#include "gshift/errors.hpp"

namespace gshift {

std::string to_string(BlockVariant v) { return v == BlockVariant::Plain ? "plain" : "weave"; }

BlockVariant parse_block_variant(const std::string& text) {
  if (text == "plain") return BlockVariant::Plain;
  if (text == "weave") return BlockVariant::Weave;
  throw InvalidArgument("unknown block-length variant '" + text + "'");
}

const BigInt& BlockLengths::s(std::size_t n) const {
  if (n < 1 || n > values.size()) throw InvalidArgument("block index out of range");
  return values[n - 1];
}

BigInt BlockLengths::prefix_sum(std::size_t n) const {
  if (n > values.size()) throw InvalidArgument("block index out of range");
  BigInt total = 0;
  for (std::size_t i = 0; i < n; ++i) total += values[i];
  return total;
}

BigInt BlockLengths::boundary(std::size_t n) const {
  BigInt out = prefix_sum(n);
  if (variant == BlockVariant::Weave) out += BigInt(n) * BigInt(n - 1) / 2;
  return out;
}

BlockLengths block_lengths(std::size_t k, BlockVariant variant) {
  if (k < 1) throw InvalidArgument("block_lengths needs k >= 1");
  BlockLengths out;
  out.variant = variant;
  BigInt sum = 0;
  for (std::size_t n = 1; n <= k; ++n) {
    BigInt base = sum;
    if (variant == BlockVariant::Weave) base += BigInt(n) * BigInt(n - 1) / 2;
    BigInt s = BigInt(n - 1) * base + 1;
    out.values.push_back(s);
    sum += s;
  }
  return out;
}

bool block_lengths_valid(const BlockLengths& lengths) {
  BigInt sum = 0;
  for (std::size_t n = 1; n <= lengths.values.size(); ++n) {
    const BigInt& s = lengths.values[n - 1];
    if (s < 1) return false;
    sum += s;
    BigInt denominator = sum;
    if (lengths.variant == BlockVariant::Weave) denominator += BigInt(n) * BigInt(n - 1) / 2;
    // s / denominator > (n-1)/n  <=>  n s > (n-1) denominator
    if (!(BigInt(n) * s > BigInt(n - 1) * denominator)) return false;
    if (lengths.variant == BlockVariant::Plain && n > 1 && !(s > lengths.values[n - 2])) return false;
  }
  return true;
}

namespace {

BlockLayout compute_layout(BlockVariant variant) {
  const BigInt limit = to_big(kIntMax);
  BlockLayout out;
  out.variant = variant;
  BigInt sum = 0;
  for (std::size_t n = 1;; ++n) {
    // Block n begins after S_{n-1} block symbols and, in the weave, after
    // 1 + 2 + ... + (n-1) interleaved source symbols.
    BigInt start = sum;
    if (variant == BlockVariant::Weave) start += BigInt(n) * BigInt(n - 1) / 2;
    if (start > limit) break;
    const BigInt s = BigInt(n - 1) * start + 1;
    out.starts.push_back(to_int(start));
    out.lengths.push_back(s > limit ? kIntMax : to_int(s));
    sum += s;
  }
  return out;
}

}  // namespace

BlockLayout::Location BlockLayout::locate(Int position) const {
  if (position < 0) throw InvalidArgument("orbit positions are nonnegative");
  auto it = std::upper_bound(starts.begin(), starts.end(), position);
  const std::size_t n = static_cast<std::size_t>(it - starts.begin());
  const Int offset = position - starts[n - 1];
  const Int length = lengths[n - 1];
  if (offset < length) return Location{n, true, offset};
  if (it == starts.end() && (variant == BlockVariant::Plain || offset - length >= static_cast<Int>(n))) {
    throw BudgetExceeded("orbit position beyond the last representable block");
  }
  return Location{n, false, offset - length};
}

const BlockLayout& block_layout(BlockVariant variant) {
  static const BlockLayout plain = compute_layout(BlockVariant::Plain);
  static const BlockLayout weave = compute_layout(BlockVariant::Weave);
  return variant == BlockVariant::Plain ? plain : weave;
}

}  // namespace gshift
