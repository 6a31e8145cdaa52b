#pragma once

// Block-length sequences for the orbit-block layouts.

#include <string>
#include <vector>

#include "gshift/int128.hpp"

namespace gshift {

enum class BlockVariant { Plain, Weave };

std::string to_string(BlockVariant v);
BlockVariant parse_block_variant(const std::string& text);

struct BlockLengths {
  BlockVariant variant = BlockVariant::Plain;
  std::vector<BigInt> values;  // s_1..s_k

  std::size_t size() const { return values.size(); }
  const BigInt& s(std::size_t n) const;  // 1-based
  BigInt prefix_sum(std::size_t n) const;  // s_1 + ... + s_n
  // Horizon at the end of block n: the prefix sum, plus n(n-1)/2 source
  // symbols already interleaved in the weave variant.
  BigInt boundary(std::size_t n) const;

  friend bool operator==(const BlockLengths&, const BlockLengths&) = default;
};

// Minimal sequences: plain s_1 = 1, s_n = (n-1) S_{n-1} + 1;
// weave s_1 = 1, s_n = (n-1)(S_{n-1} + n(n-1)/2) + 1.
BlockLengths block_lengths(std::size_t k, BlockVariant variant);

// plain: s_n / S_n > (n-1)/n; weave: s_n / (S_n + n(n-1)/2) > (n-1)/n;
// plain additionally strictly increasing. Exact big-integer check.
bool block_lengths_valid(const BlockLengths& lengths);

// Block geometry along an orbit, 0-based positions, for every block whose
// start fits in the 128-bit budget. Weave blocks are followed by n
// interleaved source symbols. Lengths that overflow are saturated.
struct BlockLayout {
  BlockVariant variant = BlockVariant::Plain;
  std::vector<Int> starts;   // starts[n-1]: first position of block n
  std::vector<Int> lengths;  // lengths[n-1] = s_n

  struct Location {
    std::size_t block = 0;   // 1-based block number n
    bool in_block = true;    // false: inside the source segment after block n
    Int offset = 0;          // offset within the block or the source segment
  };
  // Throws BudgetExceeded past the last representable block.
  Location locate(Int position) const;
};

const BlockLayout& block_layout(BlockVariant variant);

}  // namespace gshift
