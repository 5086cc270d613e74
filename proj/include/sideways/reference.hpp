#pragma once

#include <cstdint>

#include "sideways/error.hpp"
#include "sideways/word.hpp"

namespace sideways {

// Native popcounts for the richer operation sets (shift, addition,
// division). They are not programs of the restricted machine; they serve as
// second oracles and as reference rows in the bounds table.

/// Shift-and-add tree: sums adjacent 1-, 2-, 4-, ... bit fields.
/// Six rounds of word operations for 64-bit input.
constexpr unsigned broadword_popcount(std::uint64_t x) noexcept {
  x = (x & 0x5555555555555555ULL) + ((x >> 1) & 0x5555555555555555ULL);
  x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL);
  x = (x & 0x0F0F0F0F0F0F0F0FULL) + ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL);
  x = (x & 0x00FF00FF00FF00FFULL) + ((x >> 8) & 0x00FF00FF00FF00FFULL);
  x = (x & 0x0000FFFF0000FFFFULL) + ((x >> 16) & 0x0000FFFF0000FFFFULL);
  x = (x & 0x00000000FFFFFFFFULL) + (x >> 32);
  return static_cast<unsigned>(x);
}

inline unsigned broadword_popcount(Word x) noexcept { return broadword_popcount(x.value()); }

/// HAKMEM item 169: per-octal-digit counts, pairwise folding, then mod 63.
/// Valid for 32-bit words only.
constexpr unsigned hakmem_popcount(std::uint32_t n) noexcept {
  std::uint32_t t = n - ((n >> 1) & 033333333333U) - ((n >> 2) & 011111111111U);
  return static_cast<unsigned>(((t + (t >> 3)) & 030707070707U) % 63U);
}

inline unsigned hakmem_popcount(Word x) {
  if (x.width() != 32) {
    throw contract_error("hakmem_popcount requires a 32-bit word");
  }
  return hakmem_popcount(static_cast<std::uint32_t>(x.value()));
}

}  // namespace sideways
