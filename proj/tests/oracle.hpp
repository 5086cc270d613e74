#pragma once

// Test-only reference computations, kept independent of the library.

#include <array>
#include <bit>
#include <cstdint>
#include <string>

namespace sideways::oracle {

// Byte-table popcount; the table is filled by the recurrence
// c(v) = c(v >> 1) + (v & 1), not by any library routine.
inline unsigned table_popcount(std::uint64_t v) {
  static const auto table = [] {
    std::array<unsigned char, 256> t{};
    for (unsigned i = 1; i < 256; ++i) t[i] = static_cast<unsigned char>(t[i >> 1] + (i & 1U));
    return t;
  }();
  unsigned c = 0;
  for (; v != 0; v >>= 8) c += table[v & 0xFF];
  return c;
}

// Compiler builtin, a third independent route.
inline unsigned builtin_popcount(std::uint64_t v) { return static_cast<unsigned>(std::popcount(v)); }

inline std::string bits_msb_first(std::uint64_t v, unsigned width) {
  std::string s;
  for (unsigned i = width; i-- > 0;) s += ((v >> i) & 1U) ? '1' : '0';
  return s;
}

}  // namespace sideways::oracle
