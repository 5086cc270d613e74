#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sideways/error.hpp"

namespace sideways {

/// An unsigned machine word of fixed width n (1 <= n <= 64).
///
/// The stored value is always reduced modulo 2^n; binary operations require
/// both operands to have the same width. Words are immutable values.
class Word {
 public:
  static constexpr unsigned kMaxWidth = 64;

  constexpr Word(unsigned width, std::uint64_t value)
      : width_(checked_width(width)), value_(value & mask_for(width)) {}

  static constexpr Word zero(unsigned width) { return Word(width, 0); }
  static constexpr Word ones(unsigned width) { return Word(width, ~std::uint64_t{0}); }

  /// Parses an MSB-first bit string such as "101111" (width 6, value 47).
  static Word from_bits(std::string_view bits) {
    if (bits.empty() || bits.size() > kMaxWidth) {
      throw contract_error("bit string length must be in 1..64");
    }
    std::uint64_t v = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') {
        throw contract_error("bit string may only contain '0' and '1'");
      }
      v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Word(static_cast<unsigned>(bits.size()), v);
  }

  constexpr unsigned width() const noexcept { return width_; }
  constexpr std::uint64_t value() const noexcept { return value_; }
  constexpr std::uint64_t mask() const noexcept { return mask_for(width_); }
  constexpr bool is_zero() const noexcept { return value_ == 0; }
  constexpr bool is_ones() const noexcept { return value_ == mask(); }

  /// MSB-first rendering, always exactly width() characters.
  std::string to_bits() const {
    std::string s(width_, '0');
    for (unsigned i = 0; i < width_; ++i) {
      if ((value_ >> (width_ - 1 - i)) & 1U) s[i] = '1';
    }
    return s;
  }

  friend constexpr bool operator==(const Word&, const Word&) = default;

  static constexpr std::uint64_t mask_for(unsigned width) noexcept {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }

 private:
  static constexpr unsigned checked_width(unsigned width) {
    if (width < 1 || width > kMaxWidth) {
      throw contract_error("word width must be in 1..64, got " + std::to_string(width));
    }
    return width;
  }

  unsigned width_;
  std::uint64_t value_;
};

/// Ground-truth population count: inspects every bit position in turn.
inline unsigned popcount_naive(Word x) noexcept {
  unsigned count = 0;
  for (unsigned i = 0; i < x.width(); ++i) {
    count += static_cast<unsigned>((x.value() >> i) & 1U);
  }
  return count;
}

inline Word wrap_inc(Word x) noexcept { return Word(x.width(), x.value() + 1); }
inline Word wrap_dec(Word x) noexcept { return Word(x.width(), x.value() - 1); }

namespace detail {
inline void require_same_width(Word a, Word b) {
  if (a.width() != b.width()) {
    throw contract_error("width mismatch: " + std::to_string(a.width()) + " vs " +
                         std::to_string(b.width()));
  }
}
}  // namespace detail

inline Word bit_and(Word a, Word b) {
  detail::require_same_width(a, b);
  return Word(a.width(), a.value() & b.value());
}

inline Word bit_or(Word a, Word b) {
  detail::require_same_width(a, b);
  return Word(a.width(), a.value() | b.value());
}

/// The k most significant bits of x as an MSB-first bit string.
inline std::string msb_prefix(Word x, unsigned k) {
  if (k > x.width()) {
    throw contract_error("prefix length " + std::to_string(k) + " exceeds width " +
                         std::to_string(x.width()));
  }
  return x.to_bits().substr(0, k);
}

/// Numeric form of msb_prefix: the top k bits as an integer (0 for k == 0).
inline std::uint64_t msb_prefix_value(Word x, unsigned k) {
  if (k > x.width()) {
    throw contract_error("prefix length exceeds width");
  }
  if (k == 0) return 0;
  return x.value() >> (x.width() - k);
}

}  // namespace sideways
