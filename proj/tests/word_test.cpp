#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "sideways/word.hpp"

namespace sideways {
namespace {

TEST(WordTest, ReducesValueModuloWidth) {
  EXPECT_EQ(Word(4, 0x1F).value(), 0xFU);
  EXPECT_EQ(Word(64, ~0ULL).value(), ~0ULL);
  EXPECT_EQ(Word(1, 3).value(), 1U);
}

TEST(WordTest, RejectsBadWidths) {
  EXPECT_THROW(Word(0, 0), contract_error);
  EXPECT_THROW(Word(65, 0), contract_error);
}

TEST(WordTest, BitStringLiteral) {
  const auto w = Word::from_bits("101111");
  EXPECT_EQ(w.width(), 6U);
  EXPECT_EQ(w.value(), 47U);
  EXPECT_EQ(w.to_bits(), "101111");
  EXPECT_THROW(Word::from_bits(""), contract_error);
  EXPECT_THROW(Word::from_bits("10a1"), contract_error);
}

TEST(PopcountNaiveTest, Examples) {
  EXPECT_EQ(popcount_naive(Word(4, 0)), 0U);
  EXPECT_EQ(popcount_naive(Word(4, 0b1111)), 4U);
  EXPECT_EQ(popcount_naive(Word(6, 0b101111)), 5U);
  EXPECT_EQ(oracle::table_popcount(0b101111), 5U);
}

TEST(PopcountNaiveTest, AgreesWithIndependentCountsOnRandomWords) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 20000; ++i) {
    const unsigned width = 1 + static_cast<unsigned>(rng() % 64);
    const Word w(width, rng());
    EXPECT_EQ(popcount_naive(w), oracle::table_popcount(w.value()));
    EXPECT_EQ(popcount_naive(w), oracle::builtin_popcount(w.value()));
  }
}

TEST(WrapTest, IncrementExamples) {
  EXPECT_EQ(wrap_inc(Word::from_bits("1111")), Word::from_bits("0000"));
  EXPECT_EQ(wrap_inc(Word::from_bits("0000")), Word::from_bits("0001"));
  EXPECT_EQ(wrap_inc(Word::from_bits("101111")), Word::from_bits("110000"));
  EXPECT_EQ(wrap_inc(Word::ones(64)), Word::zero(64));
}

TEST(WrapTest, DecrementExamples) {
  EXPECT_EQ(wrap_dec(Word::from_bits("0000")), Word::from_bits("1111"));
  EXPECT_EQ(wrap_dec(Word::from_bits("1011")), Word::from_bits("1010"));
  EXPECT_EQ(wrap_dec(Word::from_bits("1")), Word::from_bits("0"));
  EXPECT_EQ(wrap_dec(Word::zero(64)), Word::ones(64));
}

TEST(LogicTest, Examples) {
  EXPECT_EQ(bit_and(Word::from_bits("1011"), Word::from_bits("1010")), Word::from_bits("1010"));
  EXPECT_EQ(bit_or(Word::from_bits("1101"), Word::from_bits("1110")), Word::from_bits("1111"));
  EXPECT_THROW(bit_and(Word(4, 1), Word(5, 1)), contract_error);
  EXPECT_THROW(bit_or(Word(4, 1), Word(5, 1)), contract_error);
}

TEST(PrefixTest, Examples) {
  EXPECT_EQ(msb_prefix(Word::from_bits("101111"), 3), "101");
  EXPECT_EQ(msb_prefix(Word::from_bits("101111"), 0), "");
  EXPECT_EQ(msb_prefix(Word::from_bits("000000"), 6), "000000");
  EXPECT_EQ(msb_prefix_value(Word::from_bits("101111"), 3), 0b101U);
  EXPECT_THROW(msb_prefix(Word(4, 0), 5), contract_error);
}

// x AND (x - 1) drops one set bit; x OR (x + 1) gains one. Exhaustive to 12.
TEST(WordProperties, LowestBitLaws) {
  for (unsigned n = 1; n <= 12; ++n) {
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
      const Word x(n, v);
      const unsigned c = popcount_naive(x);
      if (!x.is_zero()) {
        EXPECT_EQ(popcount_naive(bit_and(x, wrap_dec(x))), c - 1);
      }
      if (!x.is_ones()) {
        EXPECT_EQ(popcount_naive(bit_or(x, wrap_inc(x))), c + 1);
      }
      EXPECT_EQ(wrap_dec(wrap_inc(x)), x);
      EXPECT_EQ(wrap_inc(wrap_dec(x)), x);
      EXPECT_EQ(x.to_bits(), oracle::bits_msb_first(v, n));
      EXPECT_EQ(Word::from_bits(x.to_bits()), x);
    }
  }
}

TEST(WordProperties, AndOrAlgebra) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 64);
    const Word a(n, rng()), b(n, rng()), c(n, rng());
    EXPECT_EQ(bit_and(a, b), bit_and(b, a));
    EXPECT_EQ(bit_or(a, b), bit_or(b, a));
    EXPECT_EQ(bit_and(bit_and(a, b), c), bit_and(a, bit_and(b, c)));
    EXPECT_EQ(bit_or(bit_or(a, b), c), bit_or(a, bit_or(b, c)));
    EXPECT_EQ(bit_and(a, a), a);
    EXPECT_EQ(bit_or(a, a), a);
  }
}

}  // namespace
}  // namespace sideways
