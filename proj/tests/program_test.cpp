#include <gtest/gtest.h>

#include <random>

#include "sideways/fuzz.hpp"
#include "sideways/program.hpp"

namespace sideways {
namespace {

constexpr const char* kWegner =
    "loop: BZ x done\nMOV t x\nDEC t\nAND x t\nINC c\nJMP loop\ndone: OUT c";

TEST(ParseTest, MinimalProgram) {
  const auto p = parse_program("ZERO c\nOUT c");
  ASSERT_EQ(p.size(), 2U);
  EXPECT_EQ(p.registers, (std::vector<std::string>{"x", "c"}));
  EXPECT_EQ(std::get<isa::Zero>(p.code[0]).r, 1U);
  EXPECT_EQ(std::get<isa::Out>(p.code[1]).r, 1U);
}

TEST(ParseTest, WegnerProgram) {
  const auto p = parse_program(kWegner);
  ASSERT_EQ(p.size(), 7U);
  EXPECT_EQ(std::get<isa::Bz>(p.code[0]).to, 6U);
  EXPECT_EQ(std::get<isa::Jmp>(p.code[5]).to, 0U);
  EXPECT_EQ(p.registers, (std::vector<std::string>{"x", "t", "c"}));
}

TEST(ParseTest, ImplicitRegisters) {
  const auto p = parse_program("MOV t y");
  EXPECT_EQ(p.registers, (std::vector<std::string>{"x", "t", "y"}));
}

TEST(ParseTest, CommentsCommasAndCase) {
  const auto p = parse_program("; header\n  top:  beq x, y, top ; spin\n\nout x\n");
  ASSERT_EQ(p.size(), 2U);
  EXPECT_EQ(std::get<isa::Beq>(p.code[0]).to, 0U);
}

TEST(ParseTest, LabelAtEnd) {
  const auto p = parse_program("BZ x end\nOUT x\nend:\n");
  ASSERT_EQ(p.size(), 2U);
  EXPECT_EQ(std::get<isa::Bz>(p.code[0]).to, 2U);
}

TEST(ParseTest, Errors) {
  auto line_of = [](const char* text) {
    try {
      parse_program(text);
    } catch (const parse_error& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("OUT x\nNOT x"), 2U);            // unknown opcode
  EXPECT_EQ(line_of("JMP nowhere"), 1U);             // unresolved label
  EXPECT_EQ(line_of("a: INC x\na: DEC x"), 2U);      // duplicate label
  EXPECT_EQ(line_of("ZERO c\nMOV c 1"), 2U);         // constant other than zero
  EXPECT_EQ(line_of("INC 0"), 1U);                   // even 0 is not a literal
  EXPECT_EQ(line_of("INC x y"), 1U);                 // operand count
  EXPECT_EQ(line_of("1abel: INC x"), 1U);            // bad label name
  EXPECT_EQ(line_of("INC x-1"), 1U);                 // bad operand
}

TEST(PrintTest, RoundTripsParsedPrograms) {
  const auto p = parse_program(kWegner);
  EXPECT_EQ(to_text(p), "loop: BZ x done\nMOV t x\nDEC t\nAND x t\nINC c\nJMP loop\ndone: OUT c\n");
  EXPECT_EQ(parse_program(to_text(p)), p);
  const auto q = parse_program("a:\nb: INC x\nJMP a\nJMP b\nc:\n");
  EXPECT_EQ(parse_program(to_text(q)), q);
}

TEST(PrintTest, InventsLabelsForBareTargets) {
  Program p;
  p.code = {isa::Bz{0, 2}, isa::Inc{0}, isa::Jmp{0}};
  EXPECT_THROW(to_text(p), contract_error);
  const auto labeled = with_target_labels(p);
  EXPECT_EQ(to_text(labeled), "L0: BZ x L2\nINC x\nL2: JMP L0\n");
}

// Random programs survive print -> parse unchanged.
TEST(PrintTest, RandomProgramRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto p = random_program(rng, 30);
    EXPECT_EQ(parse_program(to_text(p)), p);
    EXPECT_LE(p.registers.size(), kMaxFuzzRegisters);
  }
}

}  // namespace
}  // namespace sideways
