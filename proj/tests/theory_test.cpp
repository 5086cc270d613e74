#include <gtest/gtest.h>

#include "sideways/generators.hpp"
#include "sideways/theory.hpp"

namespace sideways {
namespace {

TEST(AdversaryTest, Examples) {
  EXPECT_EQ(adversary_input({1, 1, 1, 6}), Word::from_bits("101111"));
  EXPECT_EQ(adversary_input({1, 1, 1, 6}).value(), 47U);
  EXPECT_EQ(adversary_input({0, 2, 0, 6}), Word::from_bits("001010"));
  EXPECT_EQ(popcount_naive(adversary_input({0, 2, 0, 6})), 2U);
  EXPECT_EQ(adversary_input({0, 0, 0, 4}), Word::from_bits("0000"));
  EXPECT_EQ(adversary_input({1, 0, 0, 1}), Word::from_bits("1"));
  EXPECT_THROW(adversary_input({0, 3, 0, 6}), contract_error);
  EXPECT_THROW(adversary_input({2, 0, 0, 6}), contract_error);
}

TEST(AdversaryTest, PopcountFormula) {
  for (unsigned n = 1; n <= 20; ++n) {
    for (unsigned m = 0; 2 * m < n; ++m) {
      for (unsigned e = 0; e < 2; ++e) {
        for (unsigned d = 0; d < 2; ++d) {
          const auto x = adversary_input({e, m, d, n});
          EXPECT_EQ(x.width(), n);
          EXPECT_EQ(popcount_naive(x), m + e + d * (n - 2 * m - 1));
        }
      }
    }
  }
}

TEST(KScheduleTest, Examples) {
  const KSchedule s{6, 2};
  EXPECT_EQ(s.k_value(0), 6U);
  EXPECT_EQ(s.k_value(1), 3U);
  EXPECT_EQ(s.k_value(2), 1U);
  EXPECT_FALSE(s.k_value(3));
  const KSchedule z{4, 0};
  EXPECT_EQ(z.k_value(0), 4U);
  EXPECT_FALSE(z.k_value(1));
}

TEST(PrefixInvariantTest, InitialSnapshotHolds) {
  const AdversaryParams p{1, 2, 0, 8};
  const Word x = adversary_input(p);
  Trace t{{"x", "a", "b"}, {{0, 0, {x, Word::zero(8), Word::zero(8)}}}};
  EXPECT_TRUE(check_prefix_invariant(t, p).empty());
}

TEST(PrefixInvariantTest, FabricatedViolation) {
  const AdversaryParams p{1, 2, 0, 8};  // x = 10101000
  const Word x = adversary_input(p);
  Trace t{{"x", "a"},
          {{0, 0, {x, Word::zero(8)}}, {1, 1, {x, Word::from_bits("01011111")}}}};
  const auto rep = check_prefix_invariant(t, p);
  ASSERT_EQ(rep.count, 1U);
  const auto& v = rep.violations.front();
  EXPECT_EQ(v.snapshot_index, 1U);
  EXPECT_EQ(v.incdec_index, 1U);
  EXPECT_EQ(v.register_name, "a");
  EXPECT_EQ(v.prefix, "010");
  EXPECT_EQ(v.allowed, (std::array<std::string, 3>{"000", "111", "101"}));
}

TEST(PrefixInvariantTest, VacuousBeyondM) {
  const AdversaryParams p{0, 1, 0, 6};
  Trace t{{"x"}, {{2, 0, {Word::from_bits("010101")}}}};
  EXPECT_TRUE(check_prefix_invariant(t, p).empty());
}

TEST(PrefixInvariantTest, ShippedProgramTraces) {
  const AdversaryParams p{0, 2, 0, 6};
  const auto r = execute(wegner_program(6).program, adversary_input(p), kDefaultBudget, true);
  EXPECT_TRUE(check_prefix_invariant(*r.trace, p).empty());
  for (unsigned n = 2; n <= 12; ++n) {
    for (const auto& g : {wegner_program(n), dense_program(n), combined_program(n)}) {
      for (unsigned m = 0; 2 * m < n; ++m) {
        for (unsigned e = 0; e < 2; ++e) {
          for (unsigned d = 0; d < 2; ++d) {
            const AdversaryParams q{e, m, d, n};
            const auto run = execute(g.program, adversary_input(q), kDefaultBudget, true);
            EXPECT_TRUE(check_prefix_invariant(*run.trace, q).empty()) << g.name << ' ' << to_string(q);
          }
        }
      }
    }
  }
}

TEST(ProbeTest, WegnerSparse) {
  const auto r = msb_flip_probe(wegner_program(6), {0, 2, 0, 6});
  EXPECT_EQ(r.input, Word::from_bits("001010"));
  EXPECT_EQ(r.flipped, Word::from_bits("101010"));
  EXPECT_EQ(r.nu, 2U);
  EXPECT_EQ(r.bound, 2U);
  ASSERT_TRUE(r.divergence);
  EXPECT_GE(r.divergence->incdec_index, 2U);
  EXPECT_TRUE(r.bound_holds);
}

TEST(ProbeTest, IdentityNeverDiverges) {
  const auto r = msb_flip_probe(parse_program("OUT x"), {0, 2, 0, 6});
  EXPECT_FALSE(r.divergence);
  EXPECT_TRUE(r.bound_holds);
}

TEST(ProbeTest, DenseDense) {
  const auto r = msb_flip_probe(dense_program(6), {1, 1, 1, 6});
  EXPECT_EQ(r.input, Word::from_bits("101111"));
  EXPECT_EQ(r.nu, 5U);
  EXPECT_EQ(r.bound, 1U);
  ASSERT_TRUE(r.divergence);
  EXPECT_GE(r.divergence->incdec_index, 1U);
}

TEST(ProbeTest, RejectsBalancedInput) {
  // 1 0101 0 has three ones out of six.
  EXPECT_THROW(msb_flip_probe(wegner_program(6), {1, 2, 0, 6}), contract_error);
}

TEST(ProbeTest, StopPastBoundAgreesOnVerdict) {
  for (unsigned m = 0; m < 5; ++m) {
    const AdversaryParams p{0, m, 0, 10};
    const auto full = msb_flip_probe(combined_program(10), p);
    const auto cut = msb_flip_probe(combined_program(10), p, kDefaultBudget, true);
    EXPECT_EQ(full.bound_holds, cut.bound_holds);
  }
}

TEST(AuditTest, WegnerWidth8) {
  const auto rep = lower_bound_audit(wegner_program(8), 8);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.inputs, 256U);
  EXPECT_EQ(rep.bound_checked, 256U - 70U);  // C(8,4) = 70 balanced inputs skipped
  ASSERT_TRUE(rep.tightest_ratio);
  EXPECT_DOUBLE_EQ(*rep.tightest_ratio, 2.0);
  EXPECT_EQ(rep.worst_incdec, 16U);
}

TEST(AuditTest, CombinedWidth8) { EXPECT_TRUE(lower_bound_audit(combined_program(8), 8, kDefaultBudget, true).passed()); }

TEST(AuditTest, TwobitMeetsBoundExactly) {
  const auto g = twobit_program();
  const auto rep = lower_bound_audit(g, 2, kDefaultBudget, true);
  EXPECT_TRUE(rep.passed());
  for (const char* bits : {"01", "10"}) {
    EXPECT_EQ(execute(g.program, Word::from_bits(bits)).counters.incdec_steps, 1U);
  }
}

TEST(AuditTest, DetectsWrongAndFastPrograms) {
  GeneratedProgram cheat{"identity", 4, parse_program("OUT x"), StepLaw::kExact, nullptr, ""};
  const auto rep = lower_bound_audit(cheat, 4);
  EXPECT_FALSE(rep.passed());
  bool below = false, wrong = false;
  for (const auto& f : rep.failures) {
    below |= f.kind == "below-bound";
    wrong |= f.kind == "wrong-output";
  }
  EXPECT_TRUE(below);
  EXPECT_TRUE(wrong);
  EXPECT_THROW(lower_bound_audit(wegner_program(13), 13), contract_error);
  EXPECT_THROW(lower_bound_audit(wegner_program(1), 1), contract_error);
}

TEST(AuditTest, MutantBreaksDense) {
  const auto rep = lower_bound_audit<NonWrappingIncSemantics>(dense_program(4), 4, 10'000);
  EXPECT_FALSE(rep.passed());
}

}  // namespace
}  // namespace sideways
