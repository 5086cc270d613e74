#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sideways/generators.hpp"
#include "sideways/machine.hpp"
#include "sideways/program.hpp"
#include "sideways/theory.hpp"

namespace sideways {

inline constexpr unsigned kMaxFuzzRegisters = 8;

/// SplitMix64 finalizer; derives independent per-program seeds so that a
/// fuzz run is reproducible from (seed, index) alone.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace detail {
// Modulo draw; bias is irrelevant here and the result is identical on every
// standard library, unlike std::uniform_int_distribution.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }
}  // namespace detail

/// A random, grammar-valid program: up to `max_registers` registers (x
/// included), 1..max_len instructions, uniformly chosen opcodes, branch
/// targets anywhere in [0, length]. Returned in canonical parsed form.
inline Program random_program(std::mt19937_64& rng, std::size_t max_len,
                              unsigned max_registers = kMaxFuzzRegisters) {
  if (max_len < 1 || max_registers < 1) throw contract_error("random_program bounds must be positive");
  const auto regs = static_cast<Reg>(1 + detail::draw(rng, max_registers));
  const auto len = static_cast<Target>(1 + detail::draw(rng, max_len));
  Program p;
  for (Reg r = 1; r < regs; ++r) p.registers.push_back("r" + std::to_string(r));
  auto reg = [&] { return static_cast<Reg>(detail::draw(rng, regs)); };
  auto target = [&] { return static_cast<Target>(detail::draw(rng, len + 1)); };
  for (Target i = 0; i < len; ++i) {
    switch (detail::draw(rng, std::variant_size_v<Instruction>)) {
      case 0: p.code.push_back(isa::Zero{reg()}); break;
      case 1: p.code.push_back(isa::Mov{reg(), reg()}); break;
      case 2: p.code.push_back(isa::Inc{reg()}); break;
      case 3: p.code.push_back(isa::Dec{reg()}); break;
      case 4: p.code.push_back(isa::And{reg(), reg()}); break;
      case 5: p.code.push_back(isa::Or{reg(), reg()}); break;
      case 6: p.code.push_back(isa::Bz{reg(), target()}); break;
      case 7: p.code.push_back(isa::Bnz{reg(), target()}); break;
      case 8: p.code.push_back(isa::Beq{reg(), reg(), target()}); break;
      case 9: p.code.push_back(isa::Blt{reg(), reg(), target()}); break;
      case 10: p.code.push_back(isa::Jmp{target()}); break;
      default: p.code.push_back(isa::Out{reg()}); break;
    }
  }
  // Round-trip through the text form: renumbers registers by first use and
  // exercises the parser on every fuzzed program.
  return parse_program(to_text(with_target_labels(std::move(p))));
}

/// Draws n in [min_width, max_width] and m in [0, ceil(n/2) - 1]. With
/// `theorem_form`, e == d as in the lower-bound argument.
inline AdversaryParams random_adversary(std::mt19937_64& rng, unsigned min_width,
                                        unsigned max_width, bool theorem_form) {
  AdversaryParams p;
  p.n = min_width + static_cast<unsigned>(detail::draw(rng, max_width - min_width + 1));
  p.m = static_cast<unsigned>(detail::draw(rng, (p.n + 1) / 2));
  p.e = static_cast<unsigned>(detail::draw(rng, 2));
  p.d = theorem_form ? p.e : static_cast<unsigned>(detail::draw(rng, 2));
  return p;
}

struct FuzzConfig {
  std::uint64_t seed = 1;
  std::size_t program_count = 1000;
  unsigned min_width = 4;
  unsigned max_width = 16;
  std::size_t max_len = 24;
  std::uint64_t budget = kDefaultBudget;
  std::size_t inputs_per_program = 1;
};

inline void validate(const FuzzConfig& c) {
  if (c.min_width < 1 || c.max_width > Word::kMaxWidth || c.min_width > c.max_width) {
    throw contract_error("fuzz width range must satisfy 1 <= min <= max <= 64");
  }
  if (c.max_len < 1 || c.budget < 1 || c.inputs_per_program < 1) {
    throw contract_error("fuzz bounds must be positive");
  }
}

struct FuzzWitness {
  std::string program_text;
  AdversaryParams params;
  std::string input_bits;
  Violation first;
};

struct FuzzReport {
  std::size_t programs = 0;
  std::size_t runs = 0;
  std::size_t halted_out = 0;
  std::size_t fell_off_end = 0;
  std::size_t budget_exhausted = 0;
  /// Runs cut once i exceeded m, after which the invariant says nothing.
  std::size_t schedule_done = 0;
  /// Runs cut because the machine state repeated with no inc/dec in the
  /// cycle; every later snapshot would repeat an already checked one.
  std::size_t cycled = 0;
  std::size_t violations = 0;
  std::size_t violating_runs = 0;
  std::vector<FuzzWitness> witnesses;
};

namespace detail {

/// Brent-style cycle detector over (pc, incdec_index, registers).
class CycleDetector {
 public:
  bool repeats(const SnapshotView& s) {
    if (have_saved_ && s.pc == pc_ && s.incdec_index == incdec_ &&
        std::equal(s.registers.begin(), s.registers.end(), regs_.begin(), regs_.end())) {
      return true;
    }
    if (++steps_ == power_) {
      power_ *= 2;
      steps_ = 0;
      have_saved_ = true;
      pc_ = s.pc;
      incdec_ = s.incdec_index;
      regs_.assign(s.registers.begin(), s.registers.end());
    }
    return false;
  }

 private:
  bool have_saved_ = false;
  std::uint64_t steps_ = 0;
  std::uint64_t power_ = 1;
  std::size_t pc_ = 0;
  std::uint64_t incdec_ = 0;
  std::vector<Word> regs_;
};

}  // namespace detail

/// Runs random programs on random adversary inputs and checks the prefix
/// invariant at every snapshot. Zero violations are expected under the
/// real machine semantics.
template <class Semantics = WrappingSemantics>
FuzzReport fuzz_invariant(const FuzzConfig& config, std::size_t max_witnesses = 5) {
  validate(config);
  FuzzReport rep;
  for (std::size_t idx = 0; idx < config.program_count; ++idx) {
    std::mt19937_64 rng(mix_seed(config.seed, idx));
    const Program program = random_program(rng, config.max_len);
    ++rep.programs;
    for (std::size_t k = 0; k < config.inputs_per_program; ++k) {
      const auto params = random_adversary(rng, config.min_width, config.max_width, false);
      const Word x = adversary_input(params);
      PrefixInvariantChecker checker(params, program.registers, 1);
      detail::CycleDetector cycles;
      bool cycled = false;
      const auto res = run<Semantics>(program, x, config.budget, [&](const SnapshotView& s) {
        if (!checker(s)) return false;
        if (cycles.repeats(s)) {
          cycled = true;
          return false;
        }
        return true;
      });
      ++rep.runs;
      switch (res.halt_reason) {
        case HaltReason::kOut: ++rep.halted_out; break;
        case HaltReason::kFellOffEnd: ++rep.fell_off_end; break;
        case HaltReason::kBudgetExhausted: ++rep.budget_exhausted; break;
        case HaltReason::kObserverStopped: ++(cycled ? rep.cycled : rep.schedule_done); break;
      }
      const auto& v = checker.report();
      if (!v.empty()) {
        rep.violations += v.count;
        ++rep.violating_runs;
        if (rep.witnesses.size() < max_witnesses) {
          rep.witnesses.push_back({to_text(program), params, x.to_bits(), v.violations.front()});
        }
      }
    }
  }
  return rep;
}

struct DivergenceWitness {
  std::string program;
  AdversaryParams params;
  ProbeResult probe;
};

struct DivergenceReport {
  std::size_t probes = 0;
  std::size_t diverged = 0;
  std::size_t violations = 0;
  std::vector<DivergenceWitness> witnesses;
};

inline void record_probe(DivergenceReport& rep, const std::string& program,
                         const AdversaryParams& params, const ProbeResult& probe,
                         std::size_t max_witnesses = 5) {
  ++rep.probes;
  if (probe.divergence) ++rep.diverged;
  if (!probe.bound_holds) {
    ++rep.violations;
    if (rep.witnesses.size() < max_witnesses) rep.witnesses.push_back({program, params, probe});
  }
}

/// MSB-flip probes of random programs on theorem-form adversary inputs
/// (e == d, so nu != n/2 always holds).
template <class Semantics = WrappingSemantics>
DivergenceReport fuzz_divergence(const FuzzConfig& config) {
  validate(config);
  DivergenceReport rep;
  for (std::size_t idx = 0; idx < config.program_count; ++idx) {
    std::mt19937_64 rng(mix_seed(config.seed ^ 0xD1CEULL, idx));
    const Program program = random_program(rng, config.max_len);
    for (std::size_t k = 0; k < config.inputs_per_program; ++k) {
      const auto params = random_adversary(rng, config.min_width, config.max_width, true);
      record_probe(rep, "fuzz#" + std::to_string(idx), params,
                   msb_flip_probe<Semantics>(program, params, config.budget, true));
    }
  }
  return rep;
}

/// Every theorem-form adversary pair for the shipped counting programs at
/// widths 2..max_width.
template <class Semantics = WrappingSemantics>
DivergenceReport shipped_divergence(unsigned max_width, std::uint64_t budget = kDefaultBudget) {
  DivergenceReport rep;
  for (unsigned n = 2; n <= max_width; ++n) {
    std::vector<GeneratedProgram> progs{wegner_program(n), dense_program(n), combined_program(n)};
    if (n == 2) progs.push_back(twobit_program());
    for (const auto& g : progs) {
      for (unsigned m = 0; 2 * m < n; ++m) {
        for (unsigned bit = 0; bit < 2; ++bit) {
          const AdversaryParams p{bit, m, bit, n};
          record_probe(rep, g.name + "/" + std::to_string(n), p,
                       msb_flip_probe<Semantics>(g, p, budget));
        }
      }
    }
  }
  return rep;
}

}  // namespace sideways
