#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sideways/error.hpp"
#include "sideways/program.hpp"
#include "sideways/word.hpp"

namespace sideways {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// Operation semantics of the machine. Tests swap in mutated variants to
/// show that the invariant checks are not vacuous.
struct WrappingSemantics {
  static Word inc(Word a) { return wrap_inc(a); }
  static Word dec(Word a) { return wrap_dec(a); }
  static Word op_and(Word a, Word b) { return bit_and(a, b); }
  static Word op_or(Word a, Word b) { return bit_or(a, b); }
};

/// Mutation fixture: INC does not wrap. Incrementing the all-ones word keeps
/// the carry out as the most significant bit (1 -> 10..0) instead of
/// producing zero.
struct NonWrappingIncSemantics : WrappingSemantics {
  static Word inc(Word a) {
    if (a.is_ones()) return Word(a.width(), std::uint64_t{1} << (a.width() - 1));
    return wrap_inc(a);
  }
};

struct StepCounters {
  std::uint64_t total_steps = 0;
  std::uint64_t incdec_steps = 0;
  friend bool operator==(const StepCounters&, const StepCounters&) = default;
};

enum class HaltReason {
  kOut,
  kBudgetExhausted,
  kFellOffEnd,
  kObserverStopped,  // only from run() with an observer that returned false
};

inline std::string to_string(HaltReason r) {
  switch (r) {
    case HaltReason::kOut: return "out";
    case HaltReason::kBudgetExhausted: return "budget-exhausted";
    case HaltReason::kFellOffEnd: return "fell-off-end";
    case HaltReason::kObserverStopped: return "observer-stopped";
  }
  return "?";
}

/// Register file at one point of execution. Recorded for the initial state
/// and after every executed instruction; `pc` is the next instruction to
/// execute (for a halting OUT it stays on the OUT).
struct TraceSnapshot {
  std::uint64_t incdec_index = 0;
  std::size_t pc = 0;
  std::vector<Word> registers;
  friend bool operator==(const TraceSnapshot&, const TraceSnapshot&) = default;
};

struct Trace {
  std::vector<std::string> register_names;
  std::vector<TraceSnapshot> snapshots;
  friend bool operator==(const Trace&, const Trace&) = default;
};

struct ExecResult {
  std::optional<Word> output;
  StepCounters counters;
  HaltReason halt_reason = HaltReason::kFellOffEnd;
  std::optional<Trace> trace;
  friend bool operator==(const ExecResult&, const ExecResult&) = default;
};

/// Non-owning view handed to observers while the machine runs.
struct SnapshotView {
  std::uint64_t incdec_index;
  std::size_t pc;
  std::span<const Word> registers;
};

/// Runs `program` on `input`, calling `observe(SnapshotView)` for the initial
/// state and after every instruction. If the observer returns false, the run
/// stops with HaltReason::kObserverStopped. All registers share the input's
/// width; every register except x starts at zero.
template <class Semantics = WrappingSemantics, class Observer>
ExecResult run(const Program& program, Word input, std::uint64_t budget, Observer&& observe) {
  if (budget < 1) throw contract_error("budget must be at least 1");

  std::vector<Word> regs(program.registers.size(), Word::zero(input.width()));
  regs[kInputRegister] = input;
  ExecResult result;
  StepCounters& c = result.counters;
  std::size_t pc = 0;
  const std::size_t end = program.code.size();

  auto notify = [&] {
    if constexpr (std::is_same_v<std::invoke_result_t<Observer&, const SnapshotView&>, bool>) {
      return observe(SnapshotView{c.incdec_steps, pc, regs});
    } else {
      observe(SnapshotView{c.incdec_steps, pc, regs});
      return true;
    }
  };

  if (!notify()) {
    result.halt_reason = HaltReason::kObserverStopped;
    return result;
  }
  for (;;) {
    if (pc >= end) {
      result.halt_reason = HaltReason::kFellOffEnd;
      return result;
    }
    if (c.total_steps >= budget) {
      result.halt_reason = HaltReason::kBudgetExhausted;
      return result;
    }
    ++c.total_steps;
    bool halted = false;
    std::size_t next = pc + 1;
    std::visit([&](const auto& i) {
      using T = std::decay_t<decltype(i)>;
      if constexpr (std::is_same_v<T, isa::Zero>) {
        regs[i.r] = Word::zero(input.width());
      } else if constexpr (std::is_same_v<T, isa::Mov>) {
        regs[i.r] = regs[i.s];
      } else if constexpr (std::is_same_v<T, isa::Inc>) {
        regs[i.r] = Semantics::inc(regs[i.r]);
        ++c.incdec_steps;
      } else if constexpr (std::is_same_v<T, isa::Dec>) {
        regs[i.r] = Semantics::dec(regs[i.r]);
        ++c.incdec_steps;
      } else if constexpr (std::is_same_v<T, isa::And>) {
        regs[i.r] = Semantics::op_and(regs[i.r], regs[i.s]);
      } else if constexpr (std::is_same_v<T, isa::Or>) {
        regs[i.r] = Semantics::op_or(regs[i.r], regs[i.s]);
      } else if constexpr (std::is_same_v<T, isa::Bz>) {
        if (regs[i.r].is_zero()) next = i.to;
      } else if constexpr (std::is_same_v<T, isa::Bnz>) {
        if (!regs[i.r].is_zero()) next = i.to;
      } else if constexpr (std::is_same_v<T, isa::Beq>) {
        if (regs[i.r].value() == regs[i.s].value()) next = i.to;
      } else if constexpr (std::is_same_v<T, isa::Blt>) {
        if (regs[i.r].value() < regs[i.s].value()) next = i.to;
      } else if constexpr (std::is_same_v<T, isa::Jmp>) {
        next = i.to;
      } else if constexpr (std::is_same_v<T, isa::Out>) {
        result.output = regs[i.r];
        halted = true;
      }
    }, program.code[pc]);

    if (halted) {
      result.halt_reason = HaltReason::kOut;
      notify();
      return result;
    }
    pc = next;
    if (!notify()) {
      result.halt_reason = HaltReason::kObserverStopped;
      return result;
    }
  }
}

template <class Semantics = WrappingSemantics>
ExecResult execute(const Program& program, Word input, std::uint64_t budget = kDefaultBudget,
                   bool trace_on = false) {
  if (!trace_on) {
    return run<Semantics>(program, input, budget, [](const SnapshotView&) {});
  }
  Trace trace{program.registers, {}};
  auto result = run<Semantics>(program, input, budget, [&](const SnapshotView& s) {
    trace.snapshots.push_back({s.incdec_index, s.pc, {s.registers.begin(), s.registers.end()}});
  });
  result.trace = std::move(trace);
  return result;
}

struct Divergence {
  /// Position in the executed-instruction stream where the runs first differ.
  std::size_t step_index;
  /// Increments and decrements executed before the differing instruction.
  std::uint64_t incdec_index;
  friend bool operator==(const Divergence&, const Divergence&) = default;
};

/// First point where two traced runs of the same program execute different
/// instructions, i.e. where some branch resolved differently.
inline std::optional<Divergence> diff_traces(const ExecResult& a, const ExecResult& b) {
  if (!a.trace || !b.trace) throw contract_error("diff_traces needs traced executions");
  const auto& sa = a.trace->snapshots;
  const auto& sb = b.trace->snapshots;
  const std::size_t common = std::min(sa.size(), sb.size());
  for (std::size_t j = 0; j < common; ++j) {
    if (sa[j].pc != sb[j].pc) return Divergence{j, sa[j].incdec_index};
  }
  if (sa.size() == sb.size()) return std::nullopt;
  // One run stopped while the other went on with an identical prefix.
  return Divergence{common, common == 0 ? 0 : sa[common - 1].incdec_index};
}

}  // namespace sideways
