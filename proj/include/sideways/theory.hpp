#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sideways/error.hpp"
#include "sideways/generators.hpp"
#include "sideways/machine.hpp"
#include "sideways/program.hpp"
#include "sideways/word.hpp"

namespace sideways {

/// Parameters of the adversary word e (01)^m d^(n-2m-1), written MSB-first.
struct AdversaryParams {
  unsigned e = 0;
  unsigned m = 0;
  unsigned d = 0;
  unsigned n = 1;
  friend bool operator==(const AdversaryParams&, const AdversaryParams&) = default;
};

inline void validate(const AdversaryParams& p) {
  if (p.n < 1 || p.n > Word::kMaxWidth) throw contract_error("adversary width must be in 1..64");
  if (p.e > 1 || p.d > 1) throw contract_error("adversary bits e and d must be 0 or 1");
  if (2 * p.m >= p.n) {
    throw contract_error("adversary needs m < n/2 (m=" + std::to_string(p.m) +
                         ", n=" + std::to_string(p.n) + ")");
  }
}

inline Word adversary_input(const AdversaryParams& p) {
  validate(p);
  std::string bits;
  bits.reserve(p.n);
  bits += static_cast<char>('0' + p.e);
  for (unsigned i = 0; i < p.m; ++i) bits += "01";
  bits.append(p.n - 2 * p.m - 1, static_cast<char>('0' + p.d));
  return Word::from_bits(bits);
}

inline std::string to_string(const AdversaryParams& p) {
  return "e=" + std::to_string(p.e) + " m=" + std::to_string(p.m) + " d=" + std::to_string(p.d) +
         " n=" + std::to_string(p.n);
}

/// Prefix lengths of the invariant: k_0 = n and k_i = 2(m - i) + 1 for
/// 1 <= i <= m. Beyond i = m the invariant says nothing.
struct KSchedule {
  unsigned n = 1;
  unsigned m = 0;

  std::optional<unsigned> k_value(std::uint64_t i) const noexcept {
    if (i == 0) return n;
    if (i > m) return std::nullopt;
    return static_cast<unsigned>(2 * (m - i) + 1);
  }
};

struct Violation {
  std::size_t snapshot_index;
  std::uint64_t incdec_index;
  std::string register_name;
  std::string prefix;
  std::array<std::string, 3> allowed;  // 0^k, 1^k, top k bits of the input
};

struct ViolationReport {
  std::vector<Violation> violations;
  /// Total number of offending (snapshot, register) pairs, including any
  /// beyond the recorded ones.
  std::size_t count = 0;

  bool empty() const noexcept { return count == 0; }
};

/// Streaming form of check_prefix_invariant, usable as a machine observer.
///
/// At every snapshot with incdec_index i where k_i is defined, each register's
/// top k_i bits must be all zeros, all ones, or the input's top k_i bits.
/// operator() returns false once no later snapshot can be checked.
class PrefixInvariantChecker {
 public:
  PrefixInvariantChecker(const AdversaryParams& params, std::vector<std::string> register_names,
                         std::size_t max_recorded = std::numeric_limits<std::size_t>::max())
      : input_(adversary_input(params)),
        schedule_{params.n, params.m},
        names_(std::move(register_names)),
        max_recorded_(max_recorded) {}

  bool operator()(const SnapshotView& s) { return check(s.incdec_index, s.registers); }

  bool check(std::uint64_t i, std::span<const Word> registers) {
    const std::size_t index = snapshots_++;
    const auto k = schedule_.k_value(i);
    if (!k) return false;
    const std::uint64_t ones = Word::mask_for(*k);
    const std::uint64_t own = msb_prefix_value(input_, *k);
    for (std::size_t r = 0; r < registers.size(); ++r) {
      const std::uint64_t top = msb_prefix_value(registers[r], *k);
      if (top == 0 || top == ones || top == own) continue;
      ++report_.count;
      if (report_.violations.size() < max_recorded_) {
        report_.violations.push_back(
            {index, i, r < names_.size() ? names_[r] : "r" + std::to_string(r),
             msb_prefix(registers[r], *k),
             {std::string(*k, '0'), std::string(*k, '1'), msb_prefix(input_, *k)}});
      }
    }
    return true;
  }

  const ViolationReport& report() const noexcept { return report_; }

 private:
  Word input_;
  KSchedule schedule_;
  std::vector<std::string> names_;
  std::size_t max_recorded_;
  std::size_t snapshots_ = 0;
  ViolationReport report_;
};

/// Checks a recorded trace of a run on adversary_input(params).
inline ViolationReport check_prefix_invariant(const Trace& trace, const AdversaryParams& params) {
  PrefixInvariantChecker checker(params, trace.register_names);
  for (const auto& s : trace.snapshots) {
    if (!checker.check(s.incdec_index, s.registers)) break;
  }
  return checker.report();
}

/// Flips the most significant bit of w.
inline Word flip_msb(Word w) {
  return Word(w.width(), w.value() ^ (std::uint64_t{1} << (w.width() - 1)));
}

/// min(nu, n - nu): the inc/dec count below which no counting program can
/// tell x from x with its MSB flipped.
inline unsigned incdec_lower_bound(unsigned n, unsigned nu) noexcept {
  return std::min(nu, n - nu);
}

struct ProbeResult {
  Word input;
  Word flipped;
  unsigned nu = 0;
  unsigned bound = 0;
  std::optional<Divergence> divergence;
  /// False iff the runs diverged before `bound` inc/dec operations.
  bool bound_holds = true;
};

/// Runs `program` on adversary_input(params) and on the same word with the
/// MSB flipped, and locates the first control-flow divergence. Only the
/// (pc, incdec_index) stream of each run is kept. With `stop_past_bound`,
/// both runs stop once they have executed more than `bound` inc/dec, which is
/// enough to decide bound_holds but may hide later divergences.
template <class Semantics = WrappingSemantics>
ProbeResult msb_flip_probe(const Program& program, const AdversaryParams& params,
                           std::uint64_t budget = kDefaultBudget, bool stop_past_bound = false) {
  const Word x = adversary_input(params);
  const unsigned nu = popcount_naive(x);
  if (2 * nu == params.n) {
    throw contract_error("msb_flip_probe needs nu(x) != n/2 (" + to_string(params) + ")");
  }
  ProbeResult r{x, flip_msb(x), nu, incdec_lower_bound(params.n, nu), std::nullopt, true};
  auto control_stream = [&](Word input) {
    ExecResult res;
    res.trace.emplace();
    auto& snaps = res.trace->snapshots;
    auto out = run<Semantics>(program, input, budget, [&](const SnapshotView& s) {
      snaps.push_back({s.incdec_index, s.pc, {}});
      return !stop_past_bound || s.incdec_index <= r.bound;
    });
    out.trace = std::move(res.trace);
    return out;
  };
  r.divergence = diff_traces(control_stream(r.input), control_stream(r.flipped));
  r.bound_holds = !r.divergence || r.divergence->incdec_index >= r.bound;
  return r;
}

template <class Semantics = WrappingSemantics>
ProbeResult msb_flip_probe(const GeneratedProgram& g, const AdversaryParams& params,
                           std::uint64_t budget = kDefaultBudget, bool stop_past_bound = false) {
  return msb_flip_probe<Semantics>(g.program, params, budget, stop_past_bound);
}

struct AuditFailure {
  Word input;
  std::string kind;  // "wrong-output", "no-output", "below-bound", "step-law"
  std::string detail;
};

struct AuditReport {
  std::string program;
  unsigned width = 0;
  std::size_t inputs = 0;
  std::size_t bound_checked = 0;
  std::vector<AuditFailure> failures;
  /// Smallest incdec / min(nu, n - nu) over inputs with a positive bound.
  std::optional<double> tightest_ratio;
  std::optional<Word> tightest_input;
  std::uint64_t worst_incdec = 0;
  std::optional<Word> worst_input;

  bool passed() const noexcept { return failures.empty(); }
};

/// Exhaustive audit over all 2^n inputs: the output must equal the popcount,
/// and for nu != n/2 the run must use at least min(nu, n - nu) inc/dec.
/// With `check_step_law`, the program's own cost law is enforced too.
template <class Semantics = WrappingSemantics>
AuditReport lower_bound_audit(const GeneratedProgram& g, unsigned n,
                              std::uint64_t budget = kDefaultBudget,
                              bool check_step_law = false) {
  if (n < 2 || n > 12) throw contract_error("lower_bound_audit covers widths 2..12");
  AuditReport rep;
  rep.program = g.name;
  rep.width = n;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    const Word x(n, v);
    const unsigned nu = popcount_naive(x);
    const auto res = execute<Semantics>(g.program, x, budget);
    ++rep.inputs;
    const std::uint64_t incdec = res.counters.incdec_steps;
    if (!res.output) {
      rep.failures.push_back({x, "no-output", to_string(res.halt_reason)});
      continue;
    }
    if (res.output->value() != nu) {
      rep.failures.push_back({x, "wrong-output",
                              "got " + std::to_string(res.output->value()) + ", want " +
                                  std::to_string(nu)});
    }
    if (incdec >= rep.worst_incdec) {
      rep.worst_incdec = incdec;
      rep.worst_input = x;
    }
    if (check_step_law && g.predicted_incdec) {
      const auto want = g.predicted_incdec(n, nu);
      const bool ok = g.law == StepLaw::kExact ? incdec == want : incdec <= want;
      if (!ok) {
        rep.failures.push_back({x, "step-law",
                                "incdec " + std::to_string(incdec) +
                                    (g.law == StepLaw::kExact ? " != " : " > ") +
                                    std::to_string(want)});
      }
    }
    if (2 * nu == n) continue;
    ++rep.bound_checked;
    const unsigned bound = incdec_lower_bound(n, nu);
    if (incdec < bound) {
      rep.failures.push_back({x, "below-bound",
                              "incdec " + std::to_string(incdec) + " < " + std::to_string(bound)});
    }
    if (bound > 0) {
      const double ratio = static_cast<double>(incdec) / bound;
      if (!rep.tightest_ratio || ratio < *rep.tightest_ratio) {
        rep.tightest_ratio = ratio;
        rep.tightest_input = x;
      }
    }
  }
  return rep;
}

}  // namespace sideways
