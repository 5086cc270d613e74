#pragma once

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sideways/fuzz.hpp"
#include "sideways/generators.hpp"
#include "sideways/machine.hpp"
#include "sideways/reference.hpp"
#include "sideways/theory.hpp"
#include "sideways/word.hpp"

namespace sideways {

enum class Format { kCsv, kMarkdown };

// ---------------------------------------------------------------------------
// Sweeps

inline constexpr unsigned kExhaustiveSweepWidth = 20;

struct SweepRow {
  Word input;
  unsigned nu;
  std::optional<std::uint64_t> output;
  std::uint64_t incdec_steps;
  std::uint64_t total_steps;
};

/// One row per input: every input for width <= 20, otherwise `samples`
/// inputs drawn from `seed`.
template <class Semantics = WrappingSemantics>
std::vector<SweepRow> sweep(const Program& program, unsigned width, std::uint64_t seed = 1,
                            std::size_t samples = 10'000, std::uint64_t budget = kDefaultBudget) {
  if (width < 1 || width > Word::kMaxWidth) throw contract_error("sweep width must be in 1..64");
  std::vector<SweepRow> rows;
  auto one = [&](Word x) {
    const auto r = execute<Semantics>(program, x, budget);
    rows.push_back({x, popcount_naive(x),
                    r.output ? std::optional<std::uint64_t>(r.output->value()) : std::nullopt,
                    r.counters.incdec_steps, r.counters.total_steps});
  };
  if (width <= kExhaustiveSweepWidth) {
    rows.reserve(std::size_t{1} << width);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) one(Word(width, v));
  } else {
    std::mt19937_64 rng(seed);
    rows.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) one(Word(width, rng()));
  }
  return rows;
}

inline void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows, Format format) {
  if (format == Format::kCsv) {
    os << "input_bits,nu,output,incdec_steps,total_steps\n";
    for (const auto& r : rows) {
      os << r.input.to_bits() << ',' << r.nu << ',';
      if (r.output) os << *r.output;
      os << ',' << r.incdec_steps << ',' << r.total_steps << '\n';
    }
    return;
  }
  os << "| input_bits | nu | output | incdec_steps | total_steps |\n"
     << "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    os << "| " << r.input.to_bits() << " | " << r.nu << " | "
       << (r.output ? std::to_string(*r.output) : std::string("-")) << " | " << r.incdec_steps
       << " | " << r.total_steps << " |\n";
  }
}

// ---------------------------------------------------------------------------
// Verification suite

struct VerifyFailure {
  std::string check;
  std::string program;
  unsigned width;
  std::string input_bits;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyFailure> failures;
  std::vector<std::string> log;
  bool passed() const noexcept { return failures.empty(); }
};

inline void write_failures_csv(std::ostream& os, const VerifyReport& rep) {
  os << "check,program,width,input_bits,detail\n";
  for (const auto& f : rep.failures) {
    os << f.check << ',' << f.program << ',' << f.width << ',' << f.input_bits << ','
       << f.detail << '\n';
  }
}

/// Constant generator law: exact value and at most c * log2(t + 2) steps for
/// every target in [0, max_target] at the given width.
template <class Semantics = WrappingSemantics>
void verify_constants(VerifyReport& rep, std::uint64_t max_target, unsigned width) {
  for (std::uint64_t t = 0; t <= max_target; ++t) {
    const auto g = constant_program(t, width);
    const auto r = execute<Semantics>(g.program, Word::zero(width), 4096);
    const std::string bits = Word(width, t).to_bits();
    if (!r.output || r.output->value() != t) {
      rep.failures.push_back({"constant-value", "constant", width, bits,
                              r.output ? "got " + std::to_string(r.output->value())
                                       : to_string(r.halt_reason)});
    } else if (static_cast<double>(r.counters.total_steps) > constant_step_bound(t)) {
      rep.failures.push_back({"constant-steps", "constant", width, bits,
                              std::to_string(r.counters.total_steps) + " steps"});
    } else if (r.counters.incdec_steps != constant_incs(t)) {
      rep.failures.push_back({"constant-incs", "constant", width, bits,
                              std::to_string(r.counters.incdec_steps) + " incs"});
    }
  }
}

/// Exhaustive checks for one width: oracle equivalence, step laws and the
/// inc/dec lower bound for every shipped counting program.
template <class Semantics = WrappingSemantics>
void verify_width(VerifyReport& rep, unsigned n, std::uint64_t budget = kDefaultBudget) {
  if (n < 1 || n > 12) throw contract_error("verify covers widths 1..12");
  if (n == 1) {
    // A single bit is its own count; no program runs at this width.
    const auto identity = parse_program("OUT x");
    for (std::uint64_t v = 0; v < 2; ++v) {
      const Word x(1, v);
      const auto r = execute<Semantics>(identity, x, budget);
      if (popcount_naive(x) != v || !r.output || r.output->value() != v) {
        rep.failures.push_back({"identity", "identity", 1, x.to_bits(), "single bit is not its count"});
      }
    }
    rep.log.push_back("width 1: identity checked; counting programs skipped");
    return;
  }
  std::vector<GeneratedProgram> progs{wegner_program(n), dense_program(n), combined_program(n)};
  if (n == 2) progs.push_back(twobit_program());
  for (const auto& g : progs) {
    const auto audit = lower_bound_audit<Semantics>(g, n, budget, true);
    for (const auto& f : audit.failures) {
      rep.failures.push_back({f.kind, g.name, n, f.input.to_bits(), f.detail});
    }
    std::ostringstream line;
    line << "width " << n << ' ' << g.name << ": " << audit.inputs << " inputs, "
         << (audit.passed() ? "ok" : "FAILED") << ", worst incdec " << audit.worst_incdec;
    if (audit.tightest_ratio) line << ", tightest ratio " << *audit.tightest_ratio;
    rep.log.push_back(line.str());
  }
}

template <class Semantics = WrappingSemantics>
void verify_reference(VerifyReport& rep, std::uint64_t seed, std::size_t samples) {
  for (std::uint64_t v = 0; v < (1U << 16); ++v) {
    if (broadword_popcount(Word(16, v)) != popcount_naive(Word(16, v))) {
      rep.failures.push_back({"oracle", "broadword", 16, Word(16, v).to_bits(), "mismatch"});
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> words{0U, 0xFFFFFFFFU};
  for (std::size_t i = 0; i < samples; ++i) words.push_back(static_cast<std::uint32_t>(rng()));
  for (auto w : words) {
    if (hakmem_popcount(Word(32, w)) != popcount_naive(Word(32, w))) {
      rep.failures.push_back({"oracle", "hakmem", 32, Word(32, w).to_bits(), "mismatch"});
    }
  }
  rep.log.push_back("reference popcounts checked");
}

/// The full verification run behind `sideways verify`.
template <class Semantics = WrappingSemantics>
VerifyReport verify_all(const std::vector<unsigned>& widths, std::uint64_t seed = 1,
                        std::uint64_t budget = kDefaultBudget) {
  VerifyReport rep;
  for (unsigned n : widths) verify_width<Semantics>(rep, n, budget);
  verify_constants<Semantics>(rep, 4096, 13);
  rep.log.push_back("constants 0..4096 checked");
  verify_reference<Semantics>(rep, seed, 100'000);
  return rep;
}

// ---------------------------------------------------------------------------
// Bounds table

struct TableRow {
  std::string operations;
  std::string lower_bound;
  std::string upper_bound;
  std::string implementation;
  std::string measured_8;
  std::string measured_12;
};

namespace detail {

inline std::string worst_incdec(const GeneratedProgram& g, unsigned n) {
  const auto audit = lower_bound_audit(g, n);
  return std::to_string(audit.worst_incdec) + " inc/dec" + (audit.passed() ? "" : " (FAILED)");
}

template <class F>
std::string time_per_call(F&& f, unsigned width) {
  std::mt19937_64 rng(7);
  std::vector<std::uint64_t> words(1 << 16);
  for (auto& w : words) w = rng() & Word::mask_for(width);
  unsigned sink = 0;
  constexpr int kRounds = 16;
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < kRounds; ++r) {
    for (auto w : words) sink += f(w);
  }
  const auto ns = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - start)
                      .count();
  [[maybe_unused]] volatile unsigned keep = sink;
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << ns / (kRounds * words.size()) << " ns/word";
  return os.str();
}

}  // namespace detail

/// Lower/upper bounds per operation set, annotated with measured worst-case
/// inc/dec counts (restricted machine, n = 8 and 12) or native timings.
/// Timings vary between runs; pass with_timings = false for stable output.
inline std::vector<TableRow> bounds_table(bool with_timings = true) {
  const std::string restricted = "increment, decrement, AND, OR; only constant 0";
  std::vector<TableRow> rows;
  for (auto make : {wegner_program, dense_program, combined_program}) {
    const auto g8 = make(8);
    rows.push_back({restricted, "Omega(min(nu, n-nu))", "O(min(nu, n-nu+log n))", g8.name,
                    detail::worst_incdec(g8, 8), detail::worst_incdec(make(12), 12)});
  }
  rows.push_back({"addition, AND, OR (PAL)", "Omega(log n/log log n)", "O(log^2 n)",
                  "not implemented", "-", "-"});
  rows.push_back({"addition, shift, AND, OR (broadword steps)", "Omega(log n/log log n)",
                  "O(log n)", "broadword_popcount (64-bit)",
                  with_timings ? detail::time_per_call(
                                     [](std::uint64_t w) { return broadword_popcount(w); }, 64)
                               : "-",
                  "-"});
  rows.push_back({"addition, shift, AND, OR, multiplication", "", "O(log* n)", "not implemented",
                  "-", "-"});
  rows.push_back({"addition, shift, AND, OR, division", "", "O(log log n)",
                  "hakmem_popcount (32-bit)",
                  with_timings ? detail::time_per_call(
                                     [](std::uint64_t w) {
                                       return hakmem_popcount(static_cast<std::uint32_t>(w));
                                     },
                                     32)
                               : "-",
                  "-"});
  return rows;
}

inline void write_table(std::ostream& os, const std::vector<TableRow>& rows, Format format) {
  if (format == Format::kCsv) {
    auto q = [](const std::string& s) { return "\"" + s + "\""; };
    os << "operations,lower_bound,upper_bound,implementation,measured_n8,measured_n12\n";
    for (const auto& r : rows) {
      os << q(r.operations) << ',' << q(r.lower_bound) << ',' << q(r.upper_bound) << ','
         << q(r.implementation) << ',' << q(r.measured_8) << ',' << q(r.measured_12) << '\n';
    }
    return;
  }
  os << "| set of operations | lower bound | upper bound | implementation | measured (n=8) | "
        "measured (n=12) |\n"
     << "|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    os << "| " << r.operations << " | " << r.lower_bound << " | " << r.upper_bound << " | "
       << r.implementation << " | " << r.measured_8 << " | " << r.measured_12 << " |\n";
  }
}

}  // namespace sideways
