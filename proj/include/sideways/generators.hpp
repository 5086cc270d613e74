#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sideways/error.hpp"
#include "sideways/program.hpp"
#include "sideways/word.hpp"

namespace sideways {

enum class StepLaw {
  kExact,       // measured incdec_steps == predicted_incdec(n, nu)
  kUpperBound,  // measured incdec_steps <= predicted_incdec(n, nu)
};

/// A restricted-machine program together with its closed-form cost law.
struct GeneratedProgram {
  std::string name;
  unsigned width = 0;
  Program program;
  StepLaw law = StepLaw::kExact;
  /// Increment/decrement count as a function of (width, popcount of input).
  std::function<std::uint64_t(unsigned, unsigned)> predicted_incdec;
  std::string description;
};

namespace detail {

inline void require_width(unsigned n) {
  if (n < 1 || n > Word::kMaxWidth) {
    throw contract_error("width must be in 1..64, got " + std::to_string(n));
  }
}

inline std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

/// Straight-line code that leaves `target` in register `out`, split into
/// groups holding exactly one INC each (a single INC-free group for 0).
///
/// t starts at 0 and runs through 2^i - 1 via t <- t OR (t + 1); each set
/// bit i of the target contributes t + 1 = 2^i, OR-ed into the result.
inline std::vector<std::vector<std::string>> constant_groups(std::uint64_t target,
                                                             const std::string& out,
                                                             const std::string& t,
                                                             const std::string& u) {
  if (target == 0) return {{"ZERO " + out}};
  std::vector<std::vector<std::string>> groups;
  std::vector<std::string> carry{"ZERO " + t};
  auto push = [&](std::vector<std::string> lines) {
    carry.insert(carry.end(), lines.begin(), lines.end());
    groups.push_back(std::move(carry));
    carry.clear();
  };
  const unsigned top = static_cast<unsigned>(std::bit_width(target)) - 1;
  bool first = true;
  for (unsigned i = 0; i <= top; ++i) {
    if ((target >> i) & 1U) {
      if (first) {
        push({"MOV " + out + " " + t, "INC " + out});
        first = false;
      } else {
        push({"MOV " + u + " " + t, "INC " + u, "OR " + out + " " + u});
      }
    }
    if (i < top) push({"MOV " + u + " " + t, "INC " + u, "OR " + t + " " + u});
  }
  return groups;
}

}  // namespace detail

/// INC count of the constant generator: index of the top set bit plus the
/// number of set bits (0 for target 0).
inline std::uint64_t constant_incs(std::uint64_t target) noexcept {
  if (target == 0) return 0;
  return static_cast<std::uint64_t>(std::bit_width(target)) - 1 +
         static_cast<std::uint64_t>(std::popcount(target));
}

/// Multiplier c in total_steps <= c * log2(target + 2) for constant_program.
/// The program executes 3*top + 3*popcount + 1 instructions (2 for target 0),
/// which stays within 6 * log2(target + 2) for every target.
inline constexpr double kConstantStepFactor = 6.0;

inline double constant_step_bound(std::uint64_t target) {
  return kConstantStepFactor * std::log2(static_cast<double>(target) + 2.0);
}

/// Builds `target` from zero with ZERO/MOV/INC/OR only, then outputs it.
inline GeneratedProgram constant_program(std::uint64_t target, unsigned width) {
  detail::require_width(width);
  if (target > Word::mask_for(width)) {
    throw contract_error("target " + std::to_string(target) + " does not fit in " +
                         std::to_string(width) + " bits");
  }
  std::vector<std::string> lines;
  for (auto& g : detail::constant_groups(target, "n", "t", "u")) {
    lines.insert(lines.end(), g.begin(), g.end());
  }
  lines.push_back("OUT n");
  const std::uint64_t incs = constant_incs(target);
  return {"constant", width, parse_program(detail::join_lines(lines)), StepLaw::kExact,
          [incs](unsigned, unsigned) { return incs; },
          "constant " + std::to_string(target) + " from zero by increment and OR"};
}

/// Clears the lowest set bit with x AND (x - 1) until x is zero.
/// incdec = 2 * nu.
inline GeneratedProgram wegner_program(unsigned width) {
  detail::require_width(width);
  static constexpr std::string_view kText =
      "loop: BZ x done\n"
      "MOV t x\n"
      "DEC t\n"
      "AND x t\n"
      "INC c\n"
      "JMP loop\n"
      "done: OUT c\n";
  return {"wegner", width, parse_program(kText), StepLaw::kExact,
          [](unsigned, unsigned nu) { return 2ULL * nu; },
          "clear the lowest one per iteration, counting iterations"};
}

/// Sets b to the width, then sets the lowest clear bit with x OR (x + 1)
/// until x + 1 wraps to zero, decrementing b once per zero bit.
/// incdec = constant_incs(n) + 2 * (n - nu) + 1.
inline GeneratedProgram dense_program(unsigned width) {
  detail::require_width(width);
  std::vector<std::string> lines;
  for (auto& g : detail::constant_groups(width, "b", "t", "u")) {
    lines.insert(lines.end(), g.begin(), g.end());
  }
  lines.insert(lines.end(), {"loop: MOV y x", "INC y", "BZ y done", "OR x y", "DEC b",
                             "JMP loop", "done: OUT b"});
  const std::uint64_t gen = constant_incs(width);
  return {"dense", width, parse_program(detail::join_lines(lines)), StepLaw::kExact,
          [gen](unsigned n, unsigned nu) { return gen + 2ULL * (n - nu) + 1; },
          "count down from the width once per zero bit"};
}

/// Runs the dense and Wegner loops in lock step on private copies of x.
///
/// Each round performs one dense block, then one Wegner iteration. While the
/// width constant is being built, a dense block is a slice of the constant
/// code holding at most two INCs; afterwards it is one loop iteration. The
/// first loop to finish supplies the output. Every unfinished block costs at
/// most 2 inc/dec on either side, which gives
///   incdec <= 2 * min(2 nu, constant_incs(n) + 2 (n - nu) + 1) + 2.
inline GeneratedProgram combined_program(unsigned width) {
  detail::require_width(width);
  const std::vector<std::string> wegner_step{"BZ xw wdone", "MOV tw xw", "DEC tw",
                                             "AND xw tw", "INC cw"};
  std::vector<std::string> lines{"MOV xw x", "MOV xd x"};
  auto groups = detail::constant_groups(width, "b", "t", "u");
  for (std::size_t g = 0; g < groups.size(); g += 2) {
    for (std::size_t k = g; k < std::min(g + 2, groups.size()); ++k) {
      lines.insert(lines.end(), groups[k].begin(), groups[k].end());
    }
    lines.insert(lines.end(), wegner_step.begin(), wegner_step.end());
  }
  lines.insert(lines.end(), {"loop: MOV y xd", "INC y", "BZ y ddone", "OR xd y", "DEC b"});
  lines.insert(lines.end(), wegner_step.begin(), wegner_step.end());
  lines.insert(lines.end(), {"JMP loop", "ddone: OUT b", "wdone: OUT cw"});
  const std::uint64_t gen = constant_incs(width);
  return {"combined", width, parse_program(detail::join_lines(lines)), StepLaw::kUpperBound,
          [gen](unsigned n, unsigned nu) {
            const std::uint64_t wegner = 2ULL * nu;
            const std::uint64_t dense = gen + 2ULL * (n - nu) + 1;
            return 2 * std::min(wegner, dense) + 2;
          },
          "interleaved dense and Wegner loops; first to finish wins"};
}

/// Two-bit counter: zero stays zero; otherwise y = x - 1 is the answer
/// unless it is zero, in which case x (= 01) is.
inline GeneratedProgram twobit_program() {
  static constexpr std::string_view kText =
      "BZ x done\n"
      "MOV y x\n"
      "DEC y\n"
      "BZ y done\n"
      "OUT y\n"
      "done: OUT x\n";
  return {"twobit", 2, parse_program(kText), StepLaw::kExact,
          [](unsigned, unsigned nu) -> std::uint64_t { return nu == 0 ? 0 : 1; },
          "single decrement counter for 2-bit words"};
}

inline const std::vector<std::string_view>& counting_algorithms() {
  static const std::vector<std::string_view> names{"wegner", "dense", "combined", "twobit"};
  return names;
}

/// Looks up a counting program by name. twobit only exists for width 2.
inline GeneratedProgram make_program(std::string_view algo, unsigned width) {
  if (algo == "wegner") return wegner_program(width);
  if (algo == "dense") return dense_program(width);
  if (algo == "combined") return combined_program(width);
  if (algo == "twobit") {
    if (width != 2) throw contract_error("twobit is defined for width 2 only");
    return twobit_program();
  }
  throw contract_error("unknown algorithm '" + std::string(algo) + "'");
}

}  // namespace sideways
