#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "sideways/error.hpp"

namespace sideways {

/// Index into Program::registers. Register 0 is always the input "x".
using Reg = std::uint32_t;
/// Index into Program::code. A target equal to code.size() means "end".
using Target = std::uint32_t;

inline constexpr Reg kInputRegister = 0;

namespace isa {
#define SIDEWAYS_OP(T, ...)                                \
  struct T {                                               \
    __VA_ARGS__                                            \
    friend bool operator==(const T&, const T&) = default;  \
  };
SIDEWAYS_OP(Zero, Reg r;)
SIDEWAYS_OP(Mov, Reg r; Reg s;)
SIDEWAYS_OP(Inc, Reg r;)
SIDEWAYS_OP(Dec, Reg r;)
SIDEWAYS_OP(And, Reg r; Reg s;)
SIDEWAYS_OP(Or, Reg r; Reg s;)
SIDEWAYS_OP(Bz, Reg r; Target to;)
SIDEWAYS_OP(Bnz, Reg r; Target to;)
SIDEWAYS_OP(Beq, Reg r; Reg s; Target to;)
SIDEWAYS_OP(Blt, Reg r; Reg s; Target to;)
SIDEWAYS_OP(Jmp, Target to;)
SIDEWAYS_OP(Out, Reg r;)
#undef SIDEWAYS_OP
}  // namespace isa

using Instruction = std::variant<isa::Zero, isa::Mov, isa::Inc, isa::Dec, isa::And, isa::Or,
                                 isa::Bz, isa::Bnz, isa::Beq, isa::Blt, isa::Jmp, isa::Out>;

struct Label {
  std::string name;
  Target at;
  friend bool operator==(const Label&, const Label&) = default;
};

/// A resolved program for the restricted machine: increment, decrement,
/// AND, OR, assignment, and comparisons against zero or between registers.
/// The only constant the language can express is zero.
struct Program {
  std::vector<Instruction> code;
  /// Register names in order of first appearance; registers[0] == "x".
  std::vector<std::string> registers{"x"};
  /// Labels in source order. Several labels may name the same position.
  std::vector<Label> labels;

  std::size_t size() const noexcept { return code.size(); }

  friend bool operator==(const Program&, const Program&) = default;
};

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

inline bool looks_numeric(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

enum class Operand { kReg, kLabel };

struct OpcodeShape {
  std::string_view name;
  std::vector<Operand> operands;
};

inline const std::vector<OpcodeShape>& opcode_table() {
  using enum Operand;
  static const std::vector<OpcodeShape> table = {
      {"ZERO", {kReg}},         {"MOV", {kReg, kReg}},        {"INC", {kReg}},
      {"DEC", {kReg}},          {"AND", {kReg, kReg}},        {"OR", {kReg, kReg}},
      {"BZ", {kReg, kLabel}},   {"BNZ", {kReg, kLabel}},      {"BEQ", {kReg, kReg, kLabel}},
      {"BLT", {kReg, kReg, kLabel}}, {"JMP", {kLabel}},        {"OUT", {kReg}},
  };
  return table;
}

struct PendingLine {
  std::size_t line;
  std::size_t opcode;  // index into opcode_table(), which matches Instruction's index
  std::vector<std::string> operands;
};

template <std::size_t I = 0>
Instruction make_instruction(std::size_t index, const std::vector<std::uint32_t>& ops) {
  if constexpr (I < std::variant_size_v<Instruction>) {
    if (index == I) {
      using T = std::variant_alternative_t<I, Instruction>;
      T t{};
      if constexpr (requires { t.r; }) t.r = ops.at(0);
      if constexpr (requires { t.s; }) t.s = ops.at(1);
      if constexpr (requires { t.to; }) t.to = ops.back();
      return t;
    }
    return make_instruction<I + 1>(index, ops);
  } else {
    throw contract_error("bad opcode index");
  }
}

}  // namespace detail

/// Parses the line-oriented program text:
///
///     [label:] OPCODE operand...   ; comment
///
/// Operands are whitespace- or comma-separated. Registers are declared
/// implicitly and start at zero; "x" holds the input. Numeric literals are
/// rejected outright: the only constant is the one ZERO assigns.
inline Program parse_program(std::string_view text) {
  Program program;
  std::map<std::string, Target, std::less<>> label_at;
  std::map<std::string, Reg, std::less<>> reg_index{{"x", kInputRegister}};
  std::vector<detail::PendingLine> pending;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;

    if (auto semi = line.find(';'); semi != std::string::npos) line.erase(semi);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), '\t', ' ');
    std::replace(line.begin(), line.end(), '\r', ' ');

    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    // "name:" prefix, possibly glued to the opcode ("done:OUT c").
    if (!tokens.empty()) {
      auto colon = tokens.front().find(':');
      if (colon != std::string::npos) {
        std::string name = tokens.front().substr(0, colon);
        std::string rest = tokens.front().substr(colon + 1);
        tokens.erase(tokens.begin());
        if (!rest.empty()) tokens.insert(tokens.begin(), rest);
        if (!detail::is_identifier(name)) {
          throw parse_error(line_no, "invalid label '" + name + "'");
        }
        if (label_at.count(name)) {
          throw parse_error(line_no, "duplicate label '" + name + "'");
        }
        auto at = static_cast<Target>(pending.size());
        label_at.emplace(name, at);
        program.labels.push_back({name, at});
      } else if (tokens.size() > 1 && tokens[1] == ":") {
        throw parse_error(line_no, "label must be written as 'name:'");
      }
    }
    if (tokens.empty()) continue;

    const auto& table = detail::opcode_table();
    std::string op = detail::upper(tokens.front());
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const detail::OpcodeShape& s) { return s.name == op; });
    if (it == table.end()) {
      throw parse_error(line_no, "unknown opcode '" + tokens.front() + "'");
    }
    std::vector<std::string> operands(tokens.begin() + 1, tokens.end());
    if (operands.size() != it->operands.size()) {
      throw parse_error(line_no, std::string(it->name) + " expects " +
                                     std::to_string(it->operands.size()) + " operand(s), got " +
                                     std::to_string(operands.size()));
    }
    for (std::size_t k = 0; k < operands.size(); ++k) {
      const auto& o = operands[k];
      if (detail::looks_numeric(o)) {
        throw parse_error(line_no, "constant '" + o +
                                       "' not allowed; the only constant is zero (use ZERO)");
      }
      if (!detail::is_identifier(o)) {
        throw parse_error(line_no, "invalid operand '" + o + "'");
      }
      if (it->operands[k] == detail::Operand::kReg && !reg_index.count(o)) {
        reg_index.emplace(o, static_cast<Reg>(program.registers.size()));
        program.registers.push_back(o);
      }
    }
    pending.push_back({line_no, static_cast<std::size_t>(it - table.begin()), std::move(operands)});
  }

  program.code.reserve(pending.size());
  for (const auto& p : pending) {
    const auto& shape = detail::opcode_table()[p.opcode];
    std::vector<std::uint32_t> ops;
    for (std::size_t k = 0; k < p.operands.size(); ++k) {
      const auto& o = p.operands[k];
      if (shape.operands[k] == detail::Operand::kReg) {
        ops.push_back(reg_index.at(o));
      } else {
        auto l = label_at.find(o);
        if (l == label_at.end()) throw parse_error(p.line, "unresolved label '" + o + "'");
        ops.push_back(l->second);
      }
    }
    program.code.push_back(detail::make_instruction(p.opcode, ops));
  }
  return program;
}

/// Gives every branch target a label, inventing "L<index>" names where the
/// program has none. Needed before printing programs built in memory.
inline Program with_target_labels(Program p) {
  auto has_label = [&](Target t) {
    return std::any_of(p.labels.begin(), p.labels.end(), [&](const Label& l) { return l.at == t; });
  };
  std::vector<Target> targets;
  for (const auto& ins : p.code) {
    std::visit([&](const auto& i) {
      if constexpr (requires { i.to; }) targets.push_back(i.to);
    }, ins);
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (Target t : targets) {
    if (!has_label(t)) p.labels.push_back({"L" + std::to_string(t), t});
  }
  std::stable_sort(p.labels.begin(), p.labels.end(),
                   [](const Label& a, const Label& b) { return a.at < b.at; });
  return p;
}

inline std::string to_string(const Program& p, const Instruction& ins) {
  auto label_of = [&](Target t) -> std::string {
    for (auto it = p.labels.rbegin(); it != p.labels.rend(); ++it) {
      if (it->at == t) return it->name;
    }
    throw contract_error("branch target " + std::to_string(t) + " has no label");
  };
  const auto& name = detail::opcode_table()[ins.index()].name;
  std::string out(name);
  std::visit([&](const auto& i) {
    if constexpr (requires { i.r; }) out += " " + p.registers.at(i.r);
    if constexpr (requires { i.s; }) out += " " + p.registers.at(i.s);
    if constexpr (requires { i.to; }) out += " " + label_of(i.to);
  }, ins);
  return out;
}

/// Renders a program in the text format accepted by parse_program.
/// parse_program(to_text(p)) == p for every program whose targets are labeled.
inline std::string to_text(const Program& p) {
  std::string out;
  std::size_t next_label = 0;
  for (std::size_t i = 0; i <= p.code.size(); ++i) {
    std::vector<const Label*> here;
    while (next_label < p.labels.size() && p.labels[next_label].at == i) {
      here.push_back(&p.labels[next_label++]);
    }
    if (i == p.code.size()) {
      for (const auto* l : here) out += l->name + ":\n";
      break;
    }
    for (std::size_t k = 0; k + 1 < here.size(); ++k) out += here[k]->name + ":\n";
    if (!here.empty()) out += here.back()->name + ": ";
    out += to_string(p, p.code[i]) + "\n";
  }
  if (next_label != p.labels.size()) {
    throw contract_error("labels must be sorted by position and lie within the program");
  }
  return out;
}

}  // namespace sideways
