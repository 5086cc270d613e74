// sideways: command-line front end for the restricted-machine popcount lab.
//
// Exit codes: 0 success, 1 a check failed, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sideways/sideways.hpp"

namespace {

using namespace sideways;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::vector<unsigned> widths;
  unsigned width = 0;
  std::string algo;
  std::string program_path;
  std::string input_bits;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t target = 0;
  std::size_t count = 10'000;
  std::size_t samples = 10'000;
  std::size_t max_len = 24;
  std::size_t inputs = 1;
  unsigned min_width = 4;
  unsigned max_width = 16;
  std::string format = "csv";
  std::string out;
  std::string mutant;
  bool trace = false;
  bool no_timings = false;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw contract_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Format parse_format(const std::string& f) { return f == "markdown" ? Format::kMarkdown : Format::kCsv; }

Program load_program(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw contract_error("cannot read program file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

template <class Semantics>
int cmd_verify(const RunConfig& cfg) {
  std::vector<unsigned> widths = cfg.widths;
  if (widths.empty()) {
    for (unsigned n = 2; n <= 12; ++n) widths.push_back(n);
  }
  for (unsigned n : widths) {
    if (n < 1 || n > 12) throw contract_error("verify widths must be in 1..12");
  }
  const auto rep = verify_all<Semantics>(widths, cfg.seed, cfg.budget);
  for (const auto& line : rep.log) std::cerr << line << '\n';
  Output out(cfg.out);
  write_failures_csv(out.stream(), rep);
  std::cerr << (rep.passed() ? "verify: all checks passed\n"
                             : "verify: " + std::to_string(rep.failures.size()) + " failure(s)\n");
  return rep.passed() ? kOk : kCheckFailed;
}

int cmd_sweep(const RunConfig& cfg) {
  Program program;
  if (!cfg.program_path.empty()) {
    program = load_program(cfg.program_path);
  } else {
    if (cfg.algo.empty()) throw contract_error("sweep needs --algo or --program");
    program = make_program(cfg.algo, cfg.width).program;
  }
  const auto rows = sweep(program, cfg.width, cfg.seed, cfg.samples, cfg.budget);
  Output out(cfg.out);
  write_sweep(out.stream(), rows, parse_format(cfg.format));
  return kOk;
}

template <class Semantics>
int cmd_fuzz(const RunConfig& cfg) {
  FuzzConfig fc;
  fc.seed = cfg.seed;
  fc.program_count = cfg.count;
  fc.budget = cfg.budget;
  fc.max_len = cfg.max_len;
  fc.min_width = cfg.min_width;
  fc.max_width = cfg.max_width;
  fc.inputs_per_program = cfg.inputs;
  validate(fc);
  const auto rep = fuzz_invariant<Semantics>(fc);
  Output out(cfg.out);
  auto& os = out.stream();
  if (parse_format(cfg.format) == Format::kCsv) {
    os << "seed,programs,runs,halted_out,fell_off_end,budget_exhausted,schedule_done,cycled,"
          "violations,violating_runs\n"
       << fc.seed << ',' << rep.programs << ',' << rep.runs << ',' << rep.halted_out << ','
       << rep.fell_off_end << ',' << rep.budget_exhausted << ',' << rep.schedule_done << ','
       << rep.cycled << ',' << rep.violations << ',' << rep.violating_runs << '\n';
  } else {
    os << "| seed | programs | runs | violations | violating runs |\n|---|---|---|---|---|\n"
       << "| " << fc.seed << " | " << rep.programs << " | " << rep.runs << " | " << rep.violations
       << " | " << rep.violating_runs << " |\n";
  }
  std::cerr << "fuzz: " << rep.runs << " runs (" << rep.halted_out << " out, " << rep.fell_off_end
            << " fell off, " << rep.budget_exhausted << " budget, " << rep.schedule_done
            << " past schedule, " << rep.cycled << " cycled), " << rep.violations
            << " violation(s)\n";
  for (const auto& w : rep.witnesses) {
    std::cerr << "witness: input " << w.input_bits << " (" << to_string(w.params) << "), register "
              << w.first.register_name << " prefix " << w.first.prefix << " at i="
              << w.first.incdec_index << "\n"
              << w.program_text;
  }
  return rep.violations == 0 ? kOk : kCheckFailed;
}

int cmd_gen(const RunConfig& cfg) {
  const auto g = cfg.algo == "constant" ? constant_program(cfg.target, cfg.width)
                                        : make_program(cfg.algo, cfg.width);
  Output out(cfg.out);
  out.stream() << to_text(g.program);
  return kOk;
}

int cmd_table(const RunConfig& cfg) {
  Output out(cfg.out);
  write_table(out.stream(), bounds_table(!cfg.no_timings), parse_format(cfg.format));
  return kOk;
}

int cmd_run(const RunConfig& cfg) {
  const auto program = load_program(cfg.program_path);
  const Word x = Word::from_bits(cfg.input_bits);
  const auto r = execute(program, x, cfg.budget, cfg.trace);
  auto& os = std::cout;
  if (r.trace) {
    os << "i,pc";
    for (const auto& name : r.trace->register_names) os << ',' << name;
    os << '\n';
    for (const auto& s : r.trace->snapshots) {
      os << s.incdec_index << ',' << s.pc;
      for (const auto& w : s.registers) os << ',' << w.to_bits();
      os << '\n';
    }
  }
  os << "output=" << (r.output ? std::to_string(r.output->value()) : std::string("none"))
     << " halt=" << to_string(r.halt_reason) << " incdec_steps=" << r.counters.incdec_steps
     << " total_steps=" << r.counters.total_steps << '\n';
  return r.output ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population count on a restricted increment/decrement/AND/OR machine"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::vector<std::string> algos{"wegner", "dense", "combined", "twobit"};
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--budget", cfg.budget, "Maximum executed instructions per run")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "markdown"}));
    sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
  };
  auto width_range = CLI::Range(1u, Word::kMaxWidth);

  auto* verify = app.add_subcommand("verify", "Exhaustive correctness, step-law and bound checks");
  verify->add_option("--width", cfg.widths, "Widths to verify (default 2..12)")
      ->check(CLI::Range(1u, 12u));
  verify->add_option("--mutant", cfg.mutant, "Run under a mutated machine")
      ->check(CLI::IsMember({"non-wrapping-inc"}));
  add_common(verify);

  auto* sweep_cmd = app.add_subcommand("sweep", "Per-input measurements as CSV");
  sweep_cmd->add_option("--width", cfg.width, "Word width")->required()->check(width_range);
  sweep_cmd->add_option("--algo", cfg.algo, "Counting program")->check(CLI::IsMember(algos));
  sweep_cmd->add_option("--program", cfg.program_path, "Program file instead of --algo");
  sweep_cmd->add_option("--samples", cfg.samples, "Sampled inputs when width > 20");
  add_common(sweep_cmd);

  auto* fuzz = app.add_subcommand("fuzz", "Random programs against the prefix invariant");
  fuzz->add_option("--count", cfg.count, "Number of random programs");
  fuzz->add_option("--inputs", cfg.inputs, "Adversary inputs per program")
      ->check(CLI::PositiveNumber);
  fuzz->add_option("--max-len", cfg.max_len, "Maximum program length")->check(CLI::PositiveNumber);
  fuzz->add_option("--min-width", cfg.min_width, "Smallest input width")->check(width_range);
  fuzz->add_option("--max-width", cfg.max_width, "Largest input width")->check(width_range);
  fuzz->add_option("--mutant", cfg.mutant, "Run under a mutated machine")
      ->check(CLI::IsMember({"non-wrapping-inc"}));
  add_common(fuzz);

  auto* gen = app.add_subcommand("gen", "Print a generated program as text");
  gen->add_option("--algo", cfg.algo, "Program")
      ->required()
      ->check(CLI::IsMember({"wegner", "dense", "combined", "twobit", "constant"}));
  gen->add_option("--width", cfg.width, "Word width")->required()->check(width_range);
  gen->add_option("--target", cfg.target, "Value for --algo constant");
  gen->add_option("--out", cfg.out, "Write output to PATH instead of stdout");

  auto* table = app.add_subcommand("table", "Bounds table with measured columns");
  table->add_flag("--no-timings", cfg.no_timings, "Omit native timing columns");
  table->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "markdown"}));
  table->add_option("--out", cfg.out, "Write output to PATH instead of stdout");

  auto* run_cmd = app.add_subcommand("run", "Execute a program file on one input");
  run_cmd->add_option("--program", cfg.program_path, "Program file")->required();
  run_cmd->add_option("--input", cfg.input_bits, "Input as MSB-first bits")->required();
  run_cmd->add_option("--budget", cfg.budget, "Maximum executed instructions")
      ->check(CLI::PositiveNumber);
  run_cmd->add_flag("--trace", cfg.trace, "Print the register trace as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (table->parsed() && table->count("--format") == 0) cfg.format = "markdown";

  try {
    const bool mutant = cfg.mutant == "non-wrapping-inc";
    if (verify->parsed()) {
      return mutant ? cmd_verify<NonWrappingIncSemantics>(cfg) : cmd_verify<WrappingSemantics>(cfg);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(cfg);
    if (fuzz->parsed()) {
      return mutant ? cmd_fuzz<NonWrappingIncSemantics>(cfg) : cmd_fuzz<WrappingSemantics>(cfg);
    }
    if (gen->parsed()) return cmd_gen(cfg);
    if (table->parsed()) return cmd_table(cfg);
    if (run_cmd->parsed()) return cmd_run(cfg);
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
