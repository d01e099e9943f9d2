// Command line front end: interactive REPL, script runner and benches.

#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vsalisp/bench.hpp"
#include "vsalisp/cli.hpp"

namespace {

using namespace vsalisp;

struct Flags {
  SessionConfig session;
  std::string memory = "lookup";
  bool oracle_check = false;
  bool trace = false;
};

void add_session_flags(CLI::App& app, Flags& f) {
  auto env = [](const char* name) { return std::string("VSALISP_") + name; };
  app.add_option("--dim", f.session.dim, "Hypervector dimension")->envname(env("DIM"));
  app.add_option("--seed", f.session.seed, "Atom sampling seed")->envname(env("SEED"));
  app.add_option("--theta-up", f.session.thresholds.up, "Upper saturation threshold")
      ->envname(env("THETA_UP"));
  app.add_option("--theta-down", f.session.thresholds.down, "Lower saturation threshold")
      ->envname(env("THETA_DOWN"));
  app.add_option("--memory", f.memory, "Cleanup memory: lookup, mhn, minerva2, hopfield, grossberg")
      ->envname(env("MEMORY"));
  app.add_option("--beta", f.session.memory.beta, "MHN inverse temperature")->envname(env("BETA"));
  app.add_option("--gamma", f.session.memory.gamma, "Update-rule softmax temperature")
      ->envname(env("GAMMA"));
  app.add_option("--alpha", f.session.memory.alpha, "Update-rule multiplier")->envname(env("ALPHA"));
  app.add_option("--eta", f.session.memory.eta, "Learning rate")->envname(env("ETA"));
  app.add_option("--rho", f.session.memory.rho, "MINERVA2 power")->envname(env("RHO"));
  app.add_option("--step-limit", f.session.step_limit, "Driver steps per top-level expression")
      ->envname(env("STEP_LIMIT"));
  app.add_flag("--oracle-check", f.oracle_check, "Compare every result with the symbolic oracle")
      ->envname(env("ORACLE_CHECK"));
  app.add_flag("--trace", f.trace, "Print one line per evaluation step to stderr")
      ->envname(env("TRACE"));
}

RunOptions resolve(const Flags& f) {
  RunOptions opts;
  opts.session = f.session;
  const auto kind = parse_memory_kind(f.memory);
  if (!kind) throw Error("unknown memory kind " + f.memory);
  opts.session.memory_kind = *kind;
  opts.session.validate();
  opts.oracle_check = f.oracle_check;
  opts.trace = f.trace;
  return opts;
}

int write_report(const Report& report, const std::string& path) {
  const std::string text = report.to_tsv();
  if (path.empty() || path == "-") {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "error: cannot write " << path << '\n';
    return kExitUserError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lisp interpreter over holographic reduced representations"};
  app.require_subcommand(0, 1);
  Flags flags;
  add_session_flags(app, flags);

  auto* repl_cmd = app.add_subcommand("repl", "Interactive read-eval-print loop (default)");

  std::string script;
  auto* run_cmd = app.add_subcommand("run", "Evaluate a script file");
  run_cmd->add_option("file", script, "Script of s-expressions")->required();

  std::string bench_kind;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark and write a TSV report");
  bench_cmd->add_option("kind", bench_kind, "capacity, kanerva or update_rules")
      ->required()
      ->check(CLI::IsMember({"capacity", "kanerva", "update_rules"}));
  bench_cmd->add_option("-o,--output", bench_out, "Report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUserError;
  }

  try {
    const RunOptions opts = resolve(flags);
    if (*run_cmd) return run_script(script, opts, std::cout, std::cerr);
    if (*bench_cmd) {
      if (bench_kind == "capacity") return write_report(bench_capacity(opts.session), bench_out);
      if (bench_kind == "kanerva") return write_report(bench_kanerva(opts.session), bench_out);
      return write_report(bench_update_rules(opts.session), bench_out);
    }
    (void)repl_cmd;
    RunOptions interactive = opts;
    interactive.interactive = isatty(STDIN_FILENO) != 0;
    return repl(interactive, std::cin, std::cout, std::cerr);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUserError;
  }
}
