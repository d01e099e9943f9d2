#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "vsalisp/config.hpp"
#include "vsalisp/eval.hpp"
#include "vsalisp/oracle.hpp"

namespace vsalisp {

enum ExitCode : int { kExitOk = 0, kExitUserError = 1, kExitInvariant = 2 };

struct RunOptions {
  SessionConfig session{};
  bool oracle_check = false;
  bool trace = false;
  /// Print prompts (only meaningful for the REPL on a terminal).
  bool interactive = false;
};

/// Result of evaluating one top-level expression.
struct Outcome {
  std::optional<std::string> value;  // printed result, absent on error
  std::string error;
  std::optional<bool> match;         // set in oracle-check mode
  std::string oracle;                // oracle's printed result or error
};

/// An EvalSession plus, in oracle-check mode, a symbolic twin fed the same
/// expressions. State persists across calls.
class Interpreter {
 public:
  explicit Interpreter(const RunOptions& opts, std::ostream* trace = nullptr);

  Outcome evaluate(const SExpr& e);
  EvalSession& session() { return session_; }

 private:
  RunOptions opts_;
  EvalSession session_;
  Oracle oracle_;
};

/// Reads `in` line by line; every line holds zero or more complete
/// expressions. Prints one result line per expression. Errors are reported
/// and the loop continues.
int repl(const RunOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);

/// Evaluates every expression in `source`. Stops at the first error, and in
/// oracle-check mode at the first mismatch.
int run_source(std::string_view source, const RunOptions& opts, std::ostream& out,
               std::ostream& err, std::string_view origin = "<input>");

int run_script(const std::string& path, const RunOptions& opts, std::ostream& out,
               std::ostream& err);

}  // namespace vsalisp
