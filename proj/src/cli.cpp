#include "vsalisp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace vsalisp {

namespace {

OracleLimits oracle_limits(const SessionConfig& c) { return {c.step_limit, c.depth_limit}; }

void print_outcome(const Outcome& o, std::ostream& out, std::ostream& err) {
  if (o.value) {
    out << *o.value << '\n';
  } else {
    err << "error: " << o.error << '\n';
  }
  if (o.match) out << ";; oracle: " << o.oracle << "  " << (*o.match ? "MATCH" : "MISMATCH") << '\n';
}

}  // namespace

Interpreter::Interpreter(const RunOptions& opts, std::ostream* trace)
    : opts_(opts), session_(opts.session), oracle_(oracle_limits(opts.session)) {
  if (opts_.trace) session_.set_trace(trace);
}

Outcome Interpreter::evaluate(const SExpr& e) {
  Outcome o;
  try {
    o.value = print(session_.evaluate(e));
  } catch (const Error& ex) {
    o.error = ex.what();
  }
  if (opts_.oracle_check) {
    std::optional<std::string> expected;
    try {
      expected = print(oracle_.eval(e));
      o.oracle = *expected;
    } catch (const Error& ex) {
      o.oracle = std::string("error: ") + ex.what();
    }
    // Both sides failing counts as agreement: the program is outside the
    // language either way.
    o.match = expected ? o.value == expected : !o.value.has_value();
  }
  return o;
}

int repl(const RunOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    Interpreter interp(opts, &err);
    std::string line;
    auto prompt = [&] {
      if (opts.interactive) out << "> " << std::flush;
    };
    prompt();
    while (std::getline(in, line)) {
      std::vector<SExpr> exprs;
      try {
        exprs = parse_all(line);
      } catch (const ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        prompt();
        continue;
      }
      for (const auto& e : exprs) print_outcome(interp.evaluate(e), out, err);
      prompt();
    }
    if (opts.interactive) out << '\n';
    return kExitOk;
  } catch (const InvariantViolation& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kExitInvariant;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUserError;
  }
}

int run_source(std::string_view source, const RunOptions& opts, std::ostream& out,
               std::ostream& err, std::string_view origin) {
  try {
    std::vector<SExpr> exprs;
    try {
      exprs = parse_all(source);
    } catch (const ParseError& ex) {
      err << origin << ": " << ex.what() << '\n';
      return kExitUserError;
    }
    Interpreter interp(opts, &err);
    for (const auto& e : exprs) {
      const Outcome o = interp.evaluate(e);
      print_outcome(o, out, err);
      if (!o.value) return kExitUserError;
      if (o.match && !*o.match) return kExitUserError;
    }
    return kExitOk;
  } catch (const InvariantViolation& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kExitInvariant;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUserError;
  }
}

int run_script(const std::string& path, const RunOptions& opts, std::ostream& out,
               std::ostream& err) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot read " << path << '\n';
    return kExitUserError;
  }
  std::ostringstream text;
  text << file.rdbuf();
  return run_source(text.str(), opts, out, err, path);
}

}  // namespace vsalisp
