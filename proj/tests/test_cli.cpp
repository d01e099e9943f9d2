#include <gtest/gtest.h>

#include <sstream>

#include "vsalisp/cli.hpp"

namespace vsalisp {
namespace {

RunOptions options(bool oracle = false) {
  RunOptions o;
  o.session.dim = 4096;
  o.session.seed = 1;
  o.oracle_check = oracle;
  return o;
}

struct Transcript {
  int code;
  std::string out;
  std::string err;
};

Transcript repl_on(const std::string& input, const RunOptions& opts = options()) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = repl(opts, in, out, err);
  return {code, out.str(), err.str()};
}

Transcript run_on(const std::string& source, const RunOptions& opts = options()) {
  std::ostringstream out, err;
  const int code = run_source(source, opts, out, err);
  return {code, out.str(), err.str()};
}

TEST(Repl, PrintsOneLinePerExpression) {
  const Transcript t = repl_on("(CONS (QUOTE A) (QUOTE B))\n(CAR (QUOTE (X Y))) (QUOTE Z)\n");
  EXPECT_EQ(t.code, kExitOk);
  EXPECT_EQ(t.out, "(A . B)\nX\nZ\n");
  EXPECT_EQ(t.err, "");
}

TEST(Repl, ParseErrorIsReportedAndLoopContinues) {
  const Transcript t = repl_on("(\n(QUOTE A)\n(A $)\n(QUOTE B)\n");
  EXPECT_EQ(t.code, kExitOk);
  EXPECT_EQ(t.out, "A\nB\n");
  EXPECT_NE(t.err.find("error:"), std::string::npos);
  EXPECT_NE(t.err.find("illegal character"), std::string::npos) << t.err;
}

TEST(Repl, EvaluationErrorContinues) {
  const Transcript t = repl_on("(COND ((QUOTE F) . (QUOTE A)))\n(QUOTE OK)\n");
  EXPECT_EQ(t.code, kExitOk);
  EXPECT_EQ(t.out, "OK\n");
  EXPECT_NE(t.err.find("error:"), std::string::npos);
}

TEST(Repl, StatePersistsAcrossLines) {
  const Transcript t = repl_on("(DEFINE TWICE (LAMBDA (X) (CONS X X)))\n((TWICE (QUOTE Q)))\n");
  EXPECT_EQ(t.out, "*\n(Q . Q)\n");
}

TEST(Repl, NoPromptUnlessInteractive) {
  RunOptions opts = options();
  EXPECT_EQ(repl_on("(QUOTE A)\n", opts).out, "A\n");
  opts.interactive = true;
  EXPECT_EQ(repl_on("(QUOTE A)\n", opts).out, "> A\n> \n");
}

TEST(Repl, OracleAnnotations) {
  const Transcript t = repl_on("(CDR (QUOTE (A B)))\n", options(true));
  EXPECT_EQ(t.out, "(B)\n;; oracle: (B)  MATCH\n");
}

TEST(Run, SuccessExitsZero) {
  const Transcript t = run_on("(QUOTE A)\n; comment\n(CONS (QUOTE A) NIL)\n");
  EXPECT_EQ(t.code, kExitOk);
  EXPECT_EQ(t.out, "A\n(A)\n");
}

TEST(Run, ParseErrorExitsOneWithPosition) {
  const Transcript t = run_on("(QUOTE A)\n(B");
  EXPECT_EQ(t.code, kExitUserError);
  EXPECT_EQ(t.out, "");
  EXPECT_NE(t.err.find("<input>:"), std::string::npos) << t.err;
}

TEST(Run, StopsAtFirstEvaluationError) {
  const Transcript t = run_on("(QUOTE A)\n(COND ((QUOTE F) . (QUOTE A)))\n(QUOTE B)\n");
  EXPECT_EQ(t.code, kExitUserError);
  EXPECT_EQ(t.out, "A\n");
}

TEST(Run, SelfApplicationHitsTheBudget) {
  RunOptions opts = options();
  opts.session.dim = 1024;
  opts.session.step_limit = 2000;
  std::ostringstream out, err;
  const int code = run_script(VSALISP_CORPUS_DIR "/../programs/omega.lisp", opts, out, err);
  EXPECT_EQ(code, kExitUserError);
  EXPECT_NE(err.str().find("evaluation budget exhausted"), std::string::npos) << err.str();
}

TEST(Run, UndefinedFunctionIsData) {
  std::ostringstream out, err;
  const int code =
      run_script(VSALISP_CORPUS_DIR "/../programs/data_call.lisp", options(true), out, err);
  EXPECT_EQ(code, kExitOk) << err.str();
  EXPECT_EQ(out.str(),
            "*\n;; oracle: *  MATCH\n"
            "(G (QUOTE A))\n;; oracle: (G (QUOTE A))  MATCH\n"
            "B\n;; oracle: B  MATCH\n");
}

TEST(Run, MissingFile) {
  std::ostringstream out, err;
  EXPECT_EQ(run_script("/nonexistent/file.lisp", options(), out, err), kExitUserError);
  EXPECT_NE(err.str().find("cannot read"), std::string::npos);
}

TEST(Run, BothSidesFailingCountsAsMatch) {
  const Transcript t = run_on("(COND ((QUOTE F) . (QUOTE A)))\n", options(true));
  EXPECT_EQ(t.code, kExitUserError);
  EXPECT_EQ(t.out, ";; oracle: error: cond exhausted  MATCH\n");
  EXPECT_EQ(t.err, "error: cond exhausted\n");
}

TEST(Run, CarOfAtomIsAMismatch) {
  // The vector CAR of an atom returns some stored row (the contract is void);
  // the oracle rejects it, so oracle-check mode stops here.
  const Transcript t = run_on("(CAR (QUOTE A))\n(QUOTE B)\n", options(true));
  EXPECT_EQ(t.code, kExitUserError);
  EXPECT_NE(t.out.find("MISMATCH"), std::string::npos);
  EXPECT_EQ(t.out.find("\nB\n"), std::string::npos);
}

TEST(Transcripts, ReplAndScriptAgree) {
  const std::string program =
      "(DEFINE SWAP (LAMBDA (X) (CONS (CDR X) (CAR X))))\n"
      "((SWAP (QUOTE (A . B))))\n"
      "(COND ((EQ (QUOTE A) (QUOTE B)) . (QUOTE X)) ((QUOTE T) . (QUOTE Y)))\n";
  const Transcript a = repl_on(program);
  const Transcript b = run_on(program);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, "*\n(B . A)\nY\n");
}

TEST(Transcripts, DeterministicAcrossRuns) {
  const std::string program = "((((LAMBDA (P Q) (CONS Q P)) (QUOTE A)) (QUOTE B)))\n(QUOTE C)\n";
  RunOptions opts = options();
  opts.trace = true;
  std::istringstream in1(program), in2(program);
  std::ostringstream out1, err1, out2, err2;
  repl(opts, in1, out1, err1);
  repl(opts, in2, out2, err2);
  EXPECT_EQ(out1.str(), out2.str());
  EXPECT_EQ(err1.str(), err2.str());
  EXPECT_NE(err1.str().find("step=1 head="), std::string::npos);
}

}  // namespace
}  // namespace vsalisp
