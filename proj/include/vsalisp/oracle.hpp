#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "vsalisp/branch.hpp"
#include "vsalisp/sexpr.hpp"

namespace vsalisp {

struct OracleLimits {
  std::size_t step_limit = 100000;
  std::size_t depth_limit = 1000;
};

/// Purely symbolic reference interpreter for the same Lisp subset the vector
/// evaluator accepts. It makes the same evaluation decisions in the same
/// order, so its branch log lines up with EvalSession's entry for entry.
class Oracle {
 public:
  explicit Oracle(OracleLimits limits = {}) : limits_(limits) {}

  /// Evaluates one top-level expression; DEFINE side effects persist.
  SExpr eval(const SExpr& e);

  /// One curried application of (LAMBDA x e) to the argument list a.
  SExpr apply_lambda(const SExpr& lam, const SExpr& a);
  /// Replaces the first parameter of x by the first element of a inside e.
  SExpr subst(const SExpr& x, const SExpr& e, const SExpr& a);

  const std::map<std::string, SExpr, std::less<>>& definitions() const { return defs_; }
  const BranchLog& branch_log() const { return log_; }
  void clear_branch_log() { log_.clear(); }
  std::size_t steps() const { return steps_; }
  std::size_t gensym_count() const { return gensym_; }

 private:
  class Frame;
  SExpr eval_inner(SExpr e);
  SExpr relabel(const SExpr& lam);
  void tick();
  void note(Branch b) { log_.push_back(b); }

  OracleLimits limits_;
  std::map<std::string, SExpr, std::less<>> defs_;
  BranchLog log_;
  std::size_t steps_ = 0;
  std::size_t depth_ = 0;
  std::size_t gensym_ = 0;
};

}  // namespace vsalisp
