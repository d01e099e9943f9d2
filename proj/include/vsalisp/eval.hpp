#pragma once

#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

#include "vsalisp/atom_registry.hpp"
#include "vsalisp/branch.hpp"
#include "vsalisp/cleanup.hpp"
#include "vsalisp/codec.hpp"
#include "vsalisp/config.hpp"
#include "vsalisp/sexpr.hpp"

namespace vsalisp {

enum class Builtin { Cons, Car, Cdr, Eq, Atom, Quote, Cond, Define, Lambda, None };

std::string_view to_string(Builtin b);

/// Result of a function-namespace call: either the stored body consed onto
/// the arguments (evaluation continues) or the unevaluated form.
struct FcallResult {
  Hypervector form;
  bool applied = false;
};

/// One interpreter instance: atom registry, expression memory M, function
/// namespace F and the evaluator over them. Single-threaded; every cons
/// mutates M.
class EvalSession {
 public:
  explicit EvalSession(SessionConfig config = {});

  EvalSession(const EvalSession&) = delete;
  EvalSession& operator=(const EvalSession&) = delete;

  const SessionConfig& config() const { return config_; }
  AtomRegistry& registry() { return registry_; }
  CleanupMemory& memory() { return memory_; }
  const CleanupMemory& functions() const { return functions_; }
  Codec& codec() { return codec_; }
  const TagSet& tags() const { return codec_.tags(); }

  // Lisp primitives over vectors.
  Hypervector vcons(const Hypervector& a, const Hypervector& b) { return codec_.cons(a, b); }
  Hypervector vcar(const Hypervector& c) const { return codec_.car(c); }
  Hypervector vcdr(const Hypervector& c) const { return codec_.cdr(c); }
  /// sim(a, b) T + (1 - sim(a, b)) F
  Hypervector veq(const Hypervector& a, const Hypervector& b) const;
  /// sim(n, NIL) M(sim(a, phi) F + (2 down - sim(a, phi))+ T) + (2 down - sim(n, NIL))+ F
  Hypervector vatom(const Hypervector& a, const Hypervector& n) const;
  Hypervector vquote(const Hypervector& e) const { return e; }
  /// Binds name a to e in F (replacing an older binding) and returns the DONE atom.
  Hypervector vdefine(const Hypervector& a, const Hypervector& e);
  /// First clause of r whose evaluated condition is T-similar; returns its
  /// (unevaluated) result expression.
  Hypervector vcond(const Hypervector& r);
  /// Renames the parameters x to fresh atoms throughout e.
  std::pair<Hypervector, Hypervector> relabel(const Hypervector& x, const Hypervector& e);
  /// One curried application of a lambda to the argument list a.
  Hypervector vlambda_apply(const Hypervector& lam, const Hypervector& a);
  /// Substitutes car(a) for car(x) throughout e.
  Hypervector vlambda_subst(const Hypervector& x, const Hypervector& e, const Hypervector& a);
  FcallResult vfcall(const Hypervector& f, const Hypervector& a);
  bool truthy(const Hypervector& v) const;

  /// Builds (LAMBDA x e).
  Hypervector make_lambda(const Hypervector& x, const Hypervector& e);
  bool is_lambda(const Hypervector& v) const;
  /// Argmax builtin for an atomic head, None when below theta_up.
  std::pair<Builtin, double> match_builtin(const Hypervector& head) const;

  /// The evaluation driver.
  Hypervector eval(const Hypervector& v);

  /// encode -> eval -> decode, then compact() when configured.
  SExpr evaluate(const SExpr& e);

  /// Resets M to NIL, T, F plus the pairs reachable from F's definitions,
  /// re-encoding each definition from its decoded form. Leaves everything
  /// untouched and returns false if some definition fails to decode.
  bool compact();

  const BranchLog& branch_log() const { return log_; }
  void clear_branch_log() { log_.clear(); }
  std::size_t steps() const { return steps_; }
  std::size_t gensym_count() const { return gensym_; }

  /// Per-step trace lines go here when set.
  void set_trace(std::ostream* out) { trace_ = out; }

 private:
  class Frame;
  void tick();
  void preload();
  void note(Branch b) { log_.push_back(b); }
  Hypervector select(double gate, const LazyVector& value, const LazyVector& rest);
  void trace_step(std::string_view head, double sim);

  SessionConfig config_;
  AtomRegistry registry_;
  CleanupMemory memory_;
  CleanupMemory functions_;
  Codec codec_;
  std::vector<std::pair<Builtin, Hypervector>> builtins_;
  Hypervector lambda_tag_;

  BranchLog log_;
  std::size_t steps_ = 0;
  std::size_t depth_ = 0;
  std::size_t gensym_ = 0;
  std::ostream* trace_ = nullptr;
};

}  // namespace vsalisp
