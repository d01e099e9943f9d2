#include "vsalisp/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

namespace vsalisp {

std::string_view to_string(Builtin b) {
  switch (b) {
    case Builtin::Cons: return "CONS";
    case Builtin::Car: return "CAR";
    case Builtin::Cdr: return "CDR";
    case Builtin::Eq: return "EQ";
    case Builtin::Atom: return "ATOM";
    case Builtin::Quote: return "QUOTE";
    case Builtin::Cond: return "COND";
    case Builtin::Define: return "DEFINE";
    case Builtin::Lambda: return "LAMBDA";
    case Builtin::None: return "";
  }
  return "";
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::CondTake: return "cond.take";
    case Branch::CondSkip: return "cond.skip";
    case Branch::LambdaRelabel: return "lambda.relabel";
    case Branch::LambdaBody: return "lambda.body";
    case Branch::LambdaEmpty: return "lambda.empty";
    case Branch::LambdaCurry: return "lambda.curry";
    case Branch::SubstNoParams: return "subst.no_params";
    case Branch::SubstEmpty: return "subst.empty";
    case Branch::SubstParam: return "subst.param";
    case Branch::SubstAtom: return "subst.atom";
    case Branch::SubstHeadParam: return "subst.head_param";
    case Branch::SubstHeadPair: return "subst.head_pair";
    case Branch::SubstHeadOther: return "subst.head_other";
    case Branch::FcallDefined: return "fcall.defined";
    case Branch::FcallData: return "fcall.data";
    case Branch::Blend: return "blend";
  }
  return "?";
}

void SessionConfig::validate() const {
  if (dim == 0) throw Error("dimension must be positive");
  thresholds.validate();
  if (step_limit == 0) throw Error("step limit must be positive");
  if (depth_limit == 0) throw Error("depth limit must be positive");
}

/// Bounds native recursion; every nested evaluator call holds one.
class EvalSession::Frame {
 public:
  explicit Frame(EvalSession& s) : s_(s) {
    if (++s_.depth_ > s_.config_.depth_limit) {
      --s_.depth_;
      throw BudgetExhausted("recursion depth");
    }
  }
  ~Frame() { --s_.depth_; }
  Frame(const Frame&) = delete;
  Frame& operator=(const Frame&) = delete;

 private:
  EvalSession& s_;
};

namespace {

SessionConfig checked(SessionConfig c) {
  c.validate();
  return c;
}

}  // namespace

EvalSession::EvalSession(SessionConfig config)
    : config_(checked(config)),
      registry_(config_.dim, config_.seed),
      memory_(config_.dim, config_.memory_kind, config_.memory),
      functions_(config_.dim, MemoryKind::Lookup, config_.memory),
      codec_(registry_, memory_, config_.thresholds, config_.decode_depth_limit) {
  for (Builtin b : {Builtin::Cons, Builtin::Car, Builtin::Cdr, Builtin::Eq, Builtin::Atom,
                    Builtin::Quote, Builtin::Cond, Builtin::Define, Builtin::Lambda}) {
    builtins_.emplace_back(b, registry_.atom(to_string(b)));
  }
  lambda_tag_ = registry_.atom("LAMBDA");
  preload();
}

void EvalSession::preload() {
  // ATOM cleans its T/F blend through M, so both must be retrievable.
  memory_.append_trace(tags().nil);
  memory_.append_trace(tags().t);
  memory_.append_trace(tags().f);
}

void EvalSession::tick() {
  if (++steps_ > config_.step_limit) throw BudgetExhausted("step limit");
}

Hypervector EvalSession::select(double gate, const LazyVector& value, const LazyVector& rest) {
  SatBranch taken{};
  Hypervector out = gated_saturating_add(gate, value, rest, config_.thresholds, &taken);
  if (taken == SatBranch::Blend) note(Branch::Blend);
  return out;
}

Hypervector EvalSession::veq(const Hypervector& a, const Hypervector& b) const {
  const double s = similarity(a, b);
  return s * tags().t + (1.0 - s) * tags().f;
}

Hypervector EvalSession::vatom(const Hypervector& a, const Hypervector& n) const {
  const auto& tg = tags();
  const double twice_down = 2.0 * config_.thresholds.down;
  const double s_phi = similarity(a, tg.phi);
  const double s_nil = similarity(n, tg.nil);
  Hypervector blend = s_phi * tg.f + std::max(0.0, twice_down - s_phi) * tg.t;
  return s_nil * memory_.recall(blend) + std::max(0.0, twice_down - s_nil) * tg.f;
}

bool EvalSession::truthy(const Hypervector& v) const {
  return similarity(v, tags().t) > similarity(v, tags().f);
}

Hypervector EvalSession::vdefine(const Hypervector& a, const Hypervector& e) {
  if (!codec_.is_atomic(a)) throw EvalError("DEFINE name must be atomic");
  Hypervector entry = vcons(a, e);
  for (std::size_t i = 0; i < functions_.rows(); ++i) {
    if (similarity(vcar(functions_.trace(i)), a) >= config_.thresholds.up) {
      functions_.replace_trace(i, entry);
      return tags().done;
    }
  }
  functions_.append_trace(entry);
  return tags().done;
}

Hypervector EvalSession::vcond(const Hypervector& r) {
  Frame frame(*this);
  tick();
  if (similarity(r, tags().nil) >= config_.thresholds.up) throw EvalError("cond exhausted");
  if (codec_.is_atomic(r)) throw EvalError("malformed COND clauses");
  const Hypervector clause = vcar(r);
  const Hypervector condition = eval(vcar(clause));
  return select(
      similarity(condition, tags().t),
      [&] {
        note(Branch::CondTake);
        return vcdr(clause);
      },
      [&] {
        note(Branch::CondSkip);
        return vcond(vcdr(r));
      });
}

Hypervector EvalSession::make_lambda(const Hypervector& x, const Hypervector& e) {
  Hypervector tail = vcons(e, tags().nil);
  tail = vcons(x, tail);
  return vcons(lambda_tag_, tail);
}

bool EvalSession::is_lambda(const Hypervector& v) const {
  return !codec_.is_atomic(v) && similarity(vcar(v), lambda_tag_) >= config_.thresholds.up;
}

std::pair<Hypervector, Hypervector> EvalSession::relabel(const Hypervector& x,
                                                         const Hypervector& e) {
  const SExpr params = codec_.decode(x);
  std::map<std::string, std::string> renames;
  std::vector<SExpr> fresh;
  const SExpr* cur = &params;
  for (; cur->is_pair(); cur = &cur->cdr()) {
    if (!cur->car().is_atom()) throw EvalError("LAMBDA parameters must be atomic");
    const std::string& name = cur->car().name();
    if (renames.count(name)) throw EvalError("duplicate LAMBDA parameter " + name);
    std::string g = std::string(reserved::kGensymPrefix) + std::to_string(++gensym_);
    renames.emplace(name, g);
    fresh.push_back(SExpr::atom(g));
  }
  if (!cur->is_nil()) throw EvalError("LAMBDA parameters must form a list");
  if (renames.empty()) return {x, e};

  auto rename = [&](auto&& self, const SExpr& s) -> SExpr {
    if (s.is_atom()) {
      auto it = renames.find(s.name());
      return it == renames.end() ? s : SExpr::atom(it->second);
    }
    SExpr l = self(self, s.car());
    SExpr r = self(self, s.cdr());
    return SExpr::cons(std::move(l), std::move(r));
  };
  SExpr ys = SExpr::nil();
  for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) ys = SExpr::cons(*it, ys);
  const SExpr body = rename(rename, codec_.decode(e));
  Hypervector y = codec_.encode(ys);
  Hypervector e2 = codec_.encode(body);
  return {std::move(y), std::move(e2)};
}

Hypervector EvalSession::vlambda_apply(const Hypervector& lam, const Hypervector& a) {
  Frame frame(*this);
  tick();
  const auto& tg = tags();
  if (codec_.is_atomic(lam) || similarity(vcar(lam), lambda_tag_) < config_.thresholds.up) {
    throw EvalError("malformed lambda");
  }
  const Hypervector rest = vcdr(lam);
  const Hypervector x = vcar(rest);
  const Hypervector e = vcar(vcdr(rest));
  const double unlabeled = similarity(lam, tg.rho) < config_.thresholds.down ? 1.0 : 0.0;

  return select(
      unlabeled,
      [&] {
        note(Branch::LambdaRelabel);
        auto [y, e2] = relabel(x, e);
        const Hypervector tagged = normalize(make_lambda(y, e2) + tg.rho);
        return vlambda_apply(tagged, a);
      },
      [&] {
        return select(
            similarity(x, tg.nil),
            [&] {
              note(Branch::LambdaBody);
              return e;
            },
            [&] {
              return select(
                  similarity(e, tg.nil),
                  [&] {
                    note(Branch::LambdaEmpty);
                    return tg.nil;
                  },
                  [&] {
                    note(Branch::LambdaCurry);
                    const Hypervector remaining = vcdr(x);
                    const Hypervector body = vlambda_subst(x, e, a);
                    return make_lambda(remaining, body);
                  });
            });
      });
}

Hypervector EvalSession::vlambda_subst(const Hypervector& x, const Hypervector& e,
                                       const Hypervector& a) {
  Frame frame(*this);
  tick();
  const auto& tg = tags();
  return select(
      similarity(x, tg.nil),
      [&] {
        note(Branch::SubstNoParams);
        return e;
      },
      [&] {
        return select(
            similarity(e, tg.nil),
            [&] {
              note(Branch::SubstEmpty);
              return tg.nil;
            },
            [&] {
              const Hypervector param = vcar(x);
              return select(
                  similarity(param, e),
                  [&] {
                    note(Branch::SubstParam);
                    return vcar(a);
                  },
                  [&] {
                    return select(
                        similarity(vatom(e, tg.nil), tg.t),
                        [&] {
                          note(Branch::SubstAtom);
                          return e;
                        },
                        [&] {
                          const Hypervector head = vcar(e);
                          return select(
                              similarity(param, head),
                              [&] {
                                note(Branch::SubstHeadParam);
                                const Hypervector value = vcar(a);
                                const Hypervector tail = vlambda_subst(x, vcdr(e), a);
                                return vcons(value, tail);
                              },
                              [&] {
                                return select(
                                    similarity(vatom(head, tg.nil), tg.f),
                                    [&] {
                                      note(Branch::SubstHeadPair);
                                      const Hypervector left = vlambda_subst(x, head, a);
                                      const Hypervector right = vlambda_subst(x, vcdr(e), a);
                                      return vcons(left, right);
                                    },
                                    [&] {
                                      note(Branch::SubstHeadOther);
                                      const Hypervector tail = vlambda_subst(x, vcdr(e), a);
                                      return vcons(head, tail);
                                    });
                              });
                        });
                  });
            });
      });
}

FcallResult EvalSession::vfcall(const Hypervector& f, const Hypervector& a) {
  FcallResult result;
  if (functions_.empty()) {
    note(Branch::FcallData);
    result.form = vcons(f, a);
    return result;
  }
  const Hypervector entry = functions_.recall(bind(tags().left, f));
  result.form = select(
      similarity(f, vcar(entry)),
      [&] {
        note(Branch::FcallDefined);
        result.applied = true;
        return vcons(vcdr(entry), a);
      },
      [&] {
        note(Branch::FcallData);
        return vcons(f, a);
      });
  return result;
}

std::pair<Builtin, double> EvalSession::match_builtin(const Hypervector& head) const {
  Builtin best = Builtin::None;
  double best_sim = -2.0;
  for (const auto& [b, vec] : builtins_) {
    const double s = similarity(head, vec);
    if (s > best_sim) {
      best_sim = s;
      best = b;
    }
  }
  if (best_sim < config_.thresholds.up) best = Builtin::None;
  return {best, best_sim};
}

void EvalSession::trace_step(std::string_view head, double sim) {
  if (!trace_) return;
  char buf[160];
  std::snprintf(buf, sizeof buf, "step=%zu head=%.*s sim=%.4f mem=%zu", steps_,
                static_cast<int>(head.size()), head.data(), sim, memory_.rows());
  *trace_ << buf << '\n';
}

Hypervector EvalSession::eval(const Hypervector& input) {
  if (depth_ == 0) steps_ = 0;
  Frame frame(*this);
  Hypervector v = input;
  for (;;) {
    tick();
    if (codec_.is_atomic(v)) {
      if (trace_) trace_step("(atom)", similarity(v, tags().phi));
      return v;
    }
    const Hypervector head = vcar(v);
    const Hypervector tail = vcdr(v);

    if (!codec_.is_atomic(head)) {
      if (trace_) trace_step("(form)", similarity(head, tags().phi));
      const Hypervector fn = eval(head);
      if (!is_lambda(fn)) return vcons(fn, tail);
      Hypervector arg = tags().nil;
      if (similarity(tail, tags().nil) < config_.thresholds.up) {
        arg = vcons(eval(vcar(tail)), tags().nil);
      }
      v = vlambda_apply(fn, arg);
      continue;
    }

    const auto [builtin, sim] = match_builtin(head);
    if (trace_) {
      if (builtin != Builtin::None) {
        trace_step(to_string(builtin), sim);
      } else {
        double s = 0.0;
        const std::string name = registry_.nearest(head, &s);
        trace_step(name, s);
      }
    }
    switch (builtin) {
      case Builtin::Cons: {
        const Hypervector a = eval(vcar(tail));
        const Hypervector b = eval(vcar(vcdr(tail)));
        return vcons(a, b);
      }
      case Builtin::Car:
        return vcar(eval(vcar(tail)));
      case Builtin::Cdr:
        return vcdr(eval(vcar(tail)));
      case Builtin::Eq: {
        const Hypervector a = eval(vcar(tail));
        const Hypervector b = eval(vcar(vcdr(tail)));
        return veq(a, b);
      }
      case Builtin::Atom: {
        const Hypervector a = eval(vcar(tail));
        return vatom(a, vcdr(tail));
      }
      case Builtin::Quote:
        return vquote(vcar(tail));
      case Builtin::Cond:
        v = vcond(tail);
        continue;
      case Builtin::Define:
        return vdefine(vcar(tail), vcar(vcdr(tail)));
      case Builtin::Lambda:
        return v;
      case Builtin::None: {
        FcallResult call = vfcall(head, tail);
        if (!call.applied) return call.form;
        v = std::move(call.form);
        continue;
      }
    }
  }
}

SExpr EvalSession::evaluate(const SExpr& e) {
  struct Compactor {
    EvalSession& s;
    ~Compactor() {
      if (!s.config_.compact_between_forms) return;
      try {
        s.compact();
      } catch (const Error&) {
        // An uncompacted M is still a valid M.
      }
    }
  } compactor{*this};
  const Hypervector program = codec_.encode(e);
  return codec_.decode(eval(program));
}

bool EvalSession::compact() {
  std::vector<std::pair<Hypervector, SExpr>> defs;
  defs.reserve(functions_.rows());
  try {
    for (std::size_t i = 0; i < functions_.rows(); ++i) {
      const Hypervector& entry = functions_.trace(i);
      defs.emplace_back(vcar(entry), codec_.decode(vcdr(entry)));
    }
  } catch (const Error&) {
    return false;
  }
  memory_.clear();
  preload();
  for (std::size_t i = 0; i < defs.size(); ++i) {
    functions_.replace_trace(i, vcons(defs[i].first, codec_.encode(defs[i].second)));
  }
  return true;
}

}  // namespace vsalisp
