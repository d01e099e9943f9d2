#include "vsalisp/oracle.hpp"

#include <set>
#include <vector>

#include "vsalisp/codec.hpp"
#include "vsalisp/errors.hpp"

namespace vsalisp {

namespace {

const SExpr& kT() {
  static const SExpr t = SExpr::atom("T");
  return t;
}
const SExpr& kF() {
  static const SExpr f = SExpr::atom("F");
  return f;
}

bool is_named(const SExpr& e, std::string_view name) { return e.is_atom() && e.name() == name; }

const SExpr& car_of(const SExpr& e) {
  if (e.is_atom()) throw EvalError("CAR of atom " + e.name());
  return e.car();
}

const SExpr& cdr_of(const SExpr& e) {
  if (e.is_atom()) throw EvalError("CDR of atom " + e.name());
  return e.cdr();
}

bool is_lambda(const SExpr& e) { return e.is_pair() && is_named(e.car(), "LAMBDA"); }

}  // namespace

class Oracle::Frame {
 public:
  explicit Frame(Oracle& o) : o_(o) {
    if (++o_.depth_ > o_.limits_.depth_limit) {
      --o_.depth_;
      throw BudgetExhausted("recursion depth");
    }
  }
  ~Frame() { --o_.depth_; }
  Frame(const Frame&) = delete;
  Frame& operator=(const Frame&) = delete;

 private:
  Oracle& o_;
};

void Oracle::tick() {
  if (++steps_ > limits_.step_limit) throw BudgetExhausted("step limit");
}

SExpr Oracle::eval(const SExpr& e) {
  if (depth_ == 0) steps_ = 0;
  return eval_inner(e);
}

SExpr Oracle::eval_inner(SExpr e) {
  Frame frame(*this);
  for (;;) {
    tick();
    if (e.is_atom()) return e;
    const SExpr head = e.car();
    const SExpr tail = e.cdr();

    if (head.is_pair()) {
      const SExpr fn = eval_inner(head);
      if (!is_lambda(fn)) return SExpr::cons(fn, tail);
      SExpr arg = SExpr::nil();
      if (!tail.is_nil()) arg = SExpr::cons(eval_inner(car_of(tail)), SExpr::nil());
      e = apply_lambda(fn, arg);
      continue;
    }

    const std::string& op = head.name();
    if (op == "CONS") {
      SExpr a = eval_inner(car_of(tail));
      SExpr b = eval_inner(car_of(cdr_of(tail)));
      return SExpr::cons(std::move(a), std::move(b));
    }
    if (op == "CAR") return car_of(eval_inner(car_of(tail)));
    if (op == "CDR") return cdr_of(eval_inner(car_of(tail)));
    if (op == "EQ") {
      const SExpr a = eval_inner(car_of(tail));
      const SExpr b = eval_inner(car_of(cdr_of(tail)));
      if (!a.is_atom() || !b.is_atom()) throw EvalError("EQ is undefined for non-atoms");
      return a == b ? kT() : kF();
    }
    if (op == "ATOM") {
      const SExpr a = eval_inner(car_of(tail));
      if (!cdr_of(tail).is_nil()) return kF();
      return a.is_atom() ? kT() : kF();
    }
    if (op == "QUOTE") return car_of(tail);
    if (op == "COND") {
      SExpr r = tail;
      for (;;) {
        tick();
        if (r.is_nil()) throw EvalError("cond exhausted");
        if (r.is_atom()) throw EvalError("malformed COND clauses");
        const SExpr& clause = car_of(r);
        if (eval_inner(car_of(clause)) == kT()) {
          note(Branch::CondTake);
          e = cdr_of(clause);
          break;
        }
        note(Branch::CondSkip);
        r = r.cdr();
      }
      continue;
    }
    if (op == "DEFINE") {
      const SExpr& name = car_of(tail);
      if (!name.is_atom()) throw EvalError("DEFINE name must be atomic");
      defs_.insert_or_assign(name.name(), car_of(cdr_of(tail)));
      return SExpr::atom(std::string(reserved::kDone));
    }
    if (op == "LAMBDA") return e;

    auto it = defs_.find(op);
    if (it == defs_.end()) {
      note(Branch::FcallData);
      return e;
    }
    note(Branch::FcallDefined);
    e = SExpr::cons(it->second, tail);
  }
}

SExpr Oracle::relabel(const SExpr& lam) {
  const SExpr& rest = cdr_of(lam);
  const SExpr& x = car_of(rest);
  const SExpr& body = car_of(cdr_of(rest));
  std::map<std::string, std::string, std::less<>> renames;
  std::vector<SExpr> fresh;
  const SExpr* cur = &x;
  for (; cur->is_pair(); cur = &cur->cdr()) {
    if (!cur->car().is_atom()) throw EvalError("LAMBDA parameters must be atomic");
    const std::string& name = cur->car().name();
    if (renames.count(name)) throw EvalError("duplicate LAMBDA parameter " + name);
    std::string g = std::string(reserved::kGensymPrefix) + std::to_string(++gensym_);
    renames.emplace(name, g);
    fresh.push_back(SExpr::atom(std::move(g)));
  }
  if (!cur->is_nil()) throw EvalError("LAMBDA parameters must form a list");
  if (renames.empty()) return lam;

  auto rename = [&](auto&& self, const SExpr& s) -> SExpr {
    if (s.is_atom()) {
      auto found = renames.find(s.name());
      return found == renames.end() ? s : SExpr::atom(found->second);
    }
    SExpr l = self(self, s.car());
    SExpr r = self(self, s.cdr());
    return SExpr::cons(std::move(l), std::move(r));
  };
  SExpr ys = SExpr::nil();
  for (auto r = fresh.rbegin(); r != fresh.rend(); ++r) ys = SExpr::cons(*r, ys);
  return SExpr::list({lam.car(), ys, rename(rename, body)});
}

SExpr Oracle::apply_lambda(const SExpr& lam, const SExpr& a) {
  Frame frame(*this);
  tick();
  if (!is_lambda(lam)) throw EvalError("malformed lambda");
  note(Branch::LambdaRelabel);
  const SExpr fresh = relabel(lam);
  const SExpr& x = fresh.cdr().car();
  const SExpr& e = fresh.cdr().cdr().car();
  if (x.is_nil()) {
    note(Branch::LambdaBody);
    return e;
  }
  if (e.is_nil()) {
    note(Branch::LambdaEmpty);
    return SExpr::nil();
  }
  note(Branch::LambdaCurry);
  SExpr body = subst(x, e, a);
  return SExpr::list({fresh.car(), x.cdr(), std::move(body)});
}

SExpr Oracle::subst(const SExpr& x, const SExpr& e, const SExpr& a) {
  Frame frame(*this);
  tick();
  if (x.is_nil()) {
    note(Branch::SubstNoParams);
    return e;
  }
  if (e.is_nil()) {
    note(Branch::SubstEmpty);
    return SExpr::nil();
  }
  const SExpr& param = car_of(x);
  auto argument = [&]() -> const SExpr& {
    if (a.is_atom()) throw EvalError("missing argument for " + param.name());
    return a.car();
  };
  if (e == param) {
    note(Branch::SubstParam);
    return argument();
  }
  if (e.is_atom()) {
    note(Branch::SubstAtom);
    return e;
  }
  const SExpr& head = e.car();
  if (head == param) {
    note(Branch::SubstHeadParam);
    const SExpr value = argument();
    return SExpr::cons(value, subst(x, e.cdr(), a));
  }
  if (head.is_pair()) {
    note(Branch::SubstHeadPair);
    SExpr left = subst(x, head, a);
    SExpr right = subst(x, e.cdr(), a);
    return SExpr::cons(std::move(left), std::move(right));
  }
  note(Branch::SubstHeadOther);
  return SExpr::cons(head, subst(x, e.cdr(), a));
}

}  // namespace vsalisp
