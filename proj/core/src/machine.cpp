#include "lambdad/machine.hpp"

#include <utility>

#include "lambdad/errors.hpp"
#include "overloaded.hpp"

namespace lambdad::machine {

Trail append(const Trail& t1, const Trail& t2) {
  if (!t1) return t2;
  if (!t2) return t1;
  return std::make_shared<const TrailCell>(TrailCell{t1->k, append(t1->rest, t2)});
}

Trail cons(const Cont& k, const Trail& t) { return std::make_shared<const TrailCell>(TrailCell{k, t}); }

std::size_t length(const Trail& t) {
  std::size_t n = 0;
  for (const TrailCell* c = t.get(); c; c = c->rest.get()) ++n;
  return n;
}

std::size_t length(const MetaCont& m) {
  std::size_t n = 0;
  for (const MetaCell* c = m.get(); c; c = c->rest.get()) ++n;
  return n;
}

std::string show(const Value& v) {
  return std::visit(overloaded{
                        [](std::int64_t n) { return std::to_string(n); },
                        [](bool b) -> std::string { return b ? "true" : "false"; },
                        [](const Closure&) -> std::string { return "<fun>"; },
                        [](const CapturedCont&) -> std::string { return "<cont>"; },
                    },
                    v.v);
}

bool is_first_order(const Value& v) {
  return std::holds_alternative<std::int64_t>(v.v) || std::holds_alternative<bool>(v.v);
}

namespace {

using TermPtr = std::shared_ptr<const TermNode>;

[[noreturn]] void dynamic(const std::string& what) { throw EvalError(EvalErrorKind::DynamicTypeError, what); }

Cont push(Frame f) { return std::make_shared<const Frame>(std::move(f)); }

Env extend_env(const Env& env, const std::string& x, Value v) {
  return std::make_shared<const EnvCell>(EnvCell{x, std::move(v), env});
}

// The machine alternates between evaluating a term and returning a value to
// the current continuation.
class Machine {
 public:
  explicit Machine(const Options& o) : opts_(o) {}

  Result eval(TermPtr e, Env env, Cont k, Trail t, MetaCont m) {
    mode_ = Mode::Eval;
    term_ = std::move(e);
    env_ = std::move(env);
    return loop(std::move(k), std::move(t), std::move(m));
  }

  Result apply(Cont k, Value v, Trail t, MetaCont m) {
    mode_ = Mode::Apply;
    val_ = std::move(v);
    return loop(std::move(k), std::move(t), std::move(m));
  }

 private:
  enum class Mode { Eval, Apply, Done };

  const Options& opts_;
  Mode mode_ = Mode::Eval;
  TermPtr term_;
  Env env_;
  Value val_;
  Cont k_;
  Trail t_;
  MetaCont m_;
  std::size_t steps_ = 0;

  void tick(const char* construct) {
    if (steps_ >= opts_.fuel) {
      throw EvalError(EvalErrorKind::OutOfFuel,
                      "fuel " + std::to_string(opts_.fuel) + " exhausted at " + construct + " (trail depth " +
                          std::to_string(length(t_)) + ", meta depth " + std::to_string(length(m_)) + ")");
    }
    ++steps_;
    if (opts_.trace) opts_.trace(construct, length(t_), length(m_));
  }

  Result loop(Cont k, Trail t, MetaCont m) {
    k_ = std::move(k);
    t_ = std::move(t);
    m_ = std::move(m);
    while (mode_ != Mode::Done) {
      if (mode_ == Mode::Eval) {
        step_eval();
      } else {
        step_apply();
      }
    }
    return Result{std::move(val_), steps_};
  }

  void ret(Value v) {
    val_ = std::move(v);
    mode_ = Mode::Apply;
  }

  void go(TermPtr e, Env env) {
    term_ = std::move(e);
    env_ = std::move(env);
    mode_ = Mode::Eval;
  }

  void step_eval() {
    const TermNode& n = *term_;
    std::visit(overloaded{
                   [&](const Num& x) {
                     tick("num");
                     ret(Value{x.value});
                   },
                   [&](const BoolLit& x) {
                     tick("bool");
                     ret(Value{x.value});
                   },
                   [&](const Var& x) {
                     tick("var");
                     for (const EnvCell* c = env_.get(); c; c = c->rest.get()) {
                       if (c->name == x.name) {
                         ret(c->value);
                         return;
                       }
                     }
                     dynamic("unbound variable '" + x.name + "'");
                   },
                   [&](const Lam& x) {
                     tick("fun");
                     ret(Value{Closure{x.param, Term(x.body), env_}});
                   },
                   [&](const App& x) {
                     tick("app");
                     k_ = push(Frame{Frame::Kind::AppFun, x.arg, nullptr, env_, {}, k_});
                     go(x.fn, env_);
                   },
                   [&](const Add& x) {
                     tick("add");
                     k_ = push(Frame{Frame::Kind::AddL, x.rhs, nullptr, env_, {}, k_});
                     go(x.lhs, env_);
                   },
                   [&](const IsZero& x) {
                     tick("is0");
                     k_ = push(Frame{Frame::Kind::Is0, nullptr, nullptr, nullptr, {}, k_});
                     go(x.arg, env_);
                   },
                   [&](const If& x) {
                     tick("if0");
                     k_ = push(Frame{Frame::Kind::If, x.then_branch, x.else_branch, env_, {}, k_});
                     go(x.cond, env_);
                   },
                   [&](const Reset& x) {
                     tick("reset");
                     m_ = std::make_shared<const MetaCell>(MetaCell{k_, t_, m_});
                     k_ = nullptr;
                     t_ = nullptr;
                     go(x.body, env_);
                   },
                   [&](const Capture& x) {
                     tick(keyword(x.op).data());
                     Value cap{CapturedCont{captures_delimited(x.op), k_, t_}};
                     Env env = extend_env(env_, x.binder, std::move(cap));
                     if (pops_meta(x.op)) {
                       if (!m_) {
                         throw EvalError(EvalErrorKind::EmptyMetaOnShift0,
                                         std::string(keyword(x.op)) + " with an empty meta continuation");
                       }
                       k_ = m_->k;
                       t_ = m_->trail;
                       m_ = m_->rest;
                     } else {
                       k_ = nullptr;
                       t_ = nullptr;
                     }
                     go(x.body, std::move(env));
                   },
               },
               n.v);
  }

  // Applies a function value to an argument with the current κ, t, m.
  void call(const Value& f, Value arg) {
    if (const auto* c = std::get_if<Closure>(&f.v)) {
      go(c->body.ptr(), extend_env(c->env, c->param, std::move(arg)));
      return;
    }
    if (const auto* cc = std::get_if<CapturedCont>(&f.v)) {
      if (cc->delimited) {
        // κc v tc ((κ, t) :: m)
        m_ = std::make_shared<const MetaCell>(MetaCell{k_, t_, m_});
        t_ = cc->trail;
      } else {
        // κc v (tc @ (κ :: t)) m
        t_ = append(cc->trail, cons(k_, t_));
      }
      k_ = cc->k;
      ret(std::move(arg));
      return;
    }
    dynamic("application of a non-function " + show(f));
  }

  void step_apply() {
    if (!k_) {
      tick("idk");
      if (t_) {
        // invoke the trail: k1 v (k2..kn) m
        k_ = t_->k;
        t_ = t_->rest;
        return;
      }
      if (!m_) {
        mode_ = Mode::Done;
        return;
      }
      k_ = m_->k;
      t_ = m_->trail;
      m_ = m_->rest;
      return;
    }
    Cont top = k_;
    k_ = top->next;
    switch (top->kind) {
      case Frame::Kind::AppFun:
        tick("app-arg");
        k_ = push(Frame{Frame::Kind::AppArg, nullptr, nullptr, nullptr, val_, k_});
        go(top->a, top->env);
        return;
      case Frame::Kind::AppArg:
        tick("call");
        call(top->value, std::move(val_));
        return;
      case Frame::Kind::AddL:
        tick("add-rhs");
        k_ = push(Frame{Frame::Kind::AddR, nullptr, nullptr, nullptr, val_, k_});
        go(top->a, top->env);
        return;
      case Frame::Kind::AddR: {
        tick("plus");
        const auto* l = std::get_if<std::int64_t>(&top->value.v);
        const auto* r = std::get_if<std::int64_t>(&val_.v);
        if (!l || !r) dynamic("+ on " + show(top->value) + " and " + show(val_));
        std::int64_t sum = 0;
        if (__builtin_add_overflow(*l, *r, &sum)) dynamic("numeral overflow");
        ret(Value{sum});
        return;
      }
      case Frame::Kind::Is0: {
        tick("is0?");
        const auto* n = std::get_if<std::int64_t>(&val_.v);
        if (!n) dynamic("is0 on " + show(val_));
        ret(Value{*n == 0});
        return;
      }
      case Frame::Kind::If: {
        tick("branch");
        const auto* b = std::get_if<bool>(&val_.v);
        if (!b) dynamic("if0 on " + show(val_));
        go(*b ? top->a : top->b, top->env);
        return;
      }
    }
  }
};

}  // namespace

Result eval(const Term& e, const Env& env, const Cont& k, const Trail& t, const MetaCont& m, const Options& opts) {
  Machine mc(opts);
  return mc.eval(e.ptr(), env, k, t, m);
}

Result apply_cont(const Cont& k, const Value& v, const Trail& t, const MetaCont& m, const Options& opts) {
  Machine mc(opts);
  return mc.apply(k, v, t, m);
}

Result run(const Term& e, const Options& opts) { return eval(e, nullptr, nullptr, nullptr, nullptr, opts); }

}  // namespace lambdad::machine
