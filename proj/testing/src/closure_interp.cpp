#include <functional>
#include <memory>
#include <variant>

#include "lambdad/errors.hpp"
#include "lambdad/testing/reference.hpp"

namespace lambdad::testing {

namespace {

struct Val;
struct TrailL;
struct MetaL;
using Trail = std::shared_ptr<const TrailL>;
using MetaC = std::shared_ptr<const MetaL>;
using K = std::function<Val(const Val&, Trail, MetaC)>;
using Fn = std::function<Val(const Val&, const K&, Trail, MetaC)>;

struct Val {
  std::variant<std::int64_t, bool, std::shared_ptr<const Fn>> v;
};

struct TrailL {
  K k;
  Trail rest;
};
struct MetaL {
  K k;
  Trail t;
  MetaC rest;
};

struct EnvL;
using Env = std::shared_ptr<const EnvL>;
struct EnvL {
  std::string x;
  Val v;
  Env rest;
};

Trail append(const Trail& a, const Trail& b) {
  if (!a) return b;
  return std::make_shared<const TrailL>(TrailL{a->k, append(a->rest, b)});
}

[[noreturn]] void dyn(const std::string& w) { throw EvalError(EvalErrorKind::DynamicTypeError, w); }

class Interp {
 public:
  explicit Interp(std::size_t fuel) : fuel_(fuel) {}

  Val idk(const Val& v, const Trail& t, const MetaC& m) {
    if (t) return t->k(v, t->rest, m);
    if (m) return m->k(v, m->t, m->rest);
    return v;
  }

  Val eval(const Term& e, const Env& env, const K& k, const Trail& t, const MetaC& m) {
    if (fuel_-- == 0) throw EvalError(EvalErrorKind::OutOfFuel, "closure interpreter out of fuel");
    const TermNode& n = e.node();
    if (auto x = std::get_if<Num>(&n.v)) return k(Val{x->value}, t, m);
    if (auto x = std::get_if<BoolLit>(&n.v)) return k(Val{x->value}, t, m);
    if (auto x = std::get_if<Var>(&n.v)) {
      for (const EnvL* c = env.get(); c; c = c->rest.get()) {
        if (c->x == x->name) return k(c->v, t, m);
      }
      dyn("unbound " + x->name);
    }
    if (auto x = std::get_if<Lam>(&n.v)) {
      Term body = child(x->body);
      std::string p = x->param;
      Fn f = [this, body, p, env](const Val& v, const K& k2, Trail t2, MetaC m2) {
        return eval(body, bind(env, p, v), k2, t2, m2);
      };
      return k(Val{std::make_shared<const Fn>(std::move(f))}, t, m);
    }
    if (auto x = std::get_if<App>(&n.v)) {
      Term a = child(x->arg);
      return eval(child(x->fn), env,
                  [this, a, env, k](const Val& f, Trail t1, MetaC m1) {
                    return eval(a, env,
                                [f, k](const Val& v, Trail t2, MetaC m2) {
                                  auto fp = std::get_if<std::shared_ptr<const Fn>>(&f.v);
                                  if (!fp) dyn("application of a non-function");
                                  return (**fp)(v, k, t2, m2);
                                },
                                t1, m1);
                  },
                  t, m);
    }
    if (auto x = std::get_if<Add>(&n.v)) {
      Term r = child(x->rhs);
      return eval(child(x->lhs), env,
                  [this, r, env, k](const Val& a, Trail t1, MetaC m1) {
                    return eval(r, env,
                                [a, k](const Val& b, Trail t2, MetaC m2) {
                                  auto p = std::get_if<std::int64_t>(&a.v);
                                  auto q = std::get_if<std::int64_t>(&b.v);
                                  if (!p || !q) dyn("+ on non-numbers");
                                  std::int64_t s = 0;
                                  if (__builtin_add_overflow(*p, *q, &s)) dyn("overflow");
                                  return k(Val{s}, t2, m2);
                                },
                                t1, m1);
                  },
                  t, m);
    }
    if (auto x = std::get_if<IsZero>(&n.v)) {
      return eval(child(x->arg), env,
                  [k](const Val& a, Trail t1, MetaC m1) {
                    auto p = std::get_if<std::int64_t>(&a.v);
                    if (!p) dyn("is0 on a non-number");
                    return k(Val{*p == 0}, t1, m1);
                  },
                  t, m);
    }
    if (auto x = std::get_if<If>(&n.v)) {
      Term th = child(x->then_branch);
      Term el = child(x->else_branch);
      return eval(child(x->cond), env,
                  [this, th, el, env, k](const Val& c, Trail t1, MetaC m1) {
                    auto b = std::get_if<bool>(&c.v);
                    if (!b) dyn("if0 on a non-boolean");
                    return eval(*b ? th : el, env, k, t1, m1);
                  },
                  t, m);
    }
    if (auto x = std::get_if<Reset>(&n.v)) {
      return eval(child(x->body), env, idk_k(), nullptr, std::make_shared<const MetaL>(MetaL{k, t, m}));
    }
    const Capture& c = std::get<Capture>(n.v);
    Fn cap;
    if (captures_delimited(c.op)) {
      cap = [k, t](const Val& v, const K& k2, Trail t2, MetaC m2) {
        return k(v, t, std::make_shared<const MetaL>(MetaL{k2, t2, m2}));
      };
    } else {
      cap = [k, t](const Val& v, const K& k2, Trail t2, MetaC m2) {
        return k(v, append(t, std::make_shared<const TrailL>(TrailL{k2, t2})), m2);
      };
    }
    Env env2 = bind(env, c.binder, Val{std::make_shared<const Fn>(std::move(cap))});
    if (pops_meta(c.op)) {
      if (!m) throw EvalError(EvalErrorKind::EmptyMetaOnShift0, "empty meta continuation");
      return eval(child(c.body), env2, m->k, m->t, m->rest);
    }
    return eval(child(c.body), env2, idk_k(), nullptr, m);
  }

 private:
  std::size_t fuel_;

  K idk_k() {
    return [this](const Val& v, Trail t, MetaC m) { return idk(v, t, m); };
  }

  static Env bind(const Env& env, const std::string& x, const Val& v) {
    return std::make_shared<const EnvL>(EnvL{x, v, env});
  }
};

}  // namespace

Observation closure_eval(const Term& e, std::size_t fuel) {
  Interp in(fuel);
  Val v = in.eval(e, nullptr, [&in](const Val& x, Trail t, MetaC m) { return in.idk(x, t, m); }, nullptr, nullptr);
  if (auto n = std::get_if<std::int64_t>(&v.v)) return std::to_string(*n);
  if (auto b = std::get_if<bool>(&v.v)) return *b ? "true" : "false";
  return "<fun>";
}

}  // namespace lambdad::testing
