#include "lambdad/cps.hpp"

#include <set>

#include "lambdad/errors.hpp"
#include "overloaded.hpp"

namespace lambdad {

using lc::CTerm;
using lc::CType;

CType cps_type(const Type& t) {
  return std::visit(overloaded{
                        [](const NatType&) { return CType::nat(); },
                        [](const BoolType&) { return CType::boolean(); },
                        [](const FunType& f) {
                          CType k = CType::arrows(cps_type(f.cod), cps_type(f.initial.trail),
                                                  cps_type(f.initial.meta), cps_type(f.initial.answer));
                          return CType::arrows(cps_type(f.dom), k, cps_type(f.final.trail), cps_type(f.final.meta),
                                               cps_type(f.final.answer));
                        },
                    },
                    t.node().v);
}

CType cps_type(const Trail& t) { return t.is_empty() ? CType::unit() : cps_type(t.as_kont()); }

CType cps_type(const Meta& m) {
  if (m.is_empty()) return CType::unit();
  const ConsMeta& c = m.as_cons();
  return CType::prod(CType::prod(cps_type(c.kont), cps_type(c.trail)), cps_type(c.rest));
}

CType cps_type(const Kont& k) {
  return CType::arrows(cps_type(k.arg), cps_type(k.trail), cps_type(k.meta), cps_type(k.result));
}

namespace {

CType cont_type(const Type& tau, const Row& r) {
  return CType::arrows(cps_type(tau), cps_type(r.trail), cps_type(r.meta), cps_type(r.answer));
}

void names_of(const Term& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const Var& v) { out.insert(v.name); },
                 [&](const Lam& l) {
                   out.insert(l.param);
                   names_of(child(l.body), out);
                 },
                 [&](const App& a) {
                   names_of(child(a.fn), out);
                   names_of(child(a.arg), out);
                 },
                 [&](const Add& a) {
                   names_of(child(a.lhs), out);
                   names_of(child(a.rhs), out);
                 },
                 [&](const IsZero& z) { names_of(child(z.arg), out); },
                 [&](const If& i) {
                   names_of(child(i.cond), out);
                   names_of(child(i.then_branch), out);
                   names_of(child(i.else_branch), out);
                 },
                 [&](const Capture& c) {
                   out.insert(c.binder);
                   names_of(child(c.body), out);
                 },
                 [&](const Reset& r) { names_of(child(r.body), out); },
                 [&](const auto&) {},
             },
             t.node().v);
}

class Translator {
 public:
  explicit Translator(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

  std::string fresh(const char* base) {
    for (;;) {
      std::string n = base + std::to_string(++counter_);
      if (!avoid_.count(n)) return n;
    }
  }

  CTerm idk(const Kont& k) {
    std::string v = fresh("v"), t = fresh("t"), m = fresh("m");
    CType res = cps_type(k.result);
    CTerm on_empty = CTerm::unit();
    if (k.trail.is_empty()) {
      CTerm meta_empty = k.meta.is_empty() ? CTerm::var(v) : CTerm::unit();
      lc::CasePattern layer{true, "", fresh("k"), fresh("t"), fresh("m")};
      CTerm meta_layer = k.meta.is_empty() ? CTerm::unit()
                                           : CTerm::apps(CTerm::var(layer.k), CTerm::var(v), CTerm::var(layer.t),
                                                         CTerm::var(layer.m));
      on_empty = CTerm::case_(CTerm::var(m), res, meta_empty, layer, meta_layer);
    }
    lc::CasePattern kp{false, fresh("k"), "", "", ""};
    CTerm on_kont = k.trail.is_empty()
                        ? CTerm::unit()
                        : CTerm::apps(CTerm::var(kp.var), CTerm::var(v), CTerm::unit(), CTerm::var(m));
    CTerm body = CTerm::case_(CTerm::var(t), res, on_empty, kp, on_kont);
    return CTerm::lam(v, cps_type(k.arg),
                      CTerm::lam(t, cps_type(k.trail), CTerm::lam(m, cps_type(k.meta), body)));
  }

  // () @ t = t;  k :: () = k;  k :: k' = λv t m. k v (k' :: t) m
  CTerm compose(const Trail& mu1, const Trail& mu2, const Trail& mu3) {
    std::string a = fresh("a"), b = fresh("b");
    CType res = cps_type(mu3);
    lc::CasePattern kp{false, fresh("k"), "", "", ""};
    CTerm on_kont = CTerm::unit();
    if (!mu1.is_empty()) {
      lc::CasePattern kp2{false, fresh("k"), "", "", ""};
      CTerm on_kont2 = CTerm::unit();
      if (!mu2.is_empty()) {
        if (mu3.is_empty()) throw CpsError("compatible: composing two non-empty trails into •");
        const Kont& k1 = mu1.as_kont();
        const Kont& k3 = mu3.as_kont();
        std::string v = fresh("v"), t = fresh("t"), m = fresh("m");
        CTerm inner = CTerm::apps(compose(mu2, k3.trail, k1.trail), CTerm::var(kp2.var), CTerm::var(t));
        on_kont2 = CTerm::lam(
            v, cps_type(k3.arg),
            CTerm::lam(t, cps_type(k3.trail),
                       CTerm::lam(m, cps_type(k3.meta),
                                  CTerm::apps(CTerm::var(kp.var), CTerm::var(v), inner, CTerm::var(m)))));
      }
      CTerm on_empty2 = mu2.is_empty() ? CTerm::var(kp.var) : CTerm::unit();
      on_kont = CTerm::case_(CTerm::var(b), res, on_empty2, kp2, on_kont2);
    }
    CTerm on_empty = mu1.is_empty() ? CTerm::var(b) : CTerm::unit();
    CTerm body = CTerm::case_(CTerm::var(a), res, on_empty, kp, on_kont);
    return CTerm::lam(a, cps_type(mu1), CTerm::lam(b, cps_type(mu2), body));
  }

  CTerm translate(const Derivation& d) {
    const Judgment& j = d.judgment;
    std::string k = fresh("k"), t = fresh("t"), m = fresh("m");
    CTerm K = CTerm::var(k), tt = CTerm::var(t), mm = CTerm::var(m);
    auto ret = [&](CTerm v) { return CTerm::apps(K, std::move(v), tt, mm); };
    // λv:τ*. λt':μα*. λm':σα*. body(v, t', m') for the continuation of premise p
    auto cont = [&](const Derivation& p, auto&& body) {
      std::string v = fresh("v"), t1 = fresh("t"), m1 = fresh("m");
      const Judgment& pj = p.judgment;
      return CTerm::lam(v, cps_type(pj.tau),
                        CTerm::lam(t1, cps_type(pj.initial.trail),
                                   CTerm::lam(m1, cps_type(pj.initial.meta),
                                              body(CTerm::var(v), CTerm::var(t1), CTerm::var(m1)))));
    };
    CTerm body = std::visit(
        overloaded{
            [&](const Num& n) { return ret(CTerm::num(n.value)); },
            [&](const BoolLit& b) { return ret(CTerm::boolean(b.value)); },
            [&](const Var& v) { return ret(CTerm::var(v.name)); },
            [&](const Lam& l) {
              return ret(CTerm::lam(l.param, cps_type(j.tau.as_fun().dom), translate(d.premises[0])));
            },
            [&](const App&) {
              const Derivation& p1 = d.premises[0];
              const Derivation& p2 = d.premises[1];
              CTerm e2 = translate(p2);
              CTerm c1 = cont(p1, [&](CTerm v1, CTerm t1, CTerm m1) {
                CTerm c2 = cont(p2, [&](CTerm v2, CTerm t2, CTerm m2) { return CTerm::apps(v1, v2, K, t2, m2); });
                return CTerm::apps(e2, c2, t1, m1);
              });
              return CTerm::apps(translate(p1), c1, tt, mm);
            },
            [&](const Add&) {
              const Derivation& p1 = d.premises[0];
              const Derivation& p2 = d.premises[1];
              CTerm e2 = translate(p2);
              CTerm c1 = cont(p1, [&](CTerm v1, CTerm t1, CTerm m1) {
                CTerm c2 = cont(p2, [&](CTerm v2, CTerm t2, CTerm m2) {
                  return CTerm::apps(K, CTerm::add(v1, v2), t2, m2);
                });
                return CTerm::apps(e2, c2, t1, m1);
              });
              return CTerm::apps(translate(p1), c1, tt, mm);
            },
            [&](const IsZero&) {
              const Derivation& p = d.premises[0];
              CTerm c = cont(p, [&](CTerm v, CTerm t1, CTerm m1) { return CTerm::apps(K, CTerm::is_zero(v), t1, m1); });
              return CTerm::apps(translate(p), c, tt, mm);
            },
            [&](const If&) {
              const Derivation& pc = d.premises[0];
              CTerm a = translate(d.premises[1]);
              CTerm b = translate(d.premises[2]);
              CTerm c = cont(pc, [&](CTerm v, CTerm t1, CTerm m1) {
                return CTerm::if_(v, CTerm::apps(a, K, t1, m1), CTerm::apps(b, K, t1, m1));
              });
              return CTerm::apps(translate(pc), c, tt, mm);
            },
            [&](const Reset&) {
              const Derivation& p = d.premises[0];
              const Judgment& b = p.judgment;
              Kont id = make_kont(b.tau, b.initial.trail, b.initial.meta, b.initial.answer);
              return CTerm::apps(translate(p), idk(id), CTerm::unit(), CTerm::pair(CTerm::pair(K, tt), mm));
            },
            [&](const Capture& c) { return capture(d, c, K, tt, mm); },
        },
        j.term.node().v);
    return CTerm::lam(k, cont_type(j.tau, j.initial),
                      CTerm::lam(t, cps_type(j.final.trail), CTerm::lam(m, cps_type(j.final.meta), body)));
  }

 private:
  std::set<std::string> avoid_;
  int counter_ = 0;

  CTerm capture(const Derivation& d, const Capture& c, const CTerm& K, const CTerm& tt, const CTerm& mm) {
    const Judgment& j = d.judgment;
    const Derivation& p = d.premises[0];
    const Judgment& b = p.judgment;
    const Type& kt = *c.annotation.k_type;
    const FunType& kf = kt.as_fun();
    Kont k1 = make_kont(kf.cod, kf.initial.trail, kf.initial.meta, kf.initial.answer);

    // k = λv κ' t' m'. ...
    std::string v = fresh("v"), k2 = fresh("k"), t2 = fresh("t"), m2 = fresh("m");
    CTerm resumed = CTerm::unit();
    if (captures_delimited(c.op)) {
      resumed = CTerm::apps(K, CTerm::var(v), tt, CTerm::pair(CTerm::pair(CTerm::var(k2), CTerm::var(t2)), CTerm::var(m2)));
    } else {
      const Trail& mid = *c.annotation.mid_trail;
      CTerm pushed = CTerm::apps(compose(Trail::kont(k1), kf.final.trail, mid), CTerm::var(k2), CTerm::var(t2));
      CTerm trail = CTerm::apps(compose(j.final.trail, mid, j.initial.trail), tt, pushed);
      resumed = CTerm::apps(K, CTerm::var(v), trail, CTerm::var(m2));
    }
    CTerm kval = CTerm::lam(
        v, cps_type(kf.dom),
        CTerm::lam(k2, cps_type(k1),
                   CTerm::lam(t2, cps_type(kf.final.trail), CTerm::lam(m2, cps_type(kf.final.meta), resumed))));

    CTerm e = translate(p);
    if (!pops_meta(c.op)) {
      Kont id = make_kont(b.tau, b.initial.trail, b.initial.meta, b.initial.answer);
      CTerm run = CTerm::apps(e, idk(id), CTerm::unit(), mm);
      return CTerm::app(CTerm::lam(c.binder, cps_type(kt), run), kval);
    }
    lc::CasePattern layer{true, "", fresh("k"), fresh("t"), fresh("m")};
    CTerm run = CTerm::apps(e, CTerm::var(layer.k), CTerm::var(layer.t), CTerm::var(layer.m));
    CTerm live = CTerm::app(CTerm::lam(c.binder, cps_type(kt), run), kval);
    return CTerm::case_(mm, cps_type(j.final.answer), CTerm::unit(), layer, live);
  }
};

std::set<std::string> judgment_names(const Derivation& d) {
  std::set<std::string> s;
  names_of(d.judgment.term, s);
  for (const auto& b : d.judgment.env) s.insert(b.first);
  return s;
}

void require_valid(const Derivation& d) {
  try {
    validate(d);
  } catch (const TypeError& e) {
    throw CpsError(std::string("cps: input derivation does not validate: ") + e.what());
  }
}

}  // namespace

CType cps_judgment_type(const Judgment& j) {
  return CType::arrows(cont_type(j.tau, j.initial), cps_type(j.final.trail), cps_type(j.final.meta),
                       cps_type(j.final.answer));
}

CTerm cps_term(const Derivation& d) {
  require_valid(d);
  Translator tr(judgment_names(d));
  return tr.translate(d);
}

CTerm cps_term(const Term& e) { return cps_term(elaborate(e).derivation); }

CTerm cps_program(const Derivation& d) {
  require_valid(d);
  const Judgment& j = d.judgment;
  if (!j.env.empty()) throw CpsError("cps_program: the derivation has free variables");
  if (!(j.initial.trail.is_empty() && j.initial.meta.is_empty() && j.final.trail.is_empty() &&
        j.final.meta.is_empty())) {
    throw CpsError("cps_program: trails and meta continuations must be empty at the top level");
  }
  Translator tr(judgment_names(d));
  CTerm e = tr.translate(d);
  Kont id = make_kont(j.tau, Trail::empty(), Meta::empty(), j.initial.answer);
  return CTerm::apps(e, tr.idk(id), CTerm::unit(), CTerm::unit());
}

CTerm idk_term(const Kont& k) { return Translator({}).idk(k); }

CTerm compose_term(const Trail& mu1, const Trail& mu2, const Trail& mu3) {
  return Translator({}).compose(mu1, mu2, mu3);
}

// ---------------------------------------------------------------------------
// λC typing

namespace {

[[noreturn]] void ill(const std::string& what) { throw CpsError("λC: " + what); }

CEnv bind(const CEnv& env, const std::string& x, const CType& t) {
  CEnv out = env;
  out.emplace_back(x, t);
  return out;
}

void expect(const CType& got, const CType& want, const char* where) {
  if (!(got == want)) ill(std::string(where) + ": expected " + to_display(want) + ", got " + to_display(got));
}

}  // namespace

CType ctype_of(const CTerm& e, const CEnv& env) {
  using namespace lc;
  auto sub = [&](const CPtr& p, const CEnv& en) { return ctype_of(CTerm(p), en); };
  return std::visit(
      overloaded{
          [&](const CVar& v) -> CType {
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
              if (it->first == v.name) return it->second;
            }
            ill("unbound variable " + v.name);
          },
          [&](const CLam& l) { return CType::fun(l.param_type, sub(l.body, bind(env, l.param, l.param_type))); },
          [&](const CApp& a) -> CType {
            CType f = sub(a.fn, env);
            const auto* ft = std::get_if<CFun>(&f.node().v);
            if (!ft) ill("application of a non-function of type " + to_display(f));
            expect(sub(a.arg, env), ft->dom, "argument");
            return ft->cod;
          },
          [](const CNum&) { return CType::nat(); },
          [](const CBoolLit&) { return CType::boolean(); },
          [&](const CAdd& a) {
            expect(sub(a.lhs, env), CType::nat(), "+");
            expect(sub(a.rhs, env), CType::nat(), "+");
            return CType::nat();
          },
          [&](const CIsZero& z) {
            expect(sub(z.arg, env), CType::nat(), "is0");
            return CType::boolean();
          },
          [&](const CIf& i) {
            expect(sub(i.cond, env), CType::boolean(), "if");
            CType t = sub(i.then_branch, env);
            expect(sub(i.else_branch, env), t, "else branch");
            return t;
          },
          [](const CUnitLit&) { return CType::unit(); },
          [&](const CPair& p) { return CType::prod(sub(p.left, env), sub(p.right, env)); },
          [&](const CCase& c) {
            CType s = sub(c.scrut, env);
            if (s.is_unit()) {
              expect(sub(c.unit_branch, env), c.result, "case () branch");
              return c.result;
            }
            if (!c.pattern.nested) {
              if (!s.is_fun()) ill("case on a " + to_display(s) + " with a variable pattern");
              expect(sub(c.other_branch, bind(env, c.pattern.var, s)), c.result, "case branch");
              return c.result;
            }
            const auto* outer = std::get_if<CProd>(&s.node().v);
            const CProd* inner = outer ? std::get_if<CProd>(&outer->left.node().v) : nullptr;
            if (!inner) ill("case on a " + to_display(s) + " with a layer pattern");
            CEnv en = bind(bind(bind(env, c.pattern.k, inner->left), c.pattern.t, inner->right), c.pattern.m,
                           outer->right);
            expect(sub(c.other_branch, en), c.result, "case branch");
            return c.result;
          },
      },
      e.node().v);
}

bool ctype_check(const CTerm& e, const CType& expected, const CEnv& env, std::string* why) {
  try {
    CType t = ctype_of(e, env);
    if (t == expected) return true;
    if (why) *why = "λC: expected " + to_display(expected) + ", got " + to_display(t);
    return false;
  } catch (const CpsError& err) {
    if (why) *why = err.what();
    return false;
  }
}

}  // namespace lambdad
