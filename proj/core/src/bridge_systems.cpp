// Constraint-based checkers for the comparison systems. Every system shares
// the structural rules (variables, λ, application, arithmetic, conditionals)
// over its own answer-type rows; reset and the capture operators differ.
// Each system's reset/capture rules are read off its CPS interpreter the same
// way λD's are.

#include <stdexcept>

#include "lambdad/bridges.hpp"
#include "lambdad/errors.hpp"
#include "lambdad/typechecker.hpp"
#include "overloaded.hpp"
#include "rules.hpp"
#include "solver.hpp"

namespace lambdad::bridge {

namespace {

using solve::Alternative;
using solve::Con;
using solve::mk;
using solve::Relation;
using solve::Solver;
using solve::Ty;
using SSort = solve::Sort;

Con con_of(Ctor c) { return static_cast<Con>(static_cast<int>(c) + 1); }
Ctor ctor_of(Con c) { return static_cast<Ctor>(static_cast<int>(c) - 1); }

Ty to_ty(const BType& t) {
  std::vector<Ty> args;
  args.reserve(t.args.size());
  for (const BType& a : t.args) args.push_back(to_ty(a));
  return mk(con_of(t.ctor), std::move(args));
}

BType from_ty(const Ty& t) {
  if (t->con == Con::Var) throw std::logic_error("residual variable in a zonked bridge type");
  std::vector<BType> args;
  args.reserve(t->args.size());
  for (const Ty& a : t->args) args.push_back(from_ty(a));
  return BType{ctor_of(t->con), std::move(args)};
}

SSort solver_sort(Sort s) {
  switch (s) {
    case Sort::Type: return SSort::Type;
    case Sort::Trail: return SSort::Trail;
    case Sort::Meta: return SSort::Meta;
    case Sort::Ann: return SSort::Ann;
  }
  return SSort::Type;
}

// --- relations ------------------------------------------------------------

// idk of 4Dfun: case t of () → (case m of () → v | f → f v) | k → k v () m
std::vector<Alternative> expand_id_fun(Solver& s, const std::vector<Ty>& a) {
  const Ty &g = a[0], &mu = a[1], &sg = a[2], &g2 = a[3];
  (void)s;
  return {
      {"I1", {{mu, solve::tnil()}, {sg, solve::mnil()}, {g, g2}}, {}},
      {"I2", {{mu, solve::tnil()}, {sg, mk(Con::MFun, {g, g2})}}, {}},
      {"I3", {{mu, mk(Con::Kont, {g, solve::tnil(), sg, g2})}}, {}},
  };
}

std::vector<Alternative> expand_id_fun_nonempty(Solver& s, const std::vector<Ty>& a) {
  auto all = expand_id_fun(s, a);
  all.erase(all.begin());
  return all;
}

// idk of CP: case t of () → v | k → k v ()
std::vector<Alternative> expand_id_cp(Solver&, const std::vector<Ty>& a) {
  const Ty &g = a[0], &mu = a[1], &g2 = a[2];
  return {
      {"I1", {{mu, solve::tnil()}, {g, g2}}, {}},
      {"I3", {{mu, mk(Con::CPKont, {g, solve::tnil(), g2})}}, {}},
  };
}

Ty fresh_cp_kont(Solver& s) {
  return mk(Con::CPKont, {s.fresh(SSort::Type), s.fresh(SSort::Trail), s.fresh(SSort::Type)});
}

Relation compat_cp_rel(Ty m1, Ty m2, Ty m3);

std::vector<Alternative> expand_compat_cp(Solver& s, const std::vector<Ty>& a) {
  const Ty &m1 = a[0], &m2 = a[1], &m3 = a[2];
  std::vector<Alternative> out;
  out.push_back({"C1", {{m1, solve::tnil()}, {m2, m3}}, {}});
  out.push_back({"C2", {{m1, fresh_cp_kont(s)}, {m2, solve::tnil()}, {m3, m1}}, {}});
  Ty t1 = s.fresh(SSort::Type);
  Ty t1r = s.fresh(SSort::Type);
  Ty mu1p = s.fresh(SSort::Trail);
  Ty mu3p = s.fresh(SSort::Trail);
  Ty k2 = fresh_cp_kont(s);
  out.push_back({"C4",
                 {{m1, mk(Con::CPKont, {t1, mu1p, t1r})}, {m2, k2}, {m3, mk(Con::CPKont, {t1, mu3p, t1r})}},
                 {compat_cp_rel(k2, mu3p, mu1p)}});
  return out;
}

Relation compat_cp_rel(Ty m1, Ty m2, Ty m3) {
  return Relation{"compatible", expand_compat_cp, {std::move(m1), std::move(m2), std::move(m3)}, ""};
}

// idk of D′: case m of () → v | (k :: m') → k v m'
std::vector<Alternative> expand_id_dp(Solver& s, const std::vector<Ty>& a) {
  const Ty &g = a[0], &sg = a[1], &g2 = a[2];
  Ty s0 = s.fresh(SSort::Meta);
  return {
      {"I1", {{sg, solve::mnil()}, {g, g2}}, {}},
      {"I2", {{sg, mk(Con::DPCons, {mk(Con::DPKont, {g, s0, g2}), s0})}}, {}},
  };
}

// The identity context's annotation in MB: ε or [τ σ] τ σ.
std::vector<Alternative> expand_id_mb(Solver& s, const std::vector<Ty>& a) {
  Ty t = s.fresh(SSort::Type);
  Ty n = s.fresh(SSort::Ann);
  return {
      {"I1", {{a[0], mk(Con::AnnEps)}}, {}},
      {"I2", {{a[0], mk(Con::AnnCons, {t, n, t, n})}}, {}},
  };
}

// A value body may carry ε (MB-Abs, MB-Shift0) or its full annotation.
std::vector<Alternative> expand_mb_body(Solver&, const std::vector<Ty>& a) {
  return {
      {"ext", {{a[0], mk(Con::AnnCons, {a[1], a[2], a[3], a[4]})}}, {}},
      {"eps", {{a[0], mk(Con::AnnEps)}}, {}},
  };
}

// Calling τ2 →σ τ: σ = [A] C, or ε and the call leaves its context alone.
std::vector<Alternative> expand_mb_call(Solver&, const std::vector<Ty>& a) {
  return {
      {"ext", {{a[0], mk(Con::AnnCons, {a[1], a[2], a[3], a[4]})}}, {}},
      {"eps", {{a[0], mk(Con::AnnEps)}, {a[1], a[3]}, {a[2], a[4]}}, {}},
  };
}

// --- constraint generation -----------------------------------------------

struct Fail {
  std::string why;
};

using Row = std::vector<Ty>;

struct Slot {
  Ty tau;
  Row a, b;
};

using TyEnv = std::vector<std::pair<std::string, Ty>>;

struct RuleRec {
  const char* name;
  Ty ann;  // MB only: the annotation that decides the original vs extended rule
};

class Gen {
 public:
  Gen(System sys, const CheckOptions& o, Solver& s) : sys_(sys), opts_(o), s_(s) {}

  std::vector<RuleRec> rules;

  Slot slot(Ty tau) { return {std::move(tau), row(), row()}; }

  Row row() {
    Row r;
    for (Sort so : row_sorts(sys_)) {
      if (so == Sort::Trail && (opts_.pure_trails || sys_ == System::FourDsr)) {
        r.push_back(solve::tnil());
      } else {
        r.push_back(s_.fresh(solver_sort(so)));
      }
    }
    return r;
  }

  void eq(const Ty& x, const Ty& y, const char* rule) {
    if (!s_.unify(x, y)) throw Fail{std::string(rule) + ": " + solve::show(s_.walk(x)) + " vs " + solve::show(s_.walk(y))};
  }
  void eq(const Row& x, const Row& y, const char* rule) {
    for (std::size_t i = 0; i < x.size(); ++i) eq(x[i], y[i], rule);
  }

  Slot gen(const Term& e, TyEnv& env) {
    return std::visit(overloaded{
                          [&](const Num&) { return leaf("Num", solve::nat()); },
                          [&](const BoolLit&) { return leaf("Bool", solve::boolean()); },
                          [&](const Var& v) {
                            for (auto it = env.rbegin(); it != env.rend(); ++it) {
                              if (it->first == v.name) return leaf("Var", it->second);
                            }
                            throw Fail{"unbound variable '" + v.name + "'"};
                          },
                          [&](const Lam& l) { return lam(l, env); },
                          [&](const App& a) { return app(a, env); },
                          [&](const Add& a) { return add(a, env); },
                          [&](const IsZero& z) {
                            rules.push_back({"Is0", nullptr});
                            Slot c = gen(child(z.arg), env);
                            eq(c.tau, solve::nat(), "Is0");
                            return Slot{solve::boolean(), c.a, c.b};
                          },
                          [&](const If& i) { return cond(i, env); },
                          [&](const Reset& r) { return reset(r, env); },
                          [&](const Capture& c) { return capture(c, env); },
                      },
                      e.node().v);
  }

 private:
  System sys_;
  const CheckOptions& opts_;
  Solver& s_;

  Ty T() { return s_.fresh(SSort::Type); }
  Ty Tr() { return (opts_.pure_trails || sys_ == System::FourDsr) ? solve::tnil() : s_.fresh(SSort::Trail); }
  Ty M() { return s_.fresh(SSort::Meta); }
  Ty A() { return s_.fresh(SSort::Ann); }
  bool mb_orig() const { return sys_ == System::MB && !opts_.mb_extended; }

  Slot leaf(const char* rule, Ty tau) {
    rules.push_back({rule, nullptr});
    Row r = row();
    return Slot{std::move(tau), r, r};
  }

  // τ1 → τ2 with the body's rows.
  Ty fun(const Ty& dom, const Ty& cod, const Row& a, const Row& b) {
    switch (sys_) {
      case System::DF: return mk(Con::DFFun, {dom, cod, a[0], b[0]});
      case System::DF2: return mk(Con::DF2Fun, {dom, cod, a[0], a[1], b[0], b[1]});
      case System::CP: return mk(Con::CPFun, {dom, cod, a[0], a[1], b[0], b[1]});
      case System::DPrime: return mk(Con::DPFun, {dom, cod, a[0], a[1], b[0], b[1]});
      case System::MB: return mk(Con::MBFun, {dom, cod, mk(Con::AnnCons, {a[0], a[1], b[0], b[1]})});
      default: return mk(Con::Fun, {dom, cod, a[0], a[1], a[2], b[0], b[1], b[2]});
    }
  }

  static bool value_like(const Term& t) { return t.is_value() || t.is<Var>(); }

  Slot lam(const Lam& l, TyEnv& env) {
    std::size_t at = rules.size();
    rules.push_back({"Lam", nullptr});
    Ty x = T();
    env.emplace_back(l.param, x);
    Slot body = gen(child(l.body), env);
    env.pop_back();
    Ty tau;
    if (sys_ == System::MB) {
      Ty ann = A();
      rules[at] = {"MB-Abs", ann};
      if (mb_orig() && value_like(child(l.body))) {
        s_.add(Relation{"mb-body", expand_mb_body, {ann, body.a[0], body.a[1], body.b[0], body.b[1]}, "MB-Abs"});
      } else {
        eq(ann, mk(Con::AnnCons, {body.a[0], body.a[1], body.b[0], body.b[1]}), "MB-Abs");
      }
      tau = mk(Con::MBFun, {x, body.tau, ann});
    } else {
      tau = fun(x, body.tau, body.a, body.b);
    }
    Row r = row();
    return Slot{tau, r, r};
  }

  Slot app(const App& a, TyEnv& env) {
    rules.push_back({"App", nullptr});
    Slot f = gen(child(a.fn), env);
    Slot x = gen(child(a.arg), env);
    Slot s = slot(T());
    if (mb_orig()) {
      Ty ann = A();
      s_.add(Relation{"mb-call", expand_mb_call, {ann, s.a[0], s.a[1], x.a[0], x.a[1]}, "App"});
      eq(f.tau, mk(Con::MBFun, {x.tau, s.tau, ann}), "App");
    } else {
      eq(f.tau, fun(x.tau, s.tau, s.a, x.a), "App");
    }
    eq(f.a, x.b, "App");
    eq(s.b, f.b, "App");
    return s;
  }

  Slot add(const Add& a, TyEnv& env) {
    rules.push_back({"Add", nullptr});
    Slot l = gen(child(a.lhs), env);
    Slot r = gen(child(a.rhs), env);
    eq(l.tau, solve::nat(), "Add");
    eq(r.tau, solve::nat(), "Add");
    eq(r.b, l.a, "Add");
    return Slot{solve::nat(), r.a, l.b};
  }

  Slot cond(const If& i, TyEnv& env) {
    rules.push_back({"If", nullptr});
    Slot c = gen(child(i.cond), env);
    Slot t = gen(child(i.then_branch), env);
    Slot f = gen(child(i.else_branch), env);
    eq(c.tau, solve::boolean(), "If");
    eq(t.tau, f.tau, "If");
    eq(t.a, f.a, "If");
    eq(t.b, f.b, "If");
    eq(c.a, t.b, "If");
    return Slot{t.tau, t.a, c.b};
  }

  void id_cont(const Slot& body, const char* rule) {
    switch (sys_) {
      case System::DF:
        eq(body.tau, body.a[0], rule);
        break;
      case System::DF2:
        eq(body.a[0], mk(Con::MFun, {body.tau, body.a[1]}), rule);
        break;
      case System::CP:
        s_.add(Relation{"id-cont-type", expand_id_cp, {body.tau, body.a[0], body.a[1]}, rule});
        break;
      case System::DPrime:
        s_.add(Relation{"id-cont-type", expand_id_dp, {body.tau, body.a[0], body.a[1]}, rule});
        break;
      case System::MB:
        eq(body.a[0], body.tau, rule);
        s_.add(Relation{"id-cont-type", expand_id_mb, {body.a[1]}, rule});
        break;
      case System::FourDfun:
        s_.add(Relation{"id-cont-type", opts_.no_empty_meta ? expand_id_fun_nonempty : expand_id_fun,
                        {body.tau, body.a[0], body.a[1], body.a[2]}, rule});
        break;
      default:
        s_.add(solve::id_cont_rel(body.tau, body.a[0], body.a[1], body.a[2], rule));
        break;
    }
  }

  Slot reset(const Reset& r, TyEnv& env) {
    rules.push_back({"Reset", nullptr});
    Slot body = gen(child(r.body), env);
    Slot s = slot(T());
    id_cont(body, "Reset");
    switch (sys_) {
      case System::DF:
        // ⟨e⟩ κ = κ (e idk)
        eq(body.b[0], s.tau, "Reset");
        eq(s.a, s.b, "Reset");
        break;
      case System::DF2:
        // ⟨e⟩ κ m = e idk (λv. κ v m)
        eq(body.b, Row{mk(Con::MFun, {s.tau, s.a[1]}), s.b[1]}, "Reset");
        eq(s.a[0], s.b[0], "Reset");
        break;
      case System::CP:
        // ⟨e⟩ κ t = κ (e idk ()) t
        eq(body.b, Row{solve::tnil(), s.tau}, "Reset");
        eq(s.a, s.b, "Reset");
        break;
      case System::DPrime:
        // ⟨e⟩ κ m = e idk (κ :: m)
        eq(body.b, Row{mk(Con::DPCons, {mk(Con::DPKont, {s.tau, s.a[0], s.a[1]}), s.b[0]}), s.b[1]}, "Reset");
        break;
      case System::MB:
        eq(body.b, Row{s.tau, mk(Con::AnnCons, {s.a[0], s.a[1], s.b[0], s.b[1]})}, "Reset");
        break;
      case System::FourDfun:
        // ⟨e⟩ κ t m = e idk () (λv. κ v t m)
        eq(body.b, Row{solve::tnil(), mk(Con::MFun, {s.tau, s.a[2]}), s.b[2]}, "Reset");
        eq(s.a[0], s.b[0], "Reset");
        eq(s.a[1], s.b[1], "Reset");
        break;
      case System::FourDsr:
        eq(body.b,
           Row{solve::tnil(), mk(Con::MCons, {mk(Con::Kont, {s.tau, solve::tnil(), s.a[1], s.a[2]}), solve::tnil(), s.a[1]}),
               s.b[2]},
           "Reset");
        eq(s.a[1], s.b[1], "Reset");
        break;
      case System::FourD: throw std::logic_error("λD is checked by the λD typechecker");
    }
    return s;
  }

  Slot capture(const Capture& c, TyEnv& env) {
    const char* rule = c.op == ControlOp::Shift ? "Shift" : c.op == ControlOp::Control ? "Control" : "Shift0";
    std::size_t at = rules.size();
    rules.push_back({rule, nullptr});
    Slot s = slot(T());
    Ty k;
    Ty ann1, ann2;  // MB
    switch (sys_) {
      case System::DF: {
        Ty d = T();
        k = mk(Con::DFFun, {s.tau, s.a[0], d, d});
        break;
      }
      case System::DF2: {
        // k = λv κ' m'. κ v (λw. κ' w m')
        Ty t1 = T(), t2 = T(), sg = M();
        k = mk(Con::DF2Fun, {s.tau, t1, sg, t2, sg, s.a[1]});
        eq(s.a[0], mk(Con::MFun, {t1, t2}), rule);
        break;
      }
      case System::FourDfun:
        if (c.op == ControlOp::Shift) {
          // k = λv κ' t' m'. κ v t (λw. κ' w t' m')
          Ty t1 = T(), t2 = T(), mu = Tr(), sg = M();
          k = mk(Con::Fun, {s.tau, t1, mu, sg, t2, mu, sg, s.a[2]});
          eq(s.a[0], s.b[0], rule);
          eq(s.a[1], mk(Con::MFun, {t1, t2}), rule);
        } else {
          k = control_k(s, rule);
        }
        break;
      case System::FourDsr: {
        Ty t1 = T(), t2 = T(), sg = M();
        k = mk(Con::Fun, {s.tau, t1, solve::tnil(), sg, t2, solve::tnil(), sg, s.a[2]});
        eq(s.a[1], mk(Con::MCons, {mk(Con::Kont, {t1, solve::tnil(), sg, t2}), solve::tnil(), sg}), rule);
        break;
      }
      case System::CP: {
        // k = λv κ' t'. κ v (t @ (κ' :: t'))
        Ty t1 = T(), t2 = T(), mu1 = Tr(), mu2 = Tr(), mu0 = Tr();
        k = mk(Con::CPFun, {s.tau, t1, mu1, t2, mu2, s.a[1]});
        s_.add(compat_cp_rel(mk(Con::CPKont, {t1, mu1, t2}), mu2, mu0));
        s_.add(compat_cp_rel(s.b[0], mu0, s.a[0]));
        break;
      }
      case System::DPrime: {
        // k = λv κ' m'. κ v (κ' :: m')
        Ty t1 = T(), t2 = T(), s1 = M(), s2 = M();
        k = mk(Con::DPFun, {s.tau, t1, s1, t2, s2, s.a[1]});
        eq(s.a[0], mk(Con::DPCons, {mk(Con::DPKont, {t1, s1, t2}), s2}), rule);
        break;
      }
      case System::MB:
        ann1 = s.a[1];
        k = mk(Con::MBFun, {s.tau, s.a[0], ann1});
        if (!mb_orig()) eq(ann1, mk(Con::AnnCons, {T(), A(), T(), A()}), rule);
        break;
      case System::FourD: throw std::logic_error("λD is checked by the λD typechecker");
    }
    env.emplace_back(c.binder, k);
    Slot body = gen(child(c.body), env);
    env.pop_back();
    switch (sys_) {
      case System::DF:
        eq(body.tau, body.a[0], rule);
        eq(s.b, body.b, rule);
        break;
      case System::DPrime:
        // body runs with the popped layer κ0 and m0
        eq(s.b[0], mk(Con::DPCons, {mk(Con::DPKont, {body.tau, body.a[0], body.a[1]}), body.b[0]}), rule);
        eq(s.b[1], body.b[1], rule);
        break;
      case System::MB:
        ann2 = s.b[1];
        eq(s.b[0], body.tau, rule);
        if (mb_orig() && value_like(child(c.body))) {
          s_.add(Relation{"mb-body", expand_mb_body, {ann2, body.a[0], body.a[1], body.b[0], body.b[1]}, "MB-Shift0"});
        } else {
          eq(ann2, mk(Con::AnnCons, {body.a[0], body.a[1], body.b[0], body.b[1]}), rule);
        }
        rules[at] = {"MB-Shift0", ann1};
        rules.push_back({"", ann2});  // second annotation of the same node
        break;
      default:
        // body runs with idk, an empty trail and the current meta continuation
        id_cont(body, rule);
        {
          Row fin = s.b;
          if (row_sorts(sys_).front() == Sort::Trail) fin[0] = solve::tnil();
          eq(body.b, fin, rule);
        }
        break;
    }
    return s;
  }

  // control's continuation and trail composition, shared by 4Dfun and λD.
  Ty control_k(const Slot& s, const char* rule) {
    (void)rule;
    Ty t1 = T(), t2 = T(), mu1 = Tr(), mu2 = Tr(), mu0 = Tr(), sg1 = M();
    Ty k = mk(Con::Fun, {s.tau, t1, mu1, sg1, t2, mu2, s.a[1], s.a[2]});
    s_.add(solve::compatible_rel(mk(Con::Kont, {t1, mu1, sg1, t2}), mu2, mu0, rule));
    s_.add(solve::compatible_rel(s.b[0], mu0, s.a[0], rule));
    return k;
  }
};

bool allowed(System sys, ControlOp op) {
  switch (sys) {
    case System::DF:
    case System::DF2:
    case System::FourDsr: return op == ControlOp::Shift;
    case System::FourDfun: return op == ControlOp::Shift || op == ControlOp::Control;
    case System::CP: return op == ControlOp::Control;
    case System::MB:
    case System::DPrime: return op == ControlOp::Shift0;
    case System::FourD: return true;
  }
  return false;
}

void require_fragment(System sys, const Term& e) {
  for (ControlOp op : {ControlOp::Shift, ControlOp::Control, ControlOp::Shift0, ControlOp::Control0}) {
    if (!allowed(sys, op) && uses_op(e, op)) {
      throw BridgeError(BridgeErrorKind::FragmentViolation,
                        std::string(keyword(op)) + " is outside the " + std::string(name(sys)) + " fragment");
    }
  }
}

void require_judgment(System sys, const BJudgment& j) {
  const auto& rs = row_sorts(sys);
  auto bad = [&](const std::string& what) {
    throw std::invalid_argument(std::string(name(sys)) + " judgment: " + what);
  };
  if (j.initial.size() != rs.size() || j.final.size() != rs.size()) bad("wrong row width");
  if (!well_formed(sys, j.tau)) bad("ill-formed type " + to_string(j.tau));
  for (const auto& [x, t] : j.env) {
    if (!well_formed(sys, t)) bad("ill-formed type for " + x);
  }
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (!well_formed(sys, j.initial[i], rs[i]) || !well_formed(sys, j.final[i], rs[i])) bad("ill-formed row");
  }
}

Ty default_for(System sys, const CheckOptions& o, Solver& s, SSort so) {
  (void)s;
  switch (so) {
    case SSort::Type: return solve::nat();
    case SSort::Trail: return solve::tnil();
    case SSort::Ann: return mk(Con::AnnEps);
    case SSort::Meta:
      if (sys == System::DF2 || (sys == System::FourDfun && o.no_empty_meta)) {
        return mk(Con::MFun, {solve::nat(), solve::nat()});
      }
      return solve::mnil();
  }
  return solve::nat();
}

struct Outcome {
  bool ok = false;
  std::optional<Inferred> inferred;
};

Outcome run(System sys, const Term& e0, const std::vector<std::pair<std::string, BType>>& env,
            const BJudgment* exact, const CheckOptions& opts) {
  require_fragment(sys, e0);
  Term e = erase_annotations(e0);
  Solver s;
  Gen g(sys, opts, s);
  TyEnv tenv;
  for (const auto& [x, t] : env) tenv.emplace_back(x, to_ty(t));
  Slot root;
  try {
    root = g.gen(e, tenv);
    if (exact) {
      g.eq(root.tau, to_ty(exact->tau), "judgment");
      for (std::size_t i = 0; i < root.a.size(); ++i) {
        g.eq(root.a[i], to_ty(exact->initial[i]), "judgment");
        g.eq(root.b[i], to_ty(exact->final[i]), "judgment");
      }
    }
  } catch (const Fail&) {
    return {};
  }
  if (!s.solve(opts.budget)) return {};
  if (exact) return {true, std::nullopt};

  auto dflt = [&](Solver& sv, SSort so) { return default_for(sys, opts, sv, so); };
  Inferred out;
  for (const auto& [x, t] : tenv) out.judgment.env.emplace_back(x, from_ty(s.zonk(t, dflt)));
  out.judgment.tau = from_ty(s.zonk(root.tau, dflt));
  for (const Ty& t : root.a) out.judgment.initial.push_back(from_ty(s.zonk(t, dflt)));
  for (const Ty& t : root.b) out.judgment.final.push_back(from_ty(s.zonk(t, dflt)));
  // MB: a rule is the original one when one of its annotations is ε
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    const RuleRec& r = g.rules[i];
    if (*r.name == '\0') continue;
    std::string n = r.name;
    if (r.ann) {
      bool eps = s.zonk(r.ann, dflt)->con == Con::AnnEps;
      if (n == "MB-Shift0" && i + 1 < g.rules.size() && *g.rules[i + 1].name == '\0') {
        eps = eps || s.zonk(g.rules[i + 1].ann, dflt)->con == Con::AnnEps;
      }
      if (!eps) n += "-Ext";
    }
    out.rules.push_back(n);
  }
  return {true, std::move(out)};
}

void collect_rules(const Derivation& d, std::vector<std::string>& out) {
  out.push_back(d.rule);
  for (const Derivation& p : d.premises) collect_rules(p, out);
}

}  // namespace

bool in_fragment(System sys, const Term& e) {
  try {
    require_fragment(sys, e);
    return true;
  } catch (const BridgeError&) {
    return false;
  }
}

bool typable_in(System sys, const Term& e, const BJudgment& j, const CheckOptions& opts) {
  require_fragment(sys, e);
  require_judgment(sys, j);
  if (sys == System::FourD) {
    try {
      check(to_lambdad(j, e), opts.budget);
      return true;
    } catch (const TypeError& err) {
      if (err.kind() == TypeErrorKind::SearchExhausted) throw;
      return false;
    }
  }
  return run(sys, e, j.env, &j, opts).ok;
}

std::optional<Inferred> infer_in(System sys, const Term& e, const std::vector<std::pair<std::string, BType>>& env,
                                 const CheckOptions& opts) {
  require_fragment(sys, e);
  for (const auto& [x, t] : env) {
    if (!well_formed(sys, t)) throw std::invalid_argument("ill-formed type for " + x);
  }
  if (sys == System::FourD) {
    Env lenv;
    for (const auto& [x, t] : env) lenv.emplace_back(x, to_lambdad(t));
    ElaborateOptions eo;
    eo.goal = Goal::Any;
    eo.pure_trails = opts.pure_trails;
    eo.budget = opts.budget;
    try {
      Elaboration el = elaborate(e, lenv, eo);
      Inferred out{from_lambdad(el.derivation.judgment), {}};
      collect_rules(el.derivation, out.rules);
      return out;
    } catch (const TypeError& err) {
      if (err.kind() == TypeErrorKind::SearchExhausted) throw;
      return std::nullopt;
    }
  }
  return run(sys, e, env, nullptr, opts).inferred;
}

}  // namespace lambdad::bridge
