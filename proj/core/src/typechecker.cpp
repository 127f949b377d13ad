#include "lambdad/typechecker.hpp"

#include <functional>
#include <stdexcept>

#include "json_tree.hpp"
#include "lambdad/errors.hpp"
#include "lambdad/printer.hpp"
#include "lambdad/relations.hpp"
#include "overloaded.hpp"
#include "rules.hpp"
#include "solver.hpp"

namespace lambdad {

// ---------------------------------------------------------------------------
// Solver encodings of compatible / id-cont-type

namespace solve {

Ty fresh_kont(Solver& s) {
  return mk(Con::Kont, {s.fresh(Sort::Type), s.fresh(Sort::Trail), s.fresh(Sort::Meta), s.fresh(Sort::Type)});
}

namespace {

std::vector<Alternative> expand_compatible(Solver& s, const std::vector<Ty>& a) {
  const Ty& m1 = a[0];
  const Ty& m2 = a[1];
  const Ty& m3 = a[2];
  std::vector<Alternative> out;
  out.push_back({"C1", {{m1, tnil()}, {m2, m3}}, {}});
  out.push_back({"C2", {{m1, fresh_kont(s)}, {m2, tnil()}, {m3, m1}}, {}});
  Ty t1 = s.fresh(Sort::Type);
  Ty t1r = s.fresh(Sort::Type);
  Ty sg = s.fresh(Sort::Meta);
  Ty mu1p = s.fresh(Sort::Trail);
  Ty mu3p = s.fresh(Sort::Trail);
  Ty k2 = fresh_kont(s);
  out.push_back({"C4",
                 {{m1, mk(Con::Kont, {t1, mu1p, sg, t1r})},
                  {m2, k2},
                  {m3, mk(Con::Kont, {t1, mu3p, sg, t1r})}},
                 {compatible_rel(k2, mu3p, mu1p)}});
  return out;
}

std::vector<Alternative> expand_id_cont(Solver& s, const std::vector<Ty>& a) {
  const Ty& g = a[0];
  const Ty& mu = a[1];
  const Ty& sg = a[2];
  const Ty& g2 = a[3];
  std::vector<Alternative> out;
  out.push_back({"I1", {{mu, tnil()}, {sg, mnil()}, {g, g2}}, {}});
  Ty m0 = s.fresh(Sort::Trail);
  Ty s0 = s.fresh(Sort::Meta);
  out.push_back({"I2", {{mu, tnil()}, {sg, mk(Con::MCons, {mk(Con::Kont, {g, m0, s0, g2}), m0, s0})}}, {}});
  out.push_back({"I3", {{mu, mk(Con::Kont, {g, tnil(), sg, g2})}}, {}});
  return out;
}

}  // namespace

Relation compatible_rel(Ty mu1, Ty mu2, Ty mu3, std::string origin) {
  return Relation{"compatible", expand_compatible, {std::move(mu1), std::move(mu2), std::move(mu3)},
                  std::move(origin)};
}

Relation id_cont_rel(Ty gamma, Ty mu, Ty sigma, Ty gamma_prime, std::string origin) {
  return Relation{"id-cont-type", expand_id_cont,
                  {std::move(gamma), std::move(mu), std::move(sigma), std::move(gamma_prime)},
                  std::move(origin)};
}

}  // namespace solve

// ---------------------------------------------------------------------------
// Constraint generation

namespace {

using solve::Con;
using solve::mk;
using solve::Sort;
using solve::Ty;

struct TyRow {
  Ty mu, sigma, ans;
};

struct TySlot {
  Ty tau;
  TyRow a, b;
};

using TyEnv = std::vector<std::pair<std::string, Ty>>;

struct RelRec {
  bool compat;  // compatible, otherwise id-cont-type
  std::vector<Ty> args;
};

struct Node {
  const char* rule = "";
  Term term;
  TyEnv env;
  TySlot s;
  std::vector<RelRec> rels;
  std::vector<Node> kids;
  Ty lam_type;
  Ty k_type, body_cont, body_trail, mid;

  explicit Node(Term t) : term(std::move(t)) {}
};

std::string brief(const Term& t) {
  std::string s = print_term(t);
  if (s.size() > 60) s = s.substr(0, 57) + "...";
  return s;
}

Ty kont_of(const TyRow& r, const Ty& arg) { return mk(Con::Kont, {arg, r.mu, r.sigma, r.ans}); }

class Gen {
 public:
  Gen(solve::Solver& s, bool pure_trails) : s_(s), pure_(pure_trails) {}

  Ty T() { return s_.fresh(Sort::Type); }
  Ty M() { return pure_ ? solve::tnil() : s_.fresh(Sort::Trail); }
  Ty S() { return s_.fresh(Sort::Meta); }
  TyRow R() { return {M(), S(), T()}; }

  void eq(const Ty& a, const Ty& b, const char* rule, const Term& at, const char* what) {
    if (!s_.unify(a, b)) {
      throw TypeError(TypeErrorKind::RuleMismatch, rule,
                      std::string(what) + ": " + solve::show(s_.walk(a)) + " vs " +
                          solve::show(s_.walk(b)) + " at `" + brief(at) + "`");
    }
  }
  void eq_row(const TyRow& x, const TyRow& y, const char* rule, const Term& at, const char* what) {
    eq(x.mu, y.mu, rule, at, what);
    eq(x.sigma, y.sigma, rule, at, what);
    eq(x.ans, y.ans, rule, at, what);
  }

  void relate(Node& n, bool compat, std::vector<Ty> args) {
    std::string origin = std::string(n.rule) + " at `" + brief(n.term) + "`";
    if (compat) {
      s_.add(solve::compatible_rel(args[0], args[1], args[2], origin));
    } else {
      s_.add(solve::id_cont_rel(args[0], args[1], args[2], args[3], origin));
    }
    n.rels.push_back({compat, std::move(args)});
  }

  static TyEnv extend(const TyEnv& env, const std::string& x, const Ty& t) {
    TyEnv out;
    out.reserve(env.size() + 1);
    for (const auto& b : env) {
      if (b.first != x) out.push_back(b);
    }
    out.emplace_back(x, t);
    return out;
  }

  Node gen(const Term& e, const TyEnv& env) {
    Node n(e);
    n.env = env;
    std::visit(overloaded{
                   [&](const Num&) { leaf(n, "TNum", solve::nat()); },
                   [&](const BoolLit&) { leaf(n, "TBool", solve::boolean()); },
                   [&](const Var& v) {
                     const Ty* t = nullptr;
                     for (auto it = env.rbegin(); it != env.rend(); ++it) {
                       if (it->first == v.name) {
                         t = &it->second;
                         break;
                       }
                     }
                     if (!t) {
                       throw TypeError(TypeErrorKind::UnboundVariable, "TVar",
                                       "unbound variable '" + v.name + "'");
                     }
                     leaf(n, "TVar", *t);
                   },
                   [&](const Lam& l) { lam(n, l); },
                   [&](const App& a) { app(n, a); },
                   [&](const Add& a) { add(n, a); },
                   [&](const IsZero& z) { is0(n, z); },
                   [&](const If& i) { if0(n, i); },
                   [&](const Reset& r) { reset(n, r); },
                   [&](const Capture& c) { capture(n, c); },
               },
               e.node().v);
    return n;
  }

 private:
  solve::Solver& s_;
  bool pure_;

  void leaf(Node& n, const char* rule, const Ty& tau) {
    n.rule = rule;
    n.s.tau = tau;
    n.s.a = R();
    n.s.b = n.s.a;
  }

  void lam(Node& n, const Lam& l) {
    n.rule = "TLam";
    Ty dom = T();
    n.kids.push_back(gen(Term(l.body), extend(n.env, l.param, dom)));
    const TySlot& b = n.kids[0].s;
    n.s.tau = mk(Con::Fun, {dom, b.tau, b.a.mu, b.a.sigma, b.a.ans, b.b.mu, b.b.sigma, b.b.ans});
    n.lam_type = n.s.tau;
    if (l.annotation) eq(n.s.tau, solve::from(*l.annotation), n.rule, n.term, "lambda annotation");
    n.s.a = R();
    n.s.b = n.s.a;
  }

  void app(Node& n, const App& a) {
    n.rule = "TApp";
    n.kids.push_back(gen(Term(a.fn), n.env));
    n.kids.push_back(gen(Term(a.arg), n.env));
    const TySlot& f = n.kids[0].s;
    const TySlot& x = n.kids[1].s;
    n.s.tau = T();
    n.s.a = R();
    n.s.b = f.b;
    eq_row(f.a, x.b, n.rule, n.term, "function's initial row against argument's final row");
    Ty expect = mk(Con::Fun, {x.tau, n.s.tau, n.s.a.mu, n.s.a.sigma, n.s.a.ans, x.a.mu, x.a.sigma, x.a.ans});
    eq(f.tau, expect, n.rule, n.term, "operator must be a function of the argument");
  }

  void add(Node& n, const Add& a) {
    n.rule = "TAdd";
    n.kids.push_back(gen(Term(a.lhs), n.env));
    n.kids.push_back(gen(Term(a.rhs), n.env));
    const TySlot& l = n.kids[0].s;
    const TySlot& r = n.kids[1].s;
    eq(l.tau, solve::nat(), n.rule, n.term, "left operand must be Nat");
    eq(r.tau, solve::nat(), n.rule, n.term, "right operand must be Nat");
    eq_row(l.a, r.b, n.rule, n.term, "left operand's initial row against right operand's final row");
    n.s.tau = solve::nat();
    n.s.a = r.a;
    n.s.b = l.b;
  }

  void is0(Node& n, const IsZero& z) {
    n.rule = "TIs0";
    n.kids.push_back(gen(Term(z.arg), n.env));
    const TySlot& x = n.kids[0].s;
    eq(x.tau, solve::nat(), n.rule, n.term, "argument must be Nat");
    n.s.tau = solve::boolean();
    n.s.a = x.a;
    n.s.b = x.b;
  }

  void if0(Node& n, const If& i) {
    n.rule = "TIf0";
    n.kids.push_back(gen(Term(i.cond), n.env));
    n.kids.push_back(gen(Term(i.then_branch), n.env));
    n.kids.push_back(gen(Term(i.else_branch), n.env));
    const TySlot& c = n.kids[0].s;
    const TySlot& t = n.kids[1].s;
    const TySlot& f = n.kids[2].s;
    eq(c.tau, solve::boolean(), n.rule, n.term, "condition must be Bool");
    eq(t.tau, f.tau, n.rule, n.term, "branches must have the same type");
    eq_row(t.a, f.a, n.rule, n.term, "branches must share the initial row");
    eq_row(t.b, f.b, n.rule, n.term, "branches must share the final row");
    eq_row(c.a, t.b, n.rule, n.term, "condition's initial row against the branches' final row");
    n.s.tau = t.tau;
    n.s.a = t.a;
    n.s.b = c.b;
  }

  void reset(Node& n, const Reset& r) {
    n.rule = "TPrompt0";
    n.s.tau = T();
    n.s.a = R();
    n.s.b = R();
    n.kids.push_back(gen(Term(r.body), n.env));
    const TySlot& b = n.kids[0].s;
    eq(b.b.mu, solve::tnil(), n.rule, n.term, "body runs with the empty trail");
    eq(b.b.sigma, mk(Con::MCons, {kont_of(n.s.a, n.s.tau), n.s.b.mu, n.s.b.sigma}), n.rule, n.term,
       "body's meta continuation holds the outer continuation and trail");
    eq(b.b.ans, n.s.b.ans, n.rule, n.term, "final answer type");
    relate(n, false, {b.tau, b.a.mu, b.a.sigma, b.a.ans});
  }

  void capture(Node& n, const Capture& c) {
    const bool delimited = captures_delimited(c.op);
    const bool pops = pops_meta(c.op);
    n.rule = c.op == ControlOp::Shift     ? "TShift"
             : c.op == ControlOp::Control ? "TControl"
             : c.op == ControlOp::Shift0  ? "TShift0"
                                          : "TControl0";
    n.s.tau = T();
    n.s.a = R();
    n.s.b = R();
    Ty t1 = T(), m1 = M(), s1 = S(), t2 = T(), m2 = M();
    Ty kont1 = mk(Con::Kont, {t1, m1, s1, t2});
    if (delimited) {
      // k v κ' t' m' = κ v t ((κ',t') :: m')
      Ty s2 = S();
      n.k_type = mk(Con::Fun, {n.s.tau, t1, m1, s1, t2, m2, s2, n.s.a.ans});
      eq(n.s.a.mu, n.s.b.mu, n.rule, n.term, "trail is unchanged");
      eq(n.s.a.sigma, mk(Con::MCons, {kont1, m2, s2}), n.rule, n.term,
         "initial meta continuation receives the invoking context");
    } else {
      // k v κ' t' m' = κ v (t @ (κ'::t')) m'
      n.k_type = mk(Con::Fun, {n.s.tau, t1, m1, s1, t2, m2, n.s.a.sigma, n.s.a.ans});
      n.mid = M();
      relate(n, true, {kont1, m2, n.mid});
      relate(n, true, {n.s.b.mu, n.mid, n.s.a.mu});
      if (c.annotation.mid_trail) {
        eq(n.mid, solve::from(*c.annotation.mid_trail), n.rule, n.term, "mid annotation");
      }
    }
    if (delimited && c.annotation.mid_trail) {
      throw TypeError(TypeErrorKind::RuleMismatch, n.rule,
                      "a mid-trail annotation only applies to control and control0");
    }
    if (c.annotation.k_type) {
      eq(n.k_type, solve::from(*c.annotation.k_type), n.rule, n.term, "continuation annotation");
    }

    n.kids.push_back(gen(Term(c.body), extend(n.env, c.binder, n.k_type)));
    const TySlot& b = n.kids[0].s;
    n.body_cont = kont_of(b.a, b.tau);
    n.body_trail = b.b.mu;
    if (pops) {
      // body runs with the continuation and trail popped from the meta continuation
      eq(n.s.b.sigma, mk(Con::MCons, {n.body_cont, b.b.mu, b.b.sigma}), n.rule, n.term,
         "final meta continuation must hold a layer to pop");
      eq(b.b.ans, n.s.b.ans, n.rule, n.term, "final answer type");
    } else {
      // body runs with idk, the empty trail, and the current meta continuation
      eq(b.b.mu, solve::tnil(), n.rule, n.term, "body runs with the empty trail");
      eq(b.b.sigma, n.s.b.sigma, n.rule, n.term, "body keeps the meta continuation");
      eq(b.b.ans, n.s.b.ans, n.rule, n.term, "final answer type");
      relate(n, false, {b.tau, b.a.mu, b.a.sigma, b.a.ans});
    }
    if (c.annotation.body_cont) {
      eq(n.body_cont, solve::from(*c.annotation.body_cont), n.rule, n.term, "cont annotation");
    }
    if (c.annotation.body_trail) {
      eq(n.body_trail, solve::from(*c.annotation.body_trail), n.rule, n.term, "trail annotation");
    }
  }
};

// ---------------------------------------------------------------------------
// Reading the solution back

class Builder {
 public:
  Builder(solve::Solver& s, std::function<Ty(solve::Solver&, Sort)> dflt) : s_(s), dflt_(std::move(dflt)) {}

  std::vector<std::pair<int, Ty>> defaulted;

  Ty z(const Ty& t) { return s_.zonk(t, dflt_, &defaulted); }
  Type type(const Ty& t) { return solve::to_type(z(t)); }
  Trail trail(const Ty& t) { return solve::to_trail(z(t)); }
  Meta meta(const Ty& t) { return solve::to_meta(z(t)); }
  Row row(const TyRow& r) { return Row{trail(r.mu), meta(r.sigma), type(r.ans)}; }

  Derivation build(const Node& n) {
    std::vector<Derivation> premises;
    for (const Node& k : n.kids) premises.push_back(build(k));
    Term term = rebuild(n, premises);
    Env env;
    for (const auto& [x, t] : n.env) env.emplace_back(x, type(t));
    Derivation d{n.rule, Judgment{std::move(env), term, type(n.s.tau), row(n.s.a), row(n.s.b)}, {},
                 std::move(premises)};
    for (const RelRec& r : n.rels) {
      if (r.compat) {
        CompatibleC c{trail(r.args[0]), trail(r.args[1]), trail(r.args[2])};
        d.constraints.push_back({c, compatible_case(c.mu1, c.mu2, c.mu3).value_or("unsatisfied")});
      } else {
        IdContTypeC c{type(r.args[0]), trail(r.args[1]), meta(r.args[2]), type(r.args[3])};
        d.constraints.push_back({c, id_cont_case(c.gamma, c.mu, c.sigma, c.gamma_prime).value_or("unsatisfied")});
      }
    }
    return d;
  }

 private:
  solve::Solver& s_;
  std::function<Ty(solve::Solver&, Sort)> dflt_;

  Term rebuild(const Node& n, const std::vector<Derivation>& premises) {
    auto kid = [&](std::size_t i) { return premises[i].judgment.term; };
    return std::visit(
        overloaded{
            [&](const Num&) { return n.term; },
            [&](const BoolLit&) { return n.term; },
            [&](const Var&) { return n.term; },
            [&](const Lam& l) { return Term::lam(l.param, kid(0), type(n.lam_type)); },
            [&](const App&) { return Term::app(kid(0), kid(1)); },
            [&](const Add&) { return Term::add(kid(0), kid(1)); },
            [&](const IsZero&) { return Term::is_zero(kid(0)); },
            [&](const If&) { return Term::if_(kid(0), kid(1), kid(2)); },
            [&](const Reset&) { return Term::reset(kid(0)); },
            [&](const Capture& c) {
              OpAnnotation a;
              a.k_type = type(n.k_type);
              a.body_cont = solve::to_kont(z(n.body_cont));
              a.body_trail = trail(n.body_trail);
              if (n.mid) a.mid_trail = trail(n.mid);
              return Term::capture(c.op, c.binder, kid(0), std::move(a));
            },
        },
        n.term.node().v);
  }
};

Ty default_for(solve::Solver&, Sort s) {
  switch (s) {
    case Sort::Type: return solve::nat();
    case Sort::Trail: return solve::tnil();
    case Sort::Meta: return solve::mnil();
    case Sort::Ann: return mk(Con::AnnEps);
  }
  return solve::nat();
}

Elaboration run(const Term& e, const Env& env, const ElaborateOptions& opts, const Judgment* exact) {
  solve::Solver s;
  Gen g(s, opts.pure_trails);
  TyEnv tenv;
  for (const auto& [x, t] : env) tenv = Gen::extend(tenv, x, solve::from(t));
  Node root = g.gen(e, tenv);

  const char* goal = "goal";
  auto pin = [&](const Ty& a, const Ty& b, const char* what) { g.eq(a, b, goal, e, what); };
  switch (opts.goal) {
    case Goal::Exact:
      pin(root.s.tau, solve::from(exact->tau), "τ");
      pin(root.s.a.mu, solve::from(exact->initial.trail), "μα");
      pin(root.s.a.sigma, solve::from(exact->initial.meta), "σα");
      pin(root.s.a.ans, solve::from(exact->initial.answer), "α");
      pin(root.s.b.mu, solve::from(exact->final.trail), "μβ");
      pin(root.s.b.sigma, solve::from(exact->final.meta), "σβ");
      pin(root.s.b.ans, solve::from(exact->final.answer), "β");
      break;
    case Goal::Program:
      pin(root.s.a.ans, root.s.b.ans, "program answer types agree");
      [[fallthrough]];
    case Goal::TopLevel:
      pin(root.s.a.mu, solve::tnil(), "empty initial trail");
      pin(root.s.b.mu, solve::tnil(), "empty final trail");
      pin(root.s.a.sigma, solve::mnil(), "empty initial meta continuation");
      pin(root.s.b.sigma, solve::mnil(), "empty final meta continuation");
      pin(root.s.tau, root.s.a.ans, "idk returns its argument");
      break;
    case Goal::Any: break;
  }

  if (!s.solve(opts.budget)) {
    throw TypeError(TypeErrorKind::ConstraintUnsatisfied, "", s.failure());
  }

  Builder b(s, default_for);
  Derivation d = b.build(root);
  Elaboration out{d, d.judgment.term, {}};
  for (const auto& [v, t] : b.defaulted) {
    out.defaulted.push_back("?" + std::to_string(v) + " := " + solve::show(t));
  }
  if (opts.strict && !out.defaulted.empty()) {
    std::string list;
    for (const auto& x : out.defaulted) list += (list.empty() ? "" : ", ") + x;
    throw TypeError(TypeErrorKind::AmbiguousType, "", "unconstrained type variables defaulted: " + list);
  }
  return out;
}

}  // namespace

Elaboration elaborate(const Term& e, const Env& env, const ElaborateOptions& opts) {
  if (opts.goal == Goal::Exact) {
    throw std::invalid_argument("elaborate: use check() for an exact judgment");
  }
  Elaboration el = run(e, env, opts, nullptr);
  try {
    validate(el.derivation);
  } catch (const TypeError& err) {
    throw std::logic_error(std::string("elaborated derivation failed validation: ") + err.what());
  }
  return el;
}

Derivation check(const Judgment& j, std::size_t budget) {
  ElaborateOptions o;
  o.goal = Goal::Exact;
  o.budget = budget;
  Elaboration el = run(j.term, j.env, o, &j);
  try {
    validate(el.derivation);
  } catch (const TypeError& err) {
    throw std::logic_error(std::string("elaborated derivation failed validation: ") + err.what());
  }
  return std::move(el.derivation);
}

Inference infer_pure_shift(const Term& e, bool strict) {
  for (ControlOp op : {ControlOp::Control, ControlOp::Shift0, ControlOp::Control0}) {
    if (uses_op(e, op)) {
      throw TypeError(TypeErrorKind::RuleMismatch, "infer",
                      std::string(keyword(op)) + " is outside the shift/reset fragment");
    }
  }
  ElaborateOptions o;
  o.goal = Goal::TopLevel;
  o.pure_trails = true;
  o.strict = strict;
  Elaboration el = elaborate(e, {}, o);
  return Inference{el.derivation.judgment, el.term, el.defaulted};
}

// ---------------------------------------------------------------------------
// Validation

namespace {

[[noreturn]] void mismatch(const Derivation& d, const std::string& what) {
  throw TypeError(TypeErrorKind::RuleMismatch, d.rule, what + " at `" + brief(d.judgment.term) + "`");
}

void need(bool ok, const Derivation& d, const std::string& what) {
  if (!ok) mismatch(d, what);
}

void need_premises(const Derivation& d, std::size_t n) {
  need(d.premises.size() == n, d, "expected " + std::to_string(n) + " premise(s)");
}

void same_env(const Derivation& d, const Derivation& p) {
  need(p.judgment.env == d.judgment.env, d, "premise environment differs");
}

void check_constraints(const Derivation& d, const std::vector<Constraint>& expected) {
  need(d.constraints.size() == expected.size(), d, "wrong number of side constraints");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const Discharged& got = d.constraints[i];
    std::optional<std::string> clause = std::visit(
        overloaded{
            [&](const CompatibleC& e) -> std::optional<std::string> {
              auto g = std::get_if<CompatibleC>(&got.constraint);
              need(g && g->mu1 == e.mu1 && g->mu2 == e.mu2 && g->mu3 == e.mu3, d,
                   "recorded compatible constraint does not match the rule");
              return compatible_case(e.mu1, e.mu2, e.mu3);
            },
            [&](const IdContTypeC& e) -> std::optional<std::string> {
              auto g = std::get_if<IdContTypeC>(&got.constraint);
              need(g && g->gamma == e.gamma && g->mu == e.mu && g->sigma == e.sigma &&
                       g->gamma_prime == e.gamma_prime,
                   d, "recorded id-cont-type constraint does not match the rule");
              return id_cont_case(e.gamma, e.mu, e.sigma, e.gamma_prime);
            },
        },
        expected[i]);
    if (!clause) {
      throw TypeError(TypeErrorKind::ConstraintUnsatisfied, d.rule, to_display(expected[i]));
    }
    need(*clause == got.clause, d, "recorded clause " + got.clause + " but " + *clause + " derives it");
  }
}

const Type& binder_type(const Derivation& d, const Derivation& body, const std::string& x) {
  const Type* t = lookup(body.judgment.env, x);
  need(t != nullptr, d, "binder missing from premise environment");
  need(body.judgment.env == extend(d.judgment.env, x, *t), d, "premise environment is not Γ extended by the binder");
  return *t;
}

void validate_capture(const Derivation& d, const Capture& c) {
  const Judgment& j = d.judgment;
  need_premises(d, 1);
  const Derivation& p = d.premises[0];
  const Judgment& b = p.judgment;
  need(b.term == Term(c.body), d, "premise term is not the body");
  const Type& k = binder_type(d, p, c.binder);
  need(k.is_fun(), d, "continuation variable must have a function type");
  const FunType& kf = k.as_fun();
  need(kf.dom == j.tau, d, "continuation accepts τ");
  need(kf.final.answer == j.initial.answer, d, "continuation answers α");
  Kont k1 = make_kont(kf.cod, kf.initial.trail, kf.initial.meta, kf.initial.answer);
  Kont body_cont = make_kont(b.tau, b.initial.trail, b.initial.meta, b.initial.answer);
  std::vector<Constraint> expected;

  std::optional<Trail> mid;
  if (captures_delimited(c.op)) {
    need(j.initial.trail == j.final.trail, d, "μα ≡ μβ");
    need(j.initial.meta == Meta::cons(k1, kf.final.trail, kf.final.meta), d,
         "σα ≡ (κ' × μ') :: σ'");
  } else {
    need(kf.final.meta == j.initial.meta, d, "continuation's final meta is σα");
    need(c.annotation.mid_trail.has_value(), d, "missing mid-trail annotation");
    mid = *c.annotation.mid_trail;
    expected.push_back(CompatibleC{Trail::kont(k1), kf.final.trail, *mid});
    expected.push_back(CompatibleC{j.final.trail, *mid, j.initial.trail});
  }

  if (pops_meta(c.op)) {
    need(j.final.meta == Meta::cons(body_cont, b.final.trail, b.final.meta), d,
         "σβ ≡ (body continuation × body trail) :: body meta");
    need(b.final.answer == j.final.answer, d, "final answer type");
  } else {
    need(b.final.trail.is_empty(), d, "body runs with the empty trail");
    need(b.final.meta == j.final.meta, d, "body keeps σβ");
    need(b.final.answer == j.final.answer, d, "final answer type");
    expected.push_back(IdContTypeC{b.tau, b.initial.trail, b.initial.meta, b.initial.answer});
  }

  const OpAnnotation& a = c.annotation;
  if (a.k_type) need(*a.k_type == k, d, "k annotation disagrees with the derivation");
  if (a.body_cont) need(*a.body_cont == body_cont, d, "cont annotation disagrees with the derivation");
  if (a.body_trail) need(*a.body_trail == b.final.trail, d, "trail annotation disagrees with the derivation");
  check_constraints(d, expected);
}

}  // namespace

void validate(const Derivation& d) {
  const Judgment& j = d.judgment;
  const Term& e = j.term;
  auto pure = [&] { need(j.initial == j.final, d, "a value leaves the answer row unchanged"); };
  std::visit(
      overloaded{
          [&](const Num&) {
            need(d.rule == "TNum", d, "numeral needs TNum");
            need_premises(d, 0);
            need(j.tau.is_nat(), d, "numeral has type Nat");
            pure();
          },
          [&](const BoolLit&) {
            need(d.rule == "TBool", d, "boolean needs TBool");
            need_premises(d, 0);
            need(j.tau.is_bool(), d, "boolean has type Bool");
            pure();
          },
          [&](const Var& v) {
            need(d.rule == "TVar", d, "variable needs TVar");
            need_premises(d, 0);
            const Type* t = lookup(j.env, v.name);
            if (!t) throw TypeError(TypeErrorKind::UnboundVariable, "TVar", "unbound variable '" + v.name + "'");
            need(*t == j.tau, d, "variable type differs from Γ");
            pure();
          },
          [&](const Lam& l) {
            need(d.rule == "TLam", d, "abstraction needs TLam");
            need_premises(d, 1);
            const Judgment& b = d.premises[0].judgment;
            need(b.term == Term(l.body), d, "premise term is not the body");
            need(j.tau.is_fun(), d, "abstraction has a function type");
            const FunType& f = j.tau.as_fun();
            need(b.env == extend(j.env, l.param, f.dom), d, "premise environment is not Γ, x:τ1");
            need(b.tau == f.cod && b.initial == f.initial && b.final == f.final, d,
                 "body judgment does not match the function type");
            if (l.annotation) need(*l.annotation == j.tau, d, "annotation disagrees with the derivation");
            pure();
          },
          [&](const App& a) {
            need(d.rule == "TApp", d, "application needs TApp");
            need_premises(d, 2);
            const Judgment& f = d.premises[0].judgment;
            const Judgment& x = d.premises[1].judgment;
            same_env(d, d.premises[0]);
            same_env(d, d.premises[1]);
            need(f.term == Term(a.fn) && x.term == Term(a.arg), d, "premise terms");
            need(f.tau == make_fun(x.tau, j.tau, j.initial, x.initial), d,
                 "operator type must be τ2 → τ ⟨row α⟩ ⟨argument's initial row⟩");
            need(f.initial == x.final, d, "row threading between operator and argument");
            need(f.final == j.final, d, "final row comes from the operator");
          },
          [&](const Add& a) {
            need(d.rule == "TAdd", d, "addition needs TAdd");
            need_premises(d, 2);
            const Judgment& l = d.premises[0].judgment;
            const Judgment& r = d.premises[1].judgment;
            same_env(d, d.premises[0]);
            same_env(d, d.premises[1]);
            need(l.term == Term(a.lhs) && r.term == Term(a.rhs), d, "premise terms");
            need(l.tau.is_nat() && r.tau.is_nat() && j.tau.is_nat(), d, "operands and result are Nat");
            need(j.initial == r.initial && r.final == l.initial && l.final == j.final, d, "row threading");
          },
          [&](const IsZero& z) {
            need(d.rule == "TIs0", d, "is0 needs TIs0");
            need_premises(d, 1);
            const Judgment& x = d.premises[0].judgment;
            same_env(d, d.premises[0]);
            need(x.term == Term(z.arg), d, "premise term");
            need(x.tau.is_nat(), d, "is0 requires a Nat argument");
            need(j.tau.is_bool(), d, "is0 returns Bool");
            need(j.initial == x.initial && j.final == x.final, d, "rows pass through");
          },
          [&](const If& i) {
            need(d.rule == "TIf0", d, "conditional needs TIf0");
            need_premises(d, 3);
            const Judgment& c = d.premises[0].judgment;
            const Judgment& t = d.premises[1].judgment;
            const Judgment& f = d.premises[2].judgment;
            for (const auto& p : d.premises) same_env(d, p);
            need(c.term == Term(i.cond) && t.term == Term(i.then_branch) && f.term == Term(i.else_branch), d,
                 "premise terms");
            need(c.tau.is_bool(), d, "condition must be Bool");
            need(t.tau == j.tau && f.tau == j.tau, d, "branches have the conclusion type");
            need(t.initial == j.initial && f.initial == j.initial, d, "branches share the initial row");
            need(t.final == c.initial && f.final == c.initial, d, "branches end where the condition starts");
            need(c.final == j.final, d, "final row comes from the condition");
          },
          [&](const Reset& r) {
            need(d.rule == "TPrompt0", d, "reset needs TPrompt0");
            need_premises(d, 1);
            const Judgment& b = d.premises[0].judgment;
            same_env(d, d.premises[0]);
            need(b.term == Term(r.body), d, "premise term");
            need(b.final.trail.is_empty(), d, "body runs with the empty trail");
            Kont outer = make_kont(j.tau, j.initial.trail, j.initial.meta, j.initial.answer);
            need(b.final.meta == Meta::cons(outer, j.final.trail, j.final.meta), d,
                 "body meta continuation is (κ × t) :: m");
            need(b.final.answer == j.final.answer, d, "final answer type");
            check_constraints(d, {IdContTypeC{b.tau, b.initial.trail, b.initial.meta, b.initial.answer}});
          },
          [&](const Capture& c) {
            const char* want = c.op == ControlOp::Shift     ? "TShift"
                               : c.op == ControlOp::Control ? "TControl"
                               : c.op == ControlOp::Shift0  ? "TShift0"
                                                            : "TControl0";
            need(d.rule == want, d, std::string(keyword(c.op)) + " needs " + want);
            validate_capture(d, c);
          },
      },
      e.node().v);
  if (!std::holds_alternative<Capture>(e.node().v) && !std::holds_alternative<Reset>(e.node().v)) {
    need(d.constraints.empty(), d, "rule has no side constraints");
  }
  for (const auto& p : d.premises) validate(p);
}

// ---------------------------------------------------------------------------
// Display and export

std::string to_display(const Constraint& c) {
  return std::visit(overloaded{
                        [](const CompatibleC& x) {
                          return "compatible(" + to_display(x.mu1) + ", " + to_display(x.mu2) + ", " +
                                 to_display(x.mu3) + ")";
                        },
                        [](const IdContTypeC& x) {
                          return "id-cont-type(" + to_display(x.gamma) + ", " + to_display(x.mu) + ", " +
                                 to_display(x.sigma) + ", " + to_display(x.gamma_prime) + ")";
                        },
                    },
                    c);
}

namespace {

bool constraint_eq(const Constraint& a, const Constraint& b) {
  if (a.index() != b.index()) return false;
  if (auto x = std::get_if<CompatibleC>(&a)) {
    const auto& y = std::get<CompatibleC>(b);
    return x->mu1 == y.mu1 && x->mu2 == y.mu2 && x->mu3 == y.mu3;
  }
  const auto& x = std::get<IdContTypeC>(a);
  const auto& y = std::get<IdContTypeC>(b);
  return x.gamma == y.gamma && x.mu == y.mu && x.sigma == y.sigma && x.gamma_prime == y.gamma_prime;
}

void print_into(const Derivation& d, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  out += pad + d.rule + "  " + to_display(d.judgment) + "\n";
  for (const auto& c : d.constraints) out += pad + "  | " + to_display(c.constraint) + "  [" + c.clause + "]\n";
  for (const auto& p : d.premises) print_into(p, indent + 1, out);
}

nlohmann::json json_of(const Derivation& d) {
  using nlohmann::json;
  json env = json::array();
  for (const auto& [x, t] : d.judgment.env) env.push_back({{"name", x}, {"type", tree::of(t)}});
  json cs = json::array();
  for (const auto& c : d.constraints) {
    json jc = std::visit(overloaded{
                             [](const CompatibleC& x) {
                               return json{{"kind", "compatible"},
                                           {"mu1", tree::of(x.mu1)},
                                           {"mu2", tree::of(x.mu2)},
                                           {"mu3", tree::of(x.mu3)}};
                             },
                             [](const IdContTypeC& x) {
                               return json{{"kind", "id-cont-type"},
                                           {"gamma", tree::of(x.gamma)},
                                           {"mu", tree::of(x.mu)},
                                           {"sigma", tree::of(x.sigma)},
                                           {"gamma_prime", tree::of(x.gamma_prime)}};
                             },
                         },
                         c.constraint);
    jc["clause"] = c.clause;
    cs.push_back(std::move(jc));
  }
  json ps = json::array();
  for (const auto& p : d.premises) ps.push_back(json_of(p));
  return json{{"rule", d.rule},
              {"judgment",
               {{"env", env},
                {"term", print_term(d.judgment.term)},
                {"tau", tree::of(d.judgment.tau)},
                {"initial", tree::of(d.judgment.initial)},
                {"final", tree::of(d.judgment.final)}}},
              {"constraints", cs},
              {"premises", ps}};
}

}  // namespace

bool operator==(const Derivation& a, const Derivation& b) {
  if (a.rule != b.rule) return false;
  const Judgment& x = a.judgment;
  const Judgment& y = b.judgment;
  if (!(x.env == y.env && x.term == y.term && x.tau == y.tau && x.initial == y.initial && x.final == y.final)) {
    return false;
  }
  if (a.constraints.size() != b.constraints.size() || a.premises.size() != b.premises.size()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    if (a.constraints[i].clause != b.constraints[i].clause) return false;
    if (!constraint_eq(a.constraints[i].constraint, b.constraints[i].constraint)) return false;
  }
  for (std::size_t i = 0; i < a.premises.size(); ++i) {
    if (!(a.premises[i] == b.premises[i])) return false;
  }
  return true;
}

std::string print_derivation(const Derivation& d) {
  std::string out;
  print_into(d, 0, out);
  return out;
}

std::string to_json_tree(const Derivation& d, int indent) { return json_of(d).dump(indent); }

const Derivation* find_rule(const Derivation& d, const std::string& rule) {
  if (d.rule == rule) return &d;
  for (const auto& p : d.premises) {
    if (const Derivation* r = find_rule(p, rule)) return r;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Judgments

Judgment top_level(Term term, Type tau) {
  return Judgment{{}, std::move(term), tau, Row::pure(tau), Row::pure(tau)};
}

const Type* lookup(const Env& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

Env extend(const Env& env, const std::string& name, const Type& t) {
  Env out;
  out.reserve(env.size() + 1);
  for (const auto& b : env) {
    if (b.first != name) out.push_back(b);
  }
  out.emplace_back(name, t);
  return out;
}

std::string to_display(const Judgment& j) {
  std::string s;
  for (std::size_t i = 0; i < j.env.size(); ++i) {
    s += (i ? ", " : "") + j.env[i].first + " : " + to_display(j.env[i].second);
  }
  return s + (s.empty() ? "" : " ") + "⊢ " + print_term(j.term) + " : " + to_display(j.tau) + " " +
         to_display(j.initial) + " " + to_display(j.final);
}

}  // namespace lambdad
