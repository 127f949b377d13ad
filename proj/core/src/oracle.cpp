#include "lambdad/oracle.hpp"

#include <set>

#include "lambdad/errors.hpp"
#include "lambdad/printer.hpp"
#include "overloaded.hpp"

namespace lambdad::oracle {

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const Num&) {},
                 [&](const BoolLit&) {},
                 [&](const Var& v) { out.insert(v.name); },
                 [&](const Lam& l) {
                   out.insert(l.param);
                   collect_names(child(l.body), out);
                 },
                 [&](const App& a) {
                   collect_names(child(a.fn), out);
                   collect_names(child(a.arg), out);
                 },
                 [&](const Add& a) {
                   collect_names(child(a.lhs), out);
                   collect_names(child(a.rhs), out);
                 },
                 [&](const IsZero& z) { collect_names(child(z.arg), out); },
                 [&](const If& i) {
                   collect_names(child(i.cond), out);
                   collect_names(child(i.then_branch), out);
                   collect_names(child(i.else_branch), out);
                 },
                 [&](const Capture& c) {
                   out.insert(c.binder);
                   collect_names(child(c.body), out);
                 },
                 [&](const Reset& r) { collect_names(child(r.body), out); },
             },
             t.node().v);
}

std::string fresh(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string n = base + std::to_string(i);
    if (!avoid.count(n)) return n;
  }
}

struct Subst {
  const std::string& x;
  const Term& v;
  std::set<std::string> fv_v;

  // Renames binder `y` of `body` when it would capture a free variable of v.
  std::pair<std::string, Term> under(const std::string& y, const Term& body) const {
    if (!fv_v.count(y) || !free_vars(body).count(x)) return {y, body};
    std::set<std::string> avoid = fv_v;
    collect_names(body, avoid);
    avoid.insert(x);
    std::string y2 = fresh(y, avoid);
    return {y2, substitute(body, y, Term::var(y2))};
  }

  Term go(const Term& e) const {
    return std::visit(
        overloaded{
            [&](const Num&) { return e; },
            [&](const BoolLit&) { return e; },
            [&](const Var& y) { return y.name == x ? v : e; },
            [&](const Lam& l) {
              if (l.param == x) return e;
              auto [y, body] = under(l.param, child(l.body));
              return Term::lam(y, go(body), l.annotation);
            },
            [&](const App& a) { return Term::app(go(child(a.fn)), go(child(a.arg))); },
            [&](const Add& a) { return Term::add(go(child(a.lhs)), go(child(a.rhs))); },
            [&](const IsZero& z) { return Term::is_zero(go(child(z.arg))); },
            [&](const If& i) {
              return Term::if_(go(child(i.cond)), go(child(i.then_branch)), go(child(i.else_branch)));
            },
            [&](const Capture& c) {
              if (c.binder == x) return e;
              auto [y, body] = under(c.binder, child(c.body));
              return Term::capture(c.op, y, go(body), c.annotation);
            },
            [&](const Reset& r) { return Term::reset(go(child(r.body))); },
        },
        e.node().v);
  }
};

// Evaluation-context frames, outermost first.
struct Frame {
  enum class Kind { AppL, AppR, AddL, AddR, Is0, If, Reset } kind;
  std::shared_ptr<const TermNode> a, b;  // the other subterms
};

Term plug(const std::vector<Frame>& frames, std::size_t from, std::size_t to, Term hole) {
  for (std::size_t i = to; i-- > from;) {
    const Frame& f = frames[i];
    switch (f.kind) {
      case Frame::Kind::AppL: hole = Term::app(hole, child(f.a)); break;
      case Frame::Kind::AppR: hole = Term::app(child(f.a), hole); break;
      case Frame::Kind::AddL: hole = Term::add(hole, child(f.a)); break;
      case Frame::Kind::AddR: hole = Term::add(child(f.a), hole); break;
      case Frame::Kind::Is0: hole = Term::is_zero(hole); break;
      case Frame::Kind::If: hole = Term::if_(hole, child(f.a), child(f.b)); break;
      case Frame::Kind::Reset: hole = Term::reset(hole); break;
    }
  }
  return hole;
}

[[noreturn]] void stuck(const Term& at, const std::string& why) {
  throw OracleError(OracleErrorKind::Stuck, why + " at `" + print_term(at) + "`");
}

// Contracts the redex `r` under `frames`.
Term contract(const std::vector<Frame>& frames, const Term& r) {
  const std::size_t n = frames.size();
  auto whole = [&](Term t) { return plug(frames, 0, n, std::move(t)); };
  return std::visit(
      overloaded{
          [&](const App& a) -> Term {
            Term f = child(a.fn);
            const Lam* l = f.get<Lam>();
            if (!l) stuck(r, "application of a non-function");
            return whole(substitute(child(l->body), l->param, child(a.arg)));
          },
          [&](const Add& a) -> Term {
            const Num* x = child(a.lhs).get<Num>();
            const Num* y = child(a.rhs).get<Num>();
            if (!x || !y) stuck(r, "+ on a non-numeral");
            std::int64_t s = 0;
            if (__builtin_add_overflow(x->value, y->value, &s)) stuck(r, "numeral overflow");
            return whole(Term::num(s));
          },
          [&](const IsZero& z) -> Term {
            const Num* x = child(z.arg).get<Num>();
            if (!x) stuck(r, "is0 on a non-numeral");
            return whole(Term::boolean(x->value == 0));
          },
          [&](const If& i) -> Term {
            const BoolLit* b = child(i.cond).get<BoolLit>();
            if (!b) stuck(r, "if0 on a non-boolean");
            return whole(child(b->value ? i.then_branch : i.else_branch));
          },
          [&](const Reset& rs) -> Term { return whole(child(rs.body)); },
          [&](const Capture& c) -> Term {
            std::size_t p = n;
            while (p > 0 && frames[p - 1].kind != Frame::Kind::Reset) --p;
            if (p == 0) stuck(r, std::string(keyword(c.op)) + " outside any reset");
            const std::size_t reset_at = p - 1;
            // E = frames[reset_at+1, n); its variable is fresh for E.
            std::set<std::string> avoid;
            collect_names(plug(frames, p, n, Term::num(0)), avoid);
            std::string x = fresh("x", avoid);
            Term ex = plug(frames, p, n, Term::var(x));
            Term k = Term::lam(x, captures_delimited(c.op) ? Term::reset(ex) : ex);
            Term body = substitute(child(c.body), c.binder, k);
            if (!pops_meta(c.op)) body = Term::reset(body);
            return plug(frames, 0, reset_at, body);
          },
          [&](const auto&) -> Term { stuck(r, "no rule applies"); },
      },
      r.node().v);
}

}  // namespace

Term substitute(const Term& e, const std::string& x, const Term& v) {
  Subst s{x, v, free_vars(v)};
  return s.go(e);
}

std::optional<Term> step(const Term& e) {
  if (e.is_value()) return std::nullopt;
  std::vector<Frame> frames;
  Term cur = e;
  for (;;) {
    const TermNode& n = cur.node();
    if (const auto* a = std::get_if<App>(&n.v)) {
      if (!child(a->fn).is_value()) {
        frames.push_back({Frame::Kind::AppL, a->arg, nullptr});
        cur = child(a->fn);
        continue;
      }
      if (!child(a->arg).is_value()) {
        frames.push_back({Frame::Kind::AppR, a->fn, nullptr});
        cur = child(a->arg);
        continue;
      }
    } else if (const auto* s = std::get_if<Add>(&n.v)) {
      if (!child(s->lhs).is_value()) {
        frames.push_back({Frame::Kind::AddL, s->rhs, nullptr});
        cur = child(s->lhs);
        continue;
      }
      if (!child(s->rhs).is_value()) {
        frames.push_back({Frame::Kind::AddR, s->lhs, nullptr});
        cur = child(s->rhs);
        continue;
      }
    } else if (const auto* z = std::get_if<IsZero>(&n.v)) {
      if (!child(z->arg).is_value()) {
        frames.push_back({Frame::Kind::Is0, nullptr, nullptr});
        cur = child(z->arg);
        continue;
      }
    } else if (const auto* i = std::get_if<If>(&n.v)) {
      if (!child(i->cond).is_value()) {
        frames.push_back({Frame::Kind::If, i->then_branch, i->else_branch});
        cur = child(i->cond);
        continue;
      }
    } else if (const auto* r = std::get_if<Reset>(&n.v)) {
      if (!child(r->body).is_value()) {
        frames.push_back({Frame::Kind::Reset, nullptr, nullptr});
        cur = child(r->body);
        continue;
      }
    } else if (const auto* v = std::get_if<Var>(&n.v)) {
      stuck(cur, "free variable '" + v->name + "'");
    } else if (cur.is_value()) {
      stuck(cur, "value in redex position");  // unreachable: values never descend
    }
    return contract(frames, cur);
  }
}

Result normalize(const Term& e, const Options& opts) {
  Term cur = e;
  if (opts.on_step) opts.on_step(cur);
  for (std::size_t steps = 0;; ++steps) {
    if (cur.is_value()) return Result{cur, steps};
    if (steps >= opts.fuel) {
      throw OracleError(OracleErrorKind::OutOfFuel, "fuel " + std::to_string(opts.fuel) + " exhausted");
    }
    cur = *step(cur);
    if (opts.on_step) opts.on_step(cur);
  }
}

std::vector<Term> trace(const Term& e, std::size_t fuel) {
  std::vector<Term> out;
  Options o;
  o.fuel = fuel;
  o.on_step = [&](const Term& t) { out.push_back(t); };
  normalize(e, o);
  return out;
}

}  // namespace lambdad::oracle
