#include "lambdad/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "overloaded.hpp"

namespace lambdad {

std::string_view keyword(ControlOp op) {
  switch (op) {
    case ControlOp::Shift: return "shift";
    case ControlOp::Control: return "control";
    case ControlOp::Shift0: return "shift0";
    case ControlOp::Control0: return "control0";
  }
  return "?";
}

namespace {

template <class Opt>
bool opt_eq(const Opt& a, const Opt& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

Term mk(TermNode n) { return Term(std::make_shared<const TermNode>(std::move(n))); }

}  // namespace

bool operator==(const OpAnnotation& a, const OpAnnotation& b) {
  return opt_eq(a.k_type, b.k_type) && opt_eq(a.body_cont, b.body_cont) &&
         opt_eq(a.body_trail, b.body_trail) && opt_eq(a.mid_trail, b.mid_trail);
}

Term Term::num(std::int64_t n) { return mk({Num{n}}); }
Term Term::boolean(bool b) { return mk({BoolLit{b}}); }
Term Term::var(std::string name) { return mk({Var{std::move(name)}}); }
Term Term::lam(std::string param, Term body, std::optional<Type> annotation) {
  return mk({Lam{std::move(param), std::move(annotation), body.ptr()}});
}
Term Term::app(Term fn, Term arg) { return mk({App{fn.ptr(), arg.ptr()}}); }
Term Term::add(Term lhs, Term rhs) { return mk({Add{lhs.ptr(), rhs.ptr()}}); }
Term Term::is_zero(Term arg) { return mk({IsZero{arg.ptr()}}); }
Term Term::if_(Term c, Term t, Term e) { return mk({If{c.ptr(), t.ptr(), e.ptr()}}); }
Term Term::capture(ControlOp op, std::string binder, Term body, OpAnnotation ann) {
  return mk({Capture{op, std::move(binder), std::move(ann), body.ptr()}});
}
Term Term::reset(Term body) { return mk({Reset{body.ptr()}}); }

bool Term::is_value() const { return is<Num>() || is<BoolLit>() || is<Lam>(); }

bool operator==(const Term& a, const Term& b) {
  if (a.ptr() == b.ptr()) return true;
  const auto& va = a.node().v;
  const auto& vb = b.node().v;
  if (va.index() != vb.index()) return false;
  auto eq = [](const std::shared_ptr<const TermNode>& x, const std::shared_ptr<const TermNode>& y) {
    return Term(x) == Term(y);
  };
  return std::visit(
      overloaded{
          [&](const Num& x) { return x.value == std::get<Num>(vb).value; },
          [&](const BoolLit& x) { return x.value == std::get<BoolLit>(vb).value; },
          [&](const Var& x) { return x.name == std::get<Var>(vb).name; },
          [&](const Lam& x) {
            const auto& y = std::get<Lam>(vb);
            return x.param == y.param && opt_eq(x.annotation, y.annotation) && eq(x.body, y.body);
          },
          [&](const App& x) {
            const auto& y = std::get<App>(vb);
            return eq(x.fn, y.fn) && eq(x.arg, y.arg);
          },
          [&](const Add& x) {
            const auto& y = std::get<Add>(vb);
            return eq(x.lhs, y.lhs) && eq(x.rhs, y.rhs);
          },
          [&](const IsZero& x) { return eq(x.arg, std::get<IsZero>(vb).arg); },
          [&](const If& x) {
            const auto& y = std::get<If>(vb);
            return eq(x.cond, y.cond) && eq(x.then_branch, y.then_branch) &&
                   eq(x.else_branch, y.else_branch);
          },
          [&](const Capture& x) {
            const auto& y = std::get<Capture>(vb);
            return x.op == y.op && x.binder == y.binder && x.annotation == y.annotation &&
                   eq(x.body, y.body);
          },
          [&](const Reset& x) { return eq(x.body, std::get<Reset>(vb).body); },
      },
      va);
}

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  auto under = [&](const std::string& x, const std::shared_ptr<const TermNode>& body) {
    bool fresh = bound.insert(x).second;
    collect_free(Term(body), bound, out);
    if (fresh) bound.erase(x);
  };
  std::visit(overloaded{
                 [](const Num&) {},
                 [](const BoolLit&) {},
                 [&](const Var& v) {
                   if (!bound.count(v.name)) out.insert(v.name);
                 },
                 [&](const Lam& l) { under(l.param, l.body); },
                 [&](const App& a) {
                   collect_free(Term(a.fn), bound, out);
                   collect_free(Term(a.arg), bound, out);
                 },
                 [&](const Add& a) {
                   collect_free(Term(a.lhs), bound, out);
                   collect_free(Term(a.rhs), bound, out);
                 },
                 [&](const IsZero& z) { collect_free(Term(z.arg), bound, out); },
                 [&](const If& i) {
                   collect_free(Term(i.cond), bound, out);
                   collect_free(Term(i.then_branch), bound, out);
                   collect_free(Term(i.else_branch), bound, out);
                 },
                 [&](const Capture& c) { under(c.binder, c.body); },
                 [&](const Reset& r) { collect_free(Term(r.body), bound, out); },
             },
             t.node().v);
}

template <class F>
void for_children(const Term& t, F&& f) {
  std::visit(overloaded{
                 [](const Num&) {},
                 [](const BoolLit&) {},
                 [](const Var&) {},
                 [&](const Lam& l) { f(Term(l.body)); },
                 [&](const App& a) {
                   f(Term(a.fn));
                   f(Term(a.arg));
                 },
                 [&](const Add& a) {
                   f(Term(a.lhs));
                   f(Term(a.rhs));
                 },
                 [&](const IsZero& z) { f(Term(z.arg)); },
                 [&](const If& i) {
                   f(Term(i.cond));
                   f(Term(i.then_branch));
                   f(Term(i.else_branch));
                 },
                 [&](const Capture& c) { f(Term(c.body)); },
                 [&](const Reset& r) { f(Term(r.body)); },
             },
             t.node().v);
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

int depth(const Term& t) {
  int d = -1;
  for_children(t, [&](const Term& c) { d = std::max(d, depth(c)); });
  return d + 1;
}

std::size_t size(const Term& t) {
  std::size_t n = 1;
  for_children(t, [&](const Term& c) { n += size(c); });
  return n;
}

bool uses_op(const Term& t, ControlOp op) {
  if (auto c = t.get<Capture>(); c && c->op == op) return true;
  bool found = false;
  for_children(t, [&](const Term& c) { found = found || uses_op(c, op); });
  return found;
}

Term erase_annotations(const Term& t) {
  return std::visit(
      overloaded{
          [&](const Num&) { return t; },
          [&](const BoolLit&) { return t; },
          [&](const Var&) { return t; },
          [&](const Lam& l) { return Term::lam(l.param, erase_annotations(Term(l.body))); },
          [&](const App& a) {
            return Term::app(erase_annotations(Term(a.fn)), erase_annotations(Term(a.arg)));
          },
          [&](const Add& a) {
            return Term::add(erase_annotations(Term(a.lhs)), erase_annotations(Term(a.rhs)));
          },
          [&](const IsZero& z) { return Term::is_zero(erase_annotations(Term(z.arg))); },
          [&](const If& i) {
            return Term::if_(erase_annotations(Term(i.cond)),
                             erase_annotations(Term(i.then_branch)),
                             erase_annotations(Term(i.else_branch)));
          },
          [&](const Capture& c) {
            return Term::capture(c.op, c.binder, erase_annotations(Term(c.body)));
          },
          [&](const Reset& r) { return Term::reset(erase_annotations(Term(r.body))); },
      },
      t.node().v);
}

bool is_identifier(std::string_view s) {
  static constexpr std::array<std::string_view, 13> reserved{
      "true", "false", "fun", "is0", "if0", "then", "else",
      "shift", "control", "shift0", "control0", "reset", "unit"};
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  }
  for (auto r : reserved) {
    if (s == r) return false;
  }
  return true;
}

}  // namespace lambdad
