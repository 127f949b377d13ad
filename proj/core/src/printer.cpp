#include "lambdad/printer.hpp"

#include "lambdad/types.hpp"
#include "overloaded.hpp"

namespace lambdad {

namespace {

// Precedence levels: 0 binder, 1 sum, 2 application, 3 atom.
class TermPrinter {
 public:
  explicit TermPrinter(bool display) : display_(display) {}

  std::string at(const Term& t, int level) const {
    int own = level_of(t);
    std::string s = bare(t);
    return own < level ? "(" + s + ")" : s;
  }

 private:
  bool display_;

  static int level_of(const Term& t) {
    if (t.is<Lam>() || t.is<Capture>() || t.is<If>()) return 0;
    if (t.is<Add>()) return 1;
    if (t.is<App>() || t.is<IsZero>()) return 2;
    return 3;
  }

  // Function position of an application: a head atom followed by atoms.
  std::string head(const Term& t) const {
    if (auto a = t.get<App>()) return head(Term(a->fn)) + " " + at(Term(a->arg), 3);
    return at(t, 3);
  }

  std::string bare(const Term& t) const {
    return std::visit(
        overloaded{
            [](const Num& n) { return std::to_string(n.value); },
            [](const BoolLit& b) -> std::string { return b.value ? "true" : "false"; },
            [](const Var& v) { return v.name; },
            [&](const Lam& l) {
              std::string s = "fun " + l.param;
              if (l.annotation) s += " : " + to_display(*l.annotation);
              return s + " -> " + at(Term(l.body), 0);
            },
            [&](const App& a) { return head(Term(a.fn)) + " " + at(Term(a.arg), 3); },
            [&](const Add& a) { return at(Term(a.lhs), 1) + " + " + at(Term(a.rhs), 2); },
            [&](const IsZero& z) { return "is0 " + at(Term(z.arg), 2); },
            [&](const If& i) {
              return "if0 " + at(Term(i.cond), 0) + " then " + at(Term(i.then_branch), 0) +
                     " else " + at(Term(i.else_branch), 0);
            },
            [&](const Capture& c) {
              std::string s = std::string(keyword(c.op)) + " " + c.binder;
              if (!c.annotation.empty()) s += " @ " + print_annotation(c.annotation);
              return s + " -> " + at(Term(c.body), 0);
            },
            [&](const Reset& r) {
              return display_ ? "⟨" + at(Term(r.body), 0) + "⟩" : "reset { " + at(Term(r.body), 0) + " }";
            },
        },
        t.node().v);
  }
};

}  // namespace

std::string print_term(const Term& t, bool display) { return TermPrinter(display).at(t, 0); }

std::string print_annotation(const OpAnnotation& a) {
  std::string s = "{ ";
  bool first = true;
  auto field = [&](const std::string& k, const std::string& v) {
    if (!first) s += ", ";
    first = false;
    s += k + " : " + v;
  };
  if (a.k_type) field("k", to_display(*a.k_type));
  if (a.body_cont) field("cont", to_display(*a.body_cont));
  if (a.body_trail) field("trail", to_display(*a.body_trail));
  if (a.mid_trail) field("mid", to_display(*a.mid_trail));
  return s + " }";
}

namespace {

std::string cinline(const lc::CTerm& t) {
  using namespace lc;
  auto sub = [](const CPtr& p) { return cinline(CTerm(p)); };
  return std::visit(
      overloaded{
          [](const CVar& v) { return v.name; },
          [&](const CLam& l) {
            return "(\\" + l.param + ":" + to_display(l.param_type) + ". " + sub(l.body) + ")";
          },
          [&](const CApp& a) { return "(" + sub(a.fn) + " " + sub(a.arg) + ")"; },
          [](const CNum& n) { return std::to_string(n.value); },
          [](const CBoolLit& b) -> std::string { return b.value ? "true" : "false"; },
          [&](const CAdd& a) { return "(" + sub(a.lhs) + " + " + sub(a.rhs) + ")"; },
          [&](const CIsZero& z) { return "(is0 " + sub(z.arg) + ")"; },
          [&](const CIf& i) {
            return "(if " + sub(i.cond) + " then " + sub(i.then_branch) + " else " +
                   sub(i.else_branch) + ")";
          },
          [](const CUnitLit&) -> std::string { return "()"; },
          [&](const CPair& p) { return "(" + sub(p.left) + ", " + sub(p.right) + ")"; },
          [&](const CCase& c) {
            std::string pat = c.pattern.nested
                                  ? "((" + c.pattern.k + ", " + c.pattern.t + "), " + c.pattern.m + ")"
                                  : c.pattern.var;
            return "(case " + sub(c.scrut) + " : " + to_display(c.result) + " of () -> " +
                   sub(c.unit_branch) + " | " + pat + " -> " + sub(c.other_branch) + ")";
          },
      },
      t.node().v);
}

}  // namespace

std::string print_cterm(const lc::CTerm& t) { return cinline(t); }

}  // namespace lambdad
