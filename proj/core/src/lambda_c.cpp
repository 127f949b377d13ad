#include "lambdad/lambda_c.hpp"

#include "overloaded.hpp"

namespace lambdad::lc {

namespace {
CType mk(CTypeNode n) { return CType(std::make_shared<const CTypeNode>(std::move(n))); }
CTerm mkt(CTermNode n) { return CTerm(std::make_shared<const CTermNode>(std::move(n))); }
}  // namespace

CType CType::nat() {
  static const CType t = mk({CNat{}});
  return t;
}
CType CType::boolean() {
  static const CType t = mk({CBool{}});
  return t;
}
CType CType::unit() {
  static const CType t = mk({CUnit{}});
  return t;
}
CType CType::fun(CType dom, CType cod) { return mk({CFun{std::move(dom), std::move(cod)}}); }
CType CType::prod(CType l, CType r) { return mk({CProd{std::move(l), std::move(r)}}); }

bool CType::is_unit() const { return std::holds_alternative<CUnit>(node_->v); }
bool CType::is_fun() const { return std::holds_alternative<CFun>(node_->v); }
bool CType::is_prod() const { return std::holds_alternative<CProd>(node_->v); }

bool operator==(const CType& a, const CType& b) {
  if (&a.node() == &b.node()) return true;
  const auto& va = a.node().v;
  const auto& vb = b.node().v;
  if (va.index() != vb.index()) return false;
  if (auto f = std::get_if<CFun>(&va)) {
    const auto& g = std::get<CFun>(vb);
    return f->dom == g.dom && f->cod == g.cod;
  }
  if (auto p = std::get_if<CProd>(&va)) {
    const auto& q = std::get<CProd>(vb);
    return p->left == q.left && p->right == q.right;
  }
  return true;
}

std::string to_display(const CType& t) {
  return std::visit(overloaded{
                        [](const CNat&) -> std::string { return "Nat"; },
                        [](const CBool&) -> std::string { return "Bool"; },
                        [](const CUnit&) -> std::string { return "Unit"; },
                        [](const CFun& f) -> std::string {
                          std::string d = to_display(f.dom);
                          if (f.dom.is_fun()) d = "(" + d + ")";
                          return d + " -> " + to_display(f.cod);
                        },
                        [](const CProd& p) -> std::string {
                          return "(" + to_display(p.left) + " * " + to_display(p.right) + ")";
                        },
                    },
                    t.node().v);
}

CTerm CTerm::var(std::string x) { return mkt({CVar{std::move(x)}}); }
CTerm CTerm::lam(std::string x, CType t, CTerm body) {
  return mkt({CLam{std::move(x), std::move(t), body.ptr()}});
}
CTerm CTerm::app(CTerm f, CTerm a) { return mkt({CApp{f.ptr(), a.ptr()}}); }
CTerm CTerm::num(std::int64_t n) { return mkt({CNum{n}}); }
CTerm CTerm::boolean(bool b) { return mkt({CBoolLit{b}}); }
CTerm CTerm::add(CTerm a, CTerm b) { return mkt({CAdd{a.ptr(), b.ptr()}}); }
CTerm CTerm::is_zero(CTerm a) { return mkt({CIsZero{a.ptr()}}); }
CTerm CTerm::if_(CTerm c, CTerm t, CTerm e) { return mkt({CIf{c.ptr(), t.ptr(), e.ptr()}}); }
CTerm CTerm::unit() {
  static const CTerm u = mkt({CUnitLit{}});
  return u;
}
CTerm CTerm::pair(CTerm a, CTerm b) { return mkt({CPair{a.ptr(), b.ptr()}}); }
CTerm CTerm::case_(CTerm scrut, CType result, CTerm unit_branch, CasePattern pat, CTerm other) {
  return mkt({CCase{scrut.ptr(), std::move(result), unit_branch.ptr(), std::move(pat), other.ptr()}});
}

namespace {

bool peq(const CPtr& a, const CPtr& b) { return CTerm(a) == CTerm(b); }

bool pat_eq(const CasePattern& a, const CasePattern& b) {
  if (a.nested != b.nested) return false;
  return a.nested ? (a.k == b.k && a.t == b.t && a.m == b.m) : a.var == b.var;
}

}  // namespace

bool operator==(const CTerm& a, const CTerm& b) {
  if (a.ptr() == b.ptr()) return true;
  const auto& va = a.node().v;
  const auto& vb = b.node().v;
  if (va.index() != vb.index()) return false;
  return std::visit(
      overloaded{
          [&](const CVar& x) { return x.name == std::get<CVar>(vb).name; },
          [&](const CLam& x) {
            const auto& y = std::get<CLam>(vb);
            return x.param == y.param && x.param_type == y.param_type && peq(x.body, y.body);
          },
          [&](const CApp& x) {
            const auto& y = std::get<CApp>(vb);
            return peq(x.fn, y.fn) && peq(x.arg, y.arg);
          },
          [&](const CNum& x) { return x.value == std::get<CNum>(vb).value; },
          [&](const CBoolLit& x) { return x.value == std::get<CBoolLit>(vb).value; },
          [&](const CAdd& x) {
            const auto& y = std::get<CAdd>(vb);
            return peq(x.lhs, y.lhs) && peq(x.rhs, y.rhs);
          },
          [&](const CIsZero& x) { return peq(x.arg, std::get<CIsZero>(vb).arg); },
          [&](const CIf& x) {
            const auto& y = std::get<CIf>(vb);
            return peq(x.cond, y.cond) && peq(x.then_branch, y.then_branch) &&
                   peq(x.else_branch, y.else_branch);
          },
          [&](const CUnitLit&) { return true; },
          [&](const CPair& x) {
            const auto& y = std::get<CPair>(vb);
            return peq(x.left, y.left) && peq(x.right, y.right);
          },
          [&](const CCase& x) {
            const auto& y = std::get<CCase>(vb);
            return peq(x.scrut, y.scrut) && x.result == y.result &&
                   peq(x.unit_branch, y.unit_branch) && pat_eq(x.pattern, y.pattern) &&
                   peq(x.other_branch, y.other_branch);
          },
      },
      va);
}

std::size_t size(const CTerm& t) {
  auto s = [](const CPtr& p) { return size(CTerm(p)); };
  return std::visit(overloaded{
                        [&](const CLam& x) { return 1 + s(x.body); },
                        [&](const CApp& x) { return 1 + s(x.fn) + s(x.arg); },
                        [&](const CAdd& x) { return 1 + s(x.lhs) + s(x.rhs); },
                        [&](const CIsZero& x) { return 1 + s(x.arg); },
                        [&](const CIf& x) {
                          return 1 + s(x.cond) + s(x.then_branch) + s(x.else_branch);
                        },
                        [&](const CPair& x) { return 1 + s(x.left) + s(x.right); },
                        [&](const CCase& x) {
                          return 1 + s(x.scrut) + s(x.unit_branch) + s(x.other_branch);
                        },
                        [](const auto&) -> std::size_t { return 1; },
                    },
                    t.node().v);
}

}  // namespace lambdad::lc
