#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

// The target calculus λC: simply typed, with unit, pairs and a case analysis
// that distinguishes unit from a function or a nested pair.
namespace lambdad::lc {

struct CTypeNode;

class CType {
 public:
  static CType nat();
  static CType boolean();
  static CType unit();
  static CType fun(CType dom, CType cod);
  static CType prod(CType left, CType right);

  // Curried arrow a1 -> a2 -> ... -> r.
  template <class... Ts>
  static CType arrows(CType first, Ts... rest) {
    if constexpr (sizeof...(rest) == 0) {
      return first;
    } else {
      return fun(std::move(first), arrows(std::move(rest)...));
    }
  }

  explicit CType(std::shared_ptr<const CTypeNode> n) : node_(std::move(n)) {}
  const CTypeNode& node() const { return *node_; }

  bool is_unit() const;
  bool is_fun() const;
  bool is_prod() const;

 private:
  std::shared_ptr<const CTypeNode> node_;
};

struct CNat {};
struct CBool {};
struct CUnit {};
struct CFun {
  CType dom;
  CType cod;
};
struct CProd {
  CType left;
  CType right;
};
struct CTypeNode {
  std::variant<CNat, CBool, CUnit, CFun, CProd> v;
};

bool operator==(const CType& a, const CType& b);
std::string to_display(const CType& t);

struct CTermNode;
using CPtr = std::shared_ptr<const CTermNode>;

struct CVar {
  std::string name;
};
struct CLam {
  std::string param;
  CType param_type;
  CPtr body;
};
struct CApp {
  CPtr fn;
  CPtr arg;
};
struct CNum {
  std::int64_t value;
};
struct CBoolLit {
  bool value;
};
struct CAdd {
  CPtr lhs;
  CPtr rhs;
};
struct CIsZero {
  CPtr arg;
};
struct CIf {
  CPtr cond;
  CPtr then_branch;
  CPtr else_branch;
};
struct CUnitLit {};
struct CPair {
  CPtr left;
  CPtr right;
};

// Pattern of the non-unit branch: a plain variable (function scrutinee) or
// ((k, t), m) for a meta-continuation layer.
struct CasePattern {
  bool nested = false;
  std::string var;  // when !nested
  std::string k, t, m;  // when nested
};

// case scrut : result of () -> unit_branch | pattern -> other_branch
struct CCase {
  CPtr scrut;
  CType result;
  CPtr unit_branch;
  CasePattern pattern;
  CPtr other_branch;
};

struct CTermNode {
  std::variant<CVar, CLam, CApp, CNum, CBoolLit, CAdd, CIsZero, CIf, CUnitLit, CPair, CCase> v;
};

class CTerm {
 public:
  explicit CTerm(CPtr p) : node_(std::move(p)) {}

  static CTerm var(std::string x);
  static CTerm lam(std::string x, CType t, CTerm body);
  static CTerm app(CTerm f, CTerm a);
  // f a1 a2 ... (left-nested).
  template <class... Ts>
  static CTerm apps(CTerm f, Ts... args) {
    ((f = app(std::move(f), std::move(args))), ...);
    return f;
  }
  static CTerm num(std::int64_t n);
  static CTerm boolean(bool b);
  static CTerm add(CTerm a, CTerm b);
  static CTerm is_zero(CTerm a);
  static CTerm if_(CTerm c, CTerm t, CTerm e);
  static CTerm unit();
  static CTerm pair(CTerm a, CTerm b);
  static CTerm case_(CTerm scrut, CType result, CTerm unit_branch, CasePattern pat, CTerm other);

  const CTermNode& node() const { return *node_; }
  const CPtr& ptr() const { return node_; }
  template <class T>
  const T* get() const {
    return std::get_if<T>(&node_->v);
  }

 private:
  CPtr node_;
};

bool operator==(const CTerm& a, const CTerm& b);
std::size_t size(const CTerm& t);

}  // namespace lambdad::lc
