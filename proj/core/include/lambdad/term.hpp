#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "lambdad/types.hpp"

namespace lambdad {

enum class ControlOp : std::uint8_t { Shift, Control, Shift0, Control0 };

std::string_view keyword(ControlOp op);

// Operators whose captured continuation keeps its delimiter (shift, shift0).
inline bool captures_delimited(ControlOp op) {
  return op == ControlOp::Shift || op == ControlOp::Shift0;
}
// Operators that run their body in the meta continuation's context (shift0, control0).
inline bool pops_meta(ControlOp op) {
  return op == ControlOp::Shift0 || op == ControlOp::Control0;
}

// Type parameters a control-operator occurrence carries once elaborated.
//   k_type     : the type bound to the continuation variable
//   body_cont  : continuation the body runs with (idk for shift/control,
//                the popped κ0 for shift0/control0)
//   body_trail : trail the body runs with (always • for shift/control)
//   mid_trail  : type of κ'::t' before it is appended (control/control0)
struct OpAnnotation {
  std::optional<Type> k_type;
  std::optional<Kont> body_cont;
  std::optional<Trail> body_trail;
  std::optional<Trail> mid_trail;

  bool empty() const { return !k_type && !body_cont && !body_trail && !mid_trail; }
};

bool operator==(const OpAnnotation& a, const OpAnnotation& b);

class Term;
struct TermNode;

struct Num {
  std::int64_t value;
};
struct BoolLit {
  bool value;
};
struct Var {
  std::string name;
};
struct Lam {
  std::string param;
  std::optional<Type> annotation;  // the lambda's full function type
  std::shared_ptr<const TermNode> body;
};
struct App {
  std::shared_ptr<const TermNode> fn;
  std::shared_ptr<const TermNode> arg;
};
struct Add {
  std::shared_ptr<const TermNode> lhs;
  std::shared_ptr<const TermNode> rhs;
};
struct IsZero {
  std::shared_ptr<const TermNode> arg;
};
struct If {
  std::shared_ptr<const TermNode> cond;
  std::shared_ptr<const TermNode> then_branch;
  std::shared_ptr<const TermNode> else_branch;
};
struct Capture {
  ControlOp op;
  std::string binder;
  OpAnnotation annotation;
  std::shared_ptr<const TermNode> body;
};
struct Reset {
  std::shared_ptr<const TermNode> body;
};

struct TermNode {
  std::variant<Num, BoolLit, Var, Lam, App, Add, IsZero, If, Capture, Reset> v;
};

// An immutable λD term. Cheap to copy; subterms are shared.
class Term {
 public:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}

  static Term num(std::int64_t n);
  static Term boolean(bool b);
  static Term var(std::string name);
  static Term lam(std::string param, Term body, std::optional<Type> annotation = std::nullopt);
  static Term app(Term fn, Term arg);
  static Term add(Term lhs, Term rhs);
  static Term is_zero(Term arg);
  static Term if_(Term cond, Term then_branch, Term else_branch);
  static Term capture(ControlOp op, std::string binder, Term body, OpAnnotation ann = {});
  static Term shift(std::string k, Term body) { return capture(ControlOp::Shift, std::move(k), std::move(body)); }
  static Term control(std::string k, Term body) { return capture(ControlOp::Control, std::move(k), std::move(body)); }
  static Term shift0(std::string k, Term body) { return capture(ControlOp::Shift0, std::move(k), std::move(body)); }
  static Term control0(std::string k, Term body) { return capture(ControlOp::Control0, std::move(k), std::move(body)); }
  static Term reset(Term body);

  const TermNode& node() const { return *node_; }
  const std::shared_ptr<const TermNode>& ptr() const { return node_; }

  template <class T>
  const T* get() const {
    return std::get_if<T>(&node_->v);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node_->v);
  }

  bool is_value() const;

 private:
  std::shared_ptr<const TermNode> node_;
};

inline Term child(const std::shared_ptr<const TermNode>& p) { return Term(p); }

// Structural equality, annotations included. No alpha-equivalence.
bool operator==(const Term& a, const Term& b);

std::set<std::string> free_vars(const Term& t);
bool is_closed(const Term& t);

// Edges on the longest root-to-leaf path.
int depth(const Term& t);
std::size_t size(const Term& t);

// Drops every annotation.
Term erase_annotations(const Term& t);

bool uses_op(const Term& t, ControlOp op);

// ASCII identifier [A-Za-z_][A-Za-z0-9_']* that is not a reserved word.
bool is_identifier(std::string_view s);

}  // namespace lambdad
