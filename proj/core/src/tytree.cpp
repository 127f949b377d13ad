#include "tytree.hpp"

#include <stdexcept>

namespace lambdad::solve {

int arity(Con c) {
  switch (c) {
    case Con::Var:
    case Con::Nat:
    case Con::Bool:
    case Con::TNil:
    case Con::MNil:
    case Con::AnnEps: return 0;
    case Con::MFun:
    case Con::DPCons: return 2;
    case Con::MCons:
    case Con::CPKont:
    case Con::DPKont:
    case Con::MBFun: return 3;
    case Con::Kont:
    case Con::DFFun:
    case Con::AnnCons: return 4;
    case Con::DF2Fun:
    case Con::CPFun:
    case Con::DPFun: return 6;
    case Con::Fun: return 8;
  }
  return 0;
}

Sort sort_of(Con c) {
  switch (c) {
    case Con::TNil:
    case Con::Kont:
    case Con::CPKont: return Sort::Trail;
    case Con::MNil:
    case Con::MCons:
    case Con::MFun:
    case Con::DPCons: return Sort::Meta;
    case Con::AnnEps:
    case Con::AnnCons: return Sort::Ann;
    default: return Sort::Type;
  }
}

const char* con_name(Con c) {
  switch (c) {
    case Con::Var: return "?";
    case Con::Nat: return "Nat";
    case Con::Bool: return "Bool";
    case Con::Fun: return "Fun";
    case Con::TNil: return "•";
    case Con::Kont: return "Kont";
    case Con::MNil: return "•";
    case Con::MCons: return "MCons";
    case Con::MFun: return "MFun";
    case Con::DFFun: return "DFFun";
    case Con::DF2Fun: return "DF2Fun";
    case Con::CPFun: return "CPFun";
    case Con::CPKont: return "CPKont";
    case Con::DPFun: return "DPFun";
    case Con::DPKont: return "DPKont";
    case Con::DPCons: return "DPCons";
    case Con::MBFun: return "MBFun";
    case Con::AnnEps: return "ε";
    case Con::AnnCons: return "AnnCons";
  }
  return "?";
}

Ty mk(Con c, std::vector<Ty> args) {
  if (args.empty()) {
    switch (c) {
      case Con::Nat: {
        static const Ty t = std::make_shared<const TyNode>(TyNode{Con::Nat, -1, {}});
        return t;
      }
      case Con::Bool: {
        static const Ty t = std::make_shared<const TyNode>(TyNode{Con::Bool, -1, {}});
        return t;
      }
      case Con::TNil: {
        static const Ty t = std::make_shared<const TyNode>(TyNode{Con::TNil, -1, {}});
        return t;
      }
      case Con::MNil: {
        static const Ty t = std::make_shared<const TyNode>(TyNode{Con::MNil, -1, {}});
        return t;
      }
      case Con::AnnEps: {
        static const Ty t = std::make_shared<const TyNode>(TyNode{Con::AnnEps, -1, {}});
        return t;
      }
      default: break;
    }
  }
  return std::make_shared<const TyNode>(TyNode{c, -1, std::move(args)});
}

Ty mk_var(int id) { return std::make_shared<const TyNode>(TyNode{Con::Var, id, {}}); }

bool same(const Ty& a, const Ty& b) {
  if (a == b) return true;
  if (a->con != b->con) return false;
  if (a->con == Con::Var) return a->var == b->var;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!same(a->args[i], b->args[i])) return false;
  }
  return true;
}

Ty from(const Type& t) {
  if (t.is_nat()) return nat();
  if (t.is_bool()) return boolean();
  const FunType& f = t.as_fun();
  return mk(Con::Fun, {from(f.dom), from(f.cod), from(f.initial.trail), from(f.initial.meta),
                       from(f.initial.answer), from(f.final.trail), from(f.final.meta),
                       from(f.final.answer)});
}

Ty from(const Kont& k) {
  return mk(Con::Kont, {from(k.arg), from(k.trail), from(k.meta), from(k.result)});
}

Ty from(const Trail& t) { return t.is_empty() ? tnil() : from(t.as_kont()); }

Ty from(const Meta& m) {
  if (m.is_empty()) return mnil();
  const ConsMeta& c = m.as_cons();
  return mk(Con::MCons, {from(c.kont), from(c.trail), from(c.rest)});
}

namespace {
[[noreturn]] void bad(const char* what, const Ty& t) {
  throw std::logic_error(std::string("tree is not a ground ") + what + ": " + show(t));
}
}  // namespace

Type to_type(const Ty& t) {
  switch (t->con) {
    case Con::Nat: return Type::nat();
    case Con::Bool: return Type::boolean();
    case Con::Fun: {
      const auto& a = t->args;
      return Type::fun(to_type(a[0]), to_type(a[1]), to_trail(a[2]), to_meta(a[3]), to_type(a[4]),
                       to_trail(a[5]), to_meta(a[6]), to_type(a[7]));
    }
    default: bad("value type", t);
  }
}

Kont to_kont(const Ty& t) {
  if (t->con != Con::Kont) bad("continuation type", t);
  const auto& a = t->args;
  return make_kont(to_type(a[0]), to_trail(a[1]), to_meta(a[2]), to_type(a[3]));
}

Trail to_trail(const Ty& t) {
  if (t->con == Con::TNil) return Trail::empty();
  return Trail::kont(to_kont(t));
}

Meta to_meta(const Ty& t) {
  if (t->con == Con::MNil) return Meta::empty();
  if (t->con != Con::MCons) bad("meta-continuation type", t);
  return Meta::cons(to_kont(t->args[0]), to_trail(t->args[1]), to_meta(t->args[2]));
}

std::string show(const Ty& t) {
  if (t->con == Con::Var) return "?" + std::to_string(t->var);
  if (t->args.empty()) return con_name(t->con);
  std::string s = std::string("(") + con_name(t->con);
  for (const Ty& a : t->args) s += " " + show(a);
  return s + ")";
}

}  // namespace lambdad::solve
