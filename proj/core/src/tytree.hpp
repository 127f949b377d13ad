#pragma once

// Untyped first-order trees over the type constructors of every system the
// library checks (λD and the comparison systems). The solver works on these.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lambdad/types.hpp"

namespace lambdad::solve {

enum class Sort : std::uint8_t { Type, Trail, Meta, Ann };

enum class Con : std::uint8_t {
  Var,
  Nat,
  Bool,
  Fun,     // dom cod μα σα α μβ σβ β          (λD, 4Dfun)
  TNil,    // •μ
  Kont,    // arg μ σ result                   (λD, 4Dfun trails)
  MNil,    // •σ
  MCons,   // kont μ σ                         (λD metas)
  MFun,    // a b : meta continuation a → b   (DF2, 4Dfun)
  DFFun,   // dom cod α β
  DF2Fun,  // dom cod σα α σβ β
  CPFun,   // dom cod μα α μβ β
  CPKont,  // arg μ result
  DPFun,   // dom cod σα α σβ β
  DPKont,  // arg σ result
  DPCons,  // kont σ
  MBFun,   // dom cod ann
  AnnEps,  // ε
  AnnCons, // τ ann τ ann  :  [τ σ] τ σ
};

struct TyNode;
using Ty = std::shared_ptr<const TyNode>;

struct TyNode {
  Con con;
  int var = -1;
  std::vector<Ty> args;
};

int arity(Con c);
Sort sort_of(Con c);
const char* con_name(Con c);

Ty mk(Con c, std::vector<Ty> args = {});
Ty mk_var(int id);

inline Ty nat() { return mk(Con::Nat); }
inline Ty boolean() { return mk(Con::Bool); }
inline Ty tnil() { return mk(Con::TNil); }
inline Ty mnil() { return mk(Con::MNil); }

// Structural equality of ground or non-ground trees (variables by id).
bool same(const Ty& a, const Ty& b);

// λD embedding. The to_* functions require ground trees of the right shape.
Ty from(const Type& t);
Ty from(const Trail& t);
Ty from(const Meta& m);
Ty from(const Kont& k);
Type to_type(const Ty& t);
Trail to_trail(const Ty& t);
Meta to_meta(const Ty& t);
Kont to_kont(const Ty& t);

std::string show(const Ty& t);

}  // namespace lambdad::solve
