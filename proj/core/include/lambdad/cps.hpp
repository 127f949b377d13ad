#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lambdad/lambda_c.hpp"
#include "lambdad/typechecker.hpp"

namespace lambdad {

// Type-level translation: base types to themselves, • to unit, continuation
// types to curried functions and meta continuations to nested pairs.
lc::CType cps_type(const Type& t);
lc::CType cps_type(const Trail& t);
lc::CType cps_type(const Meta& m);
lc::CType cps_type(const Kont& k);

// (τ* → μα* → σα* → α*) → μβ* → σβ* → β*
lc::CType cps_judgment_type(const Judgment& j);

// The interpreter read as a translation: a λC term of cps_judgment_type(d.judgment)
// whose free variables are those of the judgment's environment. idk, @ and ::
// are unfolded at their static types; case branches that those types rule
// out are replaced by `()`. Throws CpsError on a derivation that does not
// validate.
lc::CTerm cps_term(const Derivation& d);

// Elaborates (goal Program) and translates.
lc::CTerm cps_term(const Term& e);

// cps_term(d) applied to idk, () and (). Requires a closed derivation with
// empty trails and meta continuations on both sides.
lc::CTerm cps_program(const Derivation& d);

// The λC term of type cps_type(k) that implements idk at k.
lc::CTerm idk_term(const Kont& k);
// The λC term of type μ1* → μ2* → μ3* composing trails under compatible(μ1, μ2, μ3).
lc::CTerm compose_term(const Trail& mu1, const Trail& mu2, const Trail& mu3);

using CEnv = std::vector<std::pair<std::string, lc::CType>>;

// Syntax-directed λC typing. A case is typed through the branch its scrutinee's
// type selects. Throws CpsError.
lc::CType ctype_of(const lc::CTerm& e, const CEnv& env = {});
// True when e has type `expected`; `why` receives the failure otherwise.
bool ctype_check(const lc::CTerm& e, const lc::CType& expected, const CEnv& env = {},
                 std::string* why = nullptr);

}  // namespace lambdad
