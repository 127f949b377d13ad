#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lambdad/term.hpp"
#include "lambdad/types.hpp"

namespace lambdad {

using Env = std::vector<std::pair<std::string, Type>>;

// Γ ⊢ e : τ ⟨μα,σα⟩ α ⟨μβ,σβ⟩ β
struct Judgment {
  Env env;
  Term term;
  Type tau;
  Row initial;
  Row final;
};

// τ ⟨•,•⟩ τ ⟨•,•⟩ τ: the shape of a closed, top-level program.
Judgment top_level(Term term, Type tau);

// Innermost binding wins; returns nullptr when unbound.
const Type* lookup(const Env& env, const std::string& name);
// Extends env, replacing an existing binding of the same name (names stay distinct).
Env extend(const Env& env, const std::string& name, const Type& t);

std::string to_display(const Judgment& j);

}  // namespace lambdad
