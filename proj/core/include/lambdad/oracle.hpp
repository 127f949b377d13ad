#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lambdad/term.hpp"

// Small-step reduction on source terms: β, δ, ⟨v⟩ → v and the four capture
// equations
//   ⟨E[shift k -> e]⟩    → ⟨e[λx.⟨E[x]⟩/k]⟩
//   ⟨E[control k -> e]⟩  → ⟨e[λx.E[x]/k]⟩
//   ⟨E[shift0 k -> e]⟩   → e[λx.⟨E[x]⟩/k]
//   ⟨E[control0 k -> e]⟩ → e[λx.E[x]/k]
// where E contains no reset around the hole.
namespace lambdad::oracle {

// One contraction of the leftmost-outermost call-by-value redex; nullopt when
// `e` is already a value. Throws OracleError(Stuck).
std::optional<Term> step(const Term& e);

struct Options {
  std::size_t fuel = 1'000'000;
  std::function<void(const Term&)> on_step;  // called with every term, the input first
};

struct Result {
  Term value;
  std::size_t steps;
};

// Throws OracleError(Stuck | OutOfFuel).
Result normalize(const Term& e, const Options& opts = {});

// The whole reduction sequence, input and final value included.
std::vector<Term> trace(const Term& e, std::size_t fuel = 1'000'000);

// Capture-avoiding e[v/x].
Term substitute(const Term& e, const std::string& x, const Term& v);

}  // namespace lambdad::oracle
