#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "lambdad/judgment.hpp"

namespace lambdad {

struct CompatibleC {
  Trail mu1, mu2, mu3;
};
struct IdContTypeC {
  Type gamma;
  Trail mu;
  Meta sigma;
  Type gamma_prime;
};
using Constraint = std::variant<CompatibleC, IdContTypeC>;

std::string to_display(const Constraint& c);

struct Discharged {
  Constraint constraint;
  std::string clause;  // C1/C2/C4 or I1/I2/I3
};

// One node per term node. Rules: TVar TNum TBool TLam TApp TAdd TIs0 TIf0
// TShift TControl TShift0 TControl0 TPrompt0 (reset).
struct Derivation {
  std::string rule;
  Judgment judgment;
  std::vector<Discharged> constraints;
  std::vector<Derivation> premises;
};

bool operator==(const Derivation& a, const Derivation& b);

enum class Goal {
  Exact,     // the judgment given to check()
  Program,   // τ ⟨•,•⟩ τ ⟨•,•⟩ τ
  TopLevel,  // τ ⟨•,•⟩ τ ⟨•,•⟩ β  (run by idk with empty trail and meta)
  Any,
};

struct ElaborateOptions {
  Goal goal = Goal::Program;
  bool pure_trails = false;    // every trail type fixed to •
  bool strict = false;         // AmbiguousType instead of defaulting residual variables
  std::size_t budget = 200000; // alternative trials before SearchExhausted
};

struct Elaboration {
  Derivation derivation;
  Term term;                           // with every lambda and operator annotated
  std::vector<std::string> defaulted;  // residual variables, with the default chosen
};

// Infers the missing types of `e` under `env`, honouring any annotations already
// present. Throws TypeError.
Elaboration elaborate(const Term& e, const Env& env = {}, const ElaborateOptions& opts = {});

// Checks the complete judgment. The returned derivation has been re-validated
// rule by rule. Throws TypeError.
Derivation check(const Judgment& j, std::size_t budget = 200000);

// Rule-by-rule verification of a concrete derivation, independent of the
// solver. Throws TypeError(RuleMismatch / ConstraintUnsatisfied).
void validate(const Derivation& d);

struct Inference {
  Judgment judgment;
  Term term;
  std::vector<std::string> defaulted;
};

// Inference for λ/app/num/bool/+/is0/if0/shift/reset with all trails •,
// top-level shape τ ⟨•,•⟩ τ ⟨•,•⟩ β. Throws TypeError.
Inference infer_pure_shift(const Term& e, bool strict = false);

std::string print_derivation(const Derivation& d);
std::string to_json_tree(const Derivation& d, int indent = 2);

// The first node (pre-order) whose rule is `rule`, or nullptr.
const Derivation* find_rule(const Derivation& d, const std::string& rule);

}  // namespace lambdad
