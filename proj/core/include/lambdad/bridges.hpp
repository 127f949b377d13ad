#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lambdad/judgment.hpp"
#include "lambdad/term.hpp"

// Types of the systems λD is compared against, the type-level translations
// between them, and small checkers for each system's fragment.
//
//   DF      shift/reset, judgment τ, α, β
//   DF2     shift/reset, two-level answers with function-typed meta continuations
//   4Dfun   λD rows whose meta continuation is •σ or a function a → b
//   4Dsr    λD restricted to shift/reset with empty trails throughout
//   CP      control/prompt, one-level answers with trails
//   MB      shift0/reset with annotations ε | [τ σ] τ σ
//   D′      λD without trails
//   4D      λD itself
namespace lambdad::bridge {

enum class System : std::uint8_t { DF, DF2, FourDfun, FourDsr, CP, MB, DPrime, FourD };

std::string_view name(System s);
// Accepts the names above, case-insensitively, plus "4d'" / "dprime". Throws std::invalid_argument.
System parse_system(std::string_view text);

enum class Ctor : std::uint8_t {
  Nat,
  Bool,
  Fun,      // dom cod μα σα α μβ σβ β   (4Dfun, 4D)
  TNil,     // •μ
  Kont,     // arg μ σ result            (4Dfun, 4D trails)
  MNil,     // •σ
  MCons,    // kont μ σ                  (4D)
  MFun,     // a b                       (DF2, 4Dfun)
  DFFun,    // dom cod α β
  DF2Fun,   // dom cod σα α σβ β
  CPFun,    // dom cod μα α μβ β
  CPKont,   // arg μ result
  DPFun,    // dom cod σα α σβ β
  DPKont,   // arg σ result
  DPCons,   // kont σ
  MBFun,    // dom cod annotation
  AnnEps,   // ε
  AnnCons,  // τ σ τ σ  :  [τ σ] τ σ
};

// One tree type for every system; which constructors may appear where is
// fixed per system by well_formed().
struct BType {
  Ctor ctor = Ctor::Nat;
  std::vector<BType> args;

  static BType nat() { return {Ctor::Nat, {}}; }
  static BType boolean() { return {Ctor::Bool, {}}; }
  static BType tnil() { return {Ctor::TNil, {}}; }
  static BType mnil() { return {Ctor::MNil, {}}; }
  static BType eps() { return {Ctor::AnnEps, {}}; }
  static BType make(Ctor c, std::vector<BType> args);  // checks arity
};

bool operator==(const BType& a, const BType& b);
int arity(Ctor c);
int depth(const BType& t);

enum class Sort : std::uint8_t { Type, Trail, Meta, Ann };

// Grammar membership of t at sort s in system sys.
bool well_formed(System sys, const BType& t, Sort s = Sort::Type);

// Row layout: DF [α]; DF2, D′ [σ, α]; CP [μ, α]; 4Dfun, 4Dsr, 4D [μ, σ, α]; MB [τ, ann].
const std::vector<Sort>& row_sorts(System sys);

// S-expressions: atoms Nat Bool TNil MNil Eps, lists (Ctor arg ...).
std::string to_string(const BType& t);
BType parse_btype(std::string_view text, const std::string& origin = "<type>");

// Γ ⊢ e : τ ⟨initial⟩ ⟨final⟩, rows laid out by row_sorts().
struct BJudgment {
  std::vector<std::pair<std::string, BType>> env;
  BType tau;
  std::vector<BType> initial, final;
};

bool operator==(const BJudgment& a, const BJudgment& b);
std::string to_string(const BJudgment& j);

// λD embedding (4D and 4Dsr share λD's type grammar).
BType from_lambdad(const Type& t);
Type to_lambdad(const BType& t);  // throws std::invalid_argument outside the grammar
Judgment to_lambdad(const BJudgment& j, const Term& e);
BJudgment from_lambdad(const Judgment& j);

// ---------------------------------------------------------------------------
// Type-level translations. All throw BridgeError(NotInImage | NonEmptyTrail)
// where the target grammar has no counterpart.

// τ1 → τ2, α, β  ↦  τ1 → τ2 ⟨α → γ⟩ γ ⟨β → γ⟩ γ
BType df_to_df2(const BType& t, const BType& gamma);
// Inverse. With `uniform`, every answer position must be one shared γ.
BType df2_to_df(const BType& t, bool uniform = true);

// Adds •μ trails / strips them.
BType df2_to_4dfun(const BType& t);
BType fourdfun_to_df2(const BType& t);

// μ ⟨α⟩ ↦ μ ⟨α → γ⟩ γ, continuation types likewise.
BType cp_to_4dfun(const BType& t, const BType& gamma);

struct CpPreimage {
  BType cp;
  std::optional<BType> gamma;  // none when t has no answer positions
};
// Recognizes the image of cp_to_4dfun: the answer positions must all be one γ.
std::optional<CpPreimage> cp_from_4dfun(const BType& t);

// MB function types need a non-ε body annotation to have a D′ counterpart.
BType mb_to_dprime(const BType& t);
// (τ, ann) ↦ (σ, α): ε ↦ (•, τ); [τ1 σ1] τ2 σ2 ↦ ((τ ⟨σ1'⟩ α1) :: σ2', α2).
std::pair<BType, BType> mb_ann_to_dprime(const BType& tau, const BType& ann);
BType dprime_to_mb(const BType& t);
std::pair<BType, BType> dprime_meta_to_mb(const BType& sigma, const BType& alpha);

BType dprime_to_4d(const BType& t);
BType fourd_to_dprime(const BType& t);

// The same translations lifted to judgments (environments pointwise).
BJudgment df_to_df2(const BJudgment& j, const BType& gamma);
BJudgment df2_to_df(const BJudgment& j, bool uniform = true);
BJudgment df2_to_4dfun(const BJudgment& j);
BJudgment fourdfun_to_df2(const BJudgment& j);
BJudgment cp_to_4dfun(const BJudgment& j, const BType& gamma);
BJudgment mb_to_dprime(const BJudgment& j);
BJudgment dprime_to_mb(const BJudgment& j);
BJudgment dprime_to_4d(const BJudgment& j);
BJudgment fourd_to_dprime(const BJudgment& j);

// Dispatch by system pair. `gamma` is required for DF → DF2 and CP → 4Dfun.
// Types go through the uniform DF2 → DF inverse, judgments through the
// lenient one. 4Dfun → CP is available for types only. Throws
// std::invalid_argument for a pair without a translation.
BType translate(System from, System to, const BType& t, const std::optional<BType>& gamma = std::nullopt);
BJudgment translate(System from, System to, const BJudgment& j, const std::optional<BType>& gamma = std::nullopt);

// ---------------------------------------------------------------------------
// Fragment checkers

struct CheckOptions {
  bool mb_extended = true;   // MB-Abs-Ext / MB-Shift0-Ext in place of MB-Abs / MB-Shift0
  bool no_empty_meta = false;  // 4Dfun: •σ never chosen (keeps results inside DF2's image)
  bool pure_trails = false;    // 4D: every trail •
  std::size_t budget = 200000;
};

// The operators `sys` covers; reset is always allowed.
bool in_fragment(System sys, const Term& e);

// Checks `j` for `e` under the rules of `sys`. Lambda and operator
// annotations are ignored except in 4D. Throws BridgeError(FragmentViolation),
// TypeError(SearchExhausted), std::invalid_argument on an ill-formed judgment.
bool typable_in(System sys, const Term& e, const BJudgment& j, const CheckOptions& opts = {});

struct Inferred {
  BJudgment judgment;
  std::vector<std::string> rules;  // pre-order rule names of the derivation found
};

// Some judgment for `e` under `env`, residual variables defaulted, or nullopt.
std::optional<Inferred> infer_in(System sys, const Term& e,
                                 const std::vector<std::pair<std::string, BType>>& env = {},
                                 const CheckOptions& opts = {});

}  // namespace lambdad::bridge
