#pragma once

#include <string>
#include <string_view>

#include "lambdad/term.hpp"
#include "lambdad/types.hpp"

namespace lambdad {

struct SourceProgram {
  std::string text;
  std::string origin = "<stdin>";
};

// Surface syntax:
//   e ::= n | true | false | x | fun x [: τ] -> e | e e | e + e | is0 e
//       | if0 e then e else e | (shift|control|shift0|control0) x [@ {..}] -> e
//       | reset { e } | ( e )
// Binders extend as far right as possible; application binds tighter than +;
// `#` starts a line comment. Throws ParseError.
Term parse_term(const SourceProgram& src);
Term parse_term(std::string_view text);

// Types:  Nat | Bool | (τ -> τ) <μ,σ> τ <μ,σ> τ
// Trails: • | [τ <μ,σ> τ]        Metas: • | (κ * μ) :: σ
// `•` may also be written `.`
Type parse_type(std::string_view text, const std::string& origin = "<input>");
Trail parse_trail(std::string_view text, const std::string& origin = "<input>");
Meta parse_meta(std::string_view text, const std::string& origin = "<input>");

}  // namespace lambdad
