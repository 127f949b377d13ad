#pragma once

#include <string>

#include "lambdad/lambda_c.hpp"
#include "lambdad/term.hpp"

namespace lambdad {

// Surface syntax; parse_term(print_term(e)) == e.
// With `display` set, reset is written ⟨e⟩ and the output is for humans only.
std::string print_term(const Term& t, bool display = false);

std::string print_annotation(const OpAnnotation& a);

// Readable single-line λC.
std::string print_cterm(const lc::CTerm& t);

}  // namespace lambdad
