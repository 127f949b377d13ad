#pragma once

// Solver encodings of the λD trail relations, shared with the bridge systems
// whose trail discipline coincides with λD's.

#include <string>

#include "solver.hpp"

namespace lambdad::solve {

Relation compatible_rel(Ty mu1, Ty mu2, Ty mu3, std::string origin = "");
Relation id_cont_rel(Ty gamma, Ty mu, Ty sigma, Ty gamma_prime, std::string origin = "");

// Kont with fresh components.
Ty fresh_kont(Solver& s);

}  // namespace lambdad::solve
