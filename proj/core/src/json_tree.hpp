#pragma once

#include <json.hpp>

#include "lambdad/lambda_c.hpp"
#include "lambdad/term.hpp"
#include "lambdad/types.hpp"

namespace lambdad::tree {

nlohmann::json of(const Type& t);
nlohmann::json of(const Trail& t);
nlohmann::json of(const Meta& t);
nlohmann::json of(const Kont& k);
nlohmann::json of(const Row& r);
nlohmann::json of(const Term& t);
nlohmann::json of(const lc::CType& t);
nlohmann::json of(const lc::CTerm& t);

}  // namespace lambdad::tree
