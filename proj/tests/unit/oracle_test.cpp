#include <doctest.h>

#include <algorithm>

#include "lambdad/errors.hpp"
#include "lambdad/oracle.hpp"
#include "lambdad/parser.hpp"
#include "lambdad/printer.hpp"
#include "lambdad/testing/acceptance.hpp"

using namespace lambdad;

namespace {
std::string value_of(const char* src) { return print_term(oracle::normalize(parse_term(std::string_view(src))).value); }
}  // namespace

TEST_CASE("goldens") {
  CHECK(value_of(testing::kShiftGolden) == "12");
  CHECK(value_of(testing::kControlGolden) == "10");
  CHECK(value_of("9") == "9");
  CHECK(value_of("reset { reset { (control0 k -> k 1 + 2) + 3 } }") == "6");
  CHECK(value_of("reset { reset { (shift0 k1 -> shift0 k2 -> k2 (k1 0)) + 2 } + 3 }") == "5");
}

TEST_CASE("the control reduction passes through the delimiter-free resumption") {
  auto steps = oracle::trace(parse_term(std::string_view(testing::kControlGolden)));
  Term want = parse_term("reset { 2 + (1 + (control k2 -> 4 + k2 3)) }");
  CHECK(std::find(steps.begin(), steps.end(), want) != steps.end());
}

TEST_CASE("shift0 captures the two innermost contexts") {
  auto steps = oracle::trace(parse_term("reset { reset { (shift0 k1 -> shift0 k2 -> k2 (k1 0)) + 2 } + 3 }"));
  REQUIRE(steps.size() == 9);
  CHECK(steps[1] == parse_term("reset { (shift0 k2 -> k2 ((fun x1 -> reset { x1 + 2 }) 0)) + 3 }"));
  CHECK(steps[2] == parse_term("(fun x1 -> reset { x1 + 3 }) ((fun x1 -> reset { x1 + 2 }) 0)"));
}

TEST_CASE("stuck and out of fuel") {
  try {
    oracle::normalize(parse_term("x"));
    FAIL("expected Stuck");
  } catch (const OracleError& e) {
    CHECK(e.kind() == OracleErrorKind::Stuck);
  }
  try {
    oracle::normalize(parse_term("(fun x -> x x) (fun x -> x x)"), {1000, {}});
    FAIL("expected OutOfFuel");
  } catch (const OracleError& e) {
    CHECK(e.kind() == OracleErrorKind::OutOfFuel);
  }
}

TEST_CASE("substitution avoids capture") {
  // (fun y -> x)[y/x] must not capture
  Term r = oracle::substitute(parse_term("fun y -> x"), "x", Term::var("y"));
  const auto* lam = r.get<Lam>();
  REQUIRE(lam);
  CHECK(lam->param != "y");
  CHECK(child(lam->body) == Term::var("y"));
  // shadowed binder is left alone
  CHECK(oracle::substitute(parse_term("fun x -> x"), "x", Term::num(1)) == parse_term("fun x -> x"));
  CHECK(oracle::substitute(parse_term("shift x -> x"), "x", Term::num(1)) == parse_term("shift x -> x"));
  CHECK(value_of("(fun x -> fun y -> x) (fun z -> z) 1") == "fun z -> z");
}

TEST_CASE("capture never crosses a reset") {
  // the inner reset delimits the shift; the outer + 100 stays
  CHECK(value_of("reset { 100 + reset { 1 + shift k -> 5 } }") == "105");
}
