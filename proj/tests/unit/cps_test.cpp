#include <doctest.h>

#include "lambdad/cps.hpp"
#include "lambdad/errors.hpp"
#include "lambdad/machine.hpp"
#include "lambdad/parser.hpp"
#include "lambdad/printer.hpp"
#include "lambdad/testing/acceptance.hpp"
#include "lambdad/testing/reference.hpp"
#include "lambdad/typechecker.hpp"

using namespace lambdad;
using lc::CTerm;
using lc::CType;

namespace {
const CType N = CType::nat(), U = CType::unit();
CType nat_kont() { return CType::arrows(N, U, U, N); }
}  // namespace

TEST_CASE("type translation") {
  CHECK(cps_type(Type::nat()) == N);
  CHECK(cps_type(Trail::empty()) == U);
  Kont k = make_kont(Type::nat(), Trail::empty(), Meta::empty(), Type::nat());
  CHECK(cps_type(Meta::cons(k, Trail::empty(), Meta::empty())) == CType::prod(CType::prod(nat_kont(), U), U));
  Type f = make_fun(Type::nat(), Type::boolean(), Row::pure(Type::nat()), Row::pure(Type::boolean()));
  CHECK(cps_type(f) == CType::arrows(N, CType::arrows(CType::boolean(), U, U, N), U, U, CType::boolean()));
}

TEST_CASE("ctype_check basics") {
  CHECK(ctype_check(CTerm::unit(), U));
  CHECK(ctype_check(CTerm::pair(CTerm::num(3), CTerm::unit()), CType::prod(N, U)));
  CTerm three = CTerm::lam(
      "k", nat_kont(),
      CTerm::lam("t", U, CTerm::lam("m", U, CTerm::apps(CTerm::var("k"), CTerm::num(3), CTerm::var("t"), CTerm::var("m")))));
  CHECK(ctype_check(three, CType::arrows(nat_kont(), U, U, N)));
  std::string why;
  CHECK_FALSE(ctype_check(CTerm::num(1), U, {}, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("CPS images typecheck and evaluate") {
  for (const char* src : {testing::kShiftGolden, testing::kControlGolden, "reset { (shift k -> k 2) + 1 }",
                          "reset { reset { (shift0 k1 -> shift0 k2 -> k2 (k1 0)) + 2 } + 3 }",
                          "reset { reset { (control0 k -> k 1 + 2) + 3 } }", testing::kAtmProgram}) {
    CAPTURE(src);
    Elaboration el = elaborate(parse_term(std::string_view(src)));
    std::string why;
    CHECK_MESSAGE(ctype_check(cps_term(el.derivation), cps_judgment_type(el.derivation.judgment), {}, &why), why);
    CHECK(testing::lc_eval(cps_program(el.derivation)) == machine::show(machine::run(el.term).value));
  }
  CHECK(cps_judgment_type(elaborate(parse_term("reset { (shift k -> k 2) + 1 }")).derivation.judgment) ==
        CType::arrows(nat_kont(), U, U, N));
}

TEST_CASE("the control golden evaluates to 10 through λC") {
  Elaboration el = elaborate(parse_term(std::string_view(testing::kControlGolden)));
  CHECK(testing::lc_eval(cps_program(el.derivation)) == "10");
}

TEST_CASE("idk and compose terms have their types") {
  Kont k = make_kont(Type::nat(), Trail::empty(), Meta::empty(), Type::nat());
  CHECK(ctype_check(idk_term(k), cps_type(k)));
  Trail t = Trail::kont(k);
  CHECK(ctype_check(compose_term(Trail::empty(), t, t), CType::arrows(U, cps_type(t), cps_type(t))));
  CHECK(ctype_check(compose_term(t, Trail::empty(), t), CType::arrows(cps_type(t), U, cps_type(t))));
}

TEST_CASE("CPS on an unchecked derivation is rejected") {
  Elaboration el = elaborate(parse_term("reset { (shift k -> k 2) + 1 }"));
  Derivation d = el.derivation;
  d.judgment.tau = Type::boolean();
  CHECK_THROWS_AS(cps_term(d), CpsError);
}
