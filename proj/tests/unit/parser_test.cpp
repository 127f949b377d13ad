#include <doctest.h>

#include "lambdad/errors.hpp"
#include "lambdad/parser.hpp"
#include "lambdad/printer.hpp"
#include "lambdad/serialize.hpp"
#include "lambdad/testing/generate.hpp"

using namespace lambdad;

TEST_CASE("golden programs parse to the expected trees") {
  Term shift = parse_term("reset { (shift k -> k (k 2)) + 3 } + 4");
  Term k = Term::var("k");
  CHECK(shift == Term::add(Term::reset(Term::add(Term::shift("k", Term::app(k, Term::app(k, Term::num(2)))),
                                                 Term::num(3))),
                           Term::num(4)));

  Term control = parse_term("reset { (control k1 -> 2 + k1 1) + (control k2 -> 4 + k2 3) }");
  Term c1 = Term::control("k1", Term::add(Term::num(2), Term::app(Term::var("k1"), Term::num(1))));
  Term c2 = Term::control("k2", Term::add(Term::num(4), Term::app(Term::var("k2"), Term::num(3))));
  CHECK(control == Term::reset(Term::add(c1, c2)));

  CHECK(parse_term("5") == Term::num(5));
}

TEST_CASE("precedence") {
  CHECK(parse_term("f x + g y") ==
        Term::add(Term::app(Term::var("f"), Term::var("x")), Term::app(Term::var("g"), Term::var("y"))));
  CHECK(parse_term("1 + 2 + 3") == Term::add(Term::add(Term::num(1), Term::num(2)), Term::num(3)));
  CHECK(parse_term("f x y") == Term::app(Term::app(Term::var("f"), Term::var("x")), Term::var("y")));
  // binders extend to the right
  CHECK(parse_term("fun x -> x + 1") == Term::lam("x", Term::add(Term::var("x"), Term::num(1))));
  CHECK(parse_term("reset { 1 } + 2") == Term::add(Term::reset(Term::num(1)), Term::num(2)));
  CHECK(parse_term("is0 f 1") == Term::is_zero(Term::app(Term::var("f"), Term::num(1))));
}

TEST_CASE("comments and whitespace") {
  CHECK(parse_term("# a comment\n  1 # another\n") == Term::num(1));
}

TEST_CASE("types") {
  CHECK(type_equal(parse_type("Nat"), Type::nat()));
  Kont k = make_kont(Type::nat(), Trail::empty(), Meta::empty(), Type::nat());
  CHECK(type_equal(parse_trail("[Nat <•,•> Nat]"), Trail::kont(k)));
  CHECK(type_equal(parse_trail("[Nat <.,.> Nat]"), Trail::kont(k)));
  Meta m = parse_meta("(([Nat <•,•> Nat] * •) :: •)");
  CHECK(type_equal(m, Meta::cons(k, Trail::empty(), Meta::empty())));
  CHECK(type_equal(deserialize_meta(serialize(m)), m));
}

TEST_CASE("a trail where a meta is required is rejected") {
  CHECK_THROWS_AS(parse_meta("[Nat <•,•> Nat]"), ParseError);
}

TEST_CASE("errors carry file, line and column") {
  try {
    parse_term(SourceProgram{"reset {\n  1 +\n}", "prog.ld"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.col() == 1);
    CHECK(std::string(e.what()).rfind("prog.ld:3:1: ", 0) == 0);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_term("shift -> 1"), ParseError);
  CHECK_THROWS_AS(parse_term("fun reset -> 1"), ParseError);
}

TEST_CASE("print then parse is the identity") {
  testing::Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    Term t = testing::random_term(rng, {testing::Fragment::All, 6, i % 3 == 0});
    REQUIRE(parse_term(print_term(t)) == t);
  }
}

TEST_CASE("annotations survive printing") {
  Term t = parse_term("reset { (fun x -> is0 (shift k @ { k : (Nat -> Bool) <•,•> Bool <•,•> Bool } -> x + 1)) 1 }");
  CHECK(parse_term(print_term(t)) == t);
  const auto* r = t.get<Reset>();
  REQUIRE(r);
}
