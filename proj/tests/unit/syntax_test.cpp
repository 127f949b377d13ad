#include <doctest.h>

#include "lambdad/errors.hpp"
#include "lambdad/parser.hpp"
#include "lambdad/printer.hpp"
#include "lambdad/serialize.hpp"
#include "lambdad/testing/generate.hpp"

using namespace lambdad;

namespace {
Kont nat_kont() { return make_kont(Type::nat(), Trail::empty(), Meta::empty(), Type::nat()); }
}  // namespace

TEST_CASE("type_equal is structural") {
  CHECK(type_equal(Type::nat(), Type::nat()));
  CHECK_FALSE(type_equal(Trail::empty(), Trail::kont(nat_kont())));
  CHECK(type_equal(Trail::kont(nat_kont()), Trail::kont(nat_kont())));
  CHECK_FALSE(type_equal(Type::nat(), Type::boolean()));
}

TEST_CASE("type_equal is an equivalence on generated triples") {
  testing::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    Type a = testing::random_type(rng, 2), b = testing::random_type(rng, 2), c = testing::random_type(rng, 2);
    CHECK(type_equal(a, a));
    CHECK(type_equal(a, b) == type_equal(b, a));
    if (type_equal(a, b) && type_equal(b, c)) CHECK(type_equal(a, c));
    // a copy rebuilt from text is equal but not shared
    CHECK(type_equal(a, deserialize_type(serialize(a))));
  }
}

TEST_CASE("serialize examples") {
  CHECK(serialize(Term::num(3)) == "3");
  CHECK(deserialize_term("3") == Term::num(3));
  Term t = Term::reset(Term::add(Term::shift("k", Term::app(Term::var("k"), Term::num(2))), Term::num(3)));
  CHECK(deserialize_term(serialize(t)) == t);
}

TEST_CASE("malformed canonical text reports a position") {
  try {
    deserialize_term("(reset", "in");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.origin() == "in");
    CHECK(e.line() == 1);
    CHECK(e.col() >= 1);
  }
}

TEST_CASE("serialize round trip on generated terms") {
  testing::Rng rng(5);
  for (auto f : {testing::Fragment::All, testing::Fragment::ShiftReset, testing::Fragment::Shift0Reset}) {
    for (int i = 0; i < 4000; ++i) {
      Term t = testing::random_term(rng, {f, 6, i % 5 == 0});
      REQUIRE(deserialize_term(serialize(t)) == t);
    }
  }
}

TEST_CASE("serialize round trip on generated types") {
  testing::Rng rng(6);
  for (int i = 0; i < 10000; ++i) {
    Type t = testing::random_type(rng, i % 4);
    REQUIRE(type_equal(deserialize_type(serialize(t)), t));
    Trail mu = testing::random_trail(rng, i % 4);
    REQUIRE(type_equal(deserialize_trail(serialize(mu)), mu));
    Meta sigma = testing::random_meta(rng, i % 4);
    REQUIRE(type_equal(deserialize_meta(serialize(sigma)), sigma));
  }
}

TEST_CASE("depth counts edges") {
  CHECK(depth(Term::num(1)) == 0);
  CHECK(depth(parse_term("reset { 1 + 2 }")) == 2);
  CHECK(depth(Type::nat()) == 0);
  CHECK(depth(Trail::kont(nat_kont())) == 1);
}
