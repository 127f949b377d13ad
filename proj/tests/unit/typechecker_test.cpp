#include <doctest.h>

#include <json.hpp>

#include "lambdad/errors.hpp"
#include "lambdad/parser.hpp"
#include "lambdad/printer.hpp"
#include "lambdad/relations.hpp"
#include "lambdad/testing/acceptance.hpp"
#include "lambdad/testing/enumerate.hpp"
#include "lambdad/typechecker.hpp"

using namespace lambdad;

namespace {

Kont kont(Type a, Type b) { return make_kont(std::move(a), Trail::empty(), Meta::empty(), std::move(b)); }
const Trail E = Trail::empty();

TypeErrorKind kind_of(const char* src) {
  try {
    elaborate(parse_term(std::string_view(src)));
  } catch (const TypeError& e) {
    return e.kind();
  }
  FAIL("expected a type error for " << src);
  return TypeErrorKind::RuleMismatch;
}

}  // namespace

TEST_CASE("compatible") {
  Trail k = Trail::kont(kont(Type::nat(), Type::nat()));
  CHECK(compatible(E, k, k));
  CHECK(compatible_case(E, k, k) == "C1");
  CHECK(compatible(k, E, k));
  CHECK(compatible_case(k, E, k) == "C2");
  CHECK_FALSE(compatible(k, k, E));
  // C4: mu1 = [Nat <k,•> Nat], mu2 = k, mu3 = [Nat <•,•> Nat]
  Trail mu1 = Trail::kont(make_kont(Type::nat(), k, Meta::empty(), Type::nat()));
  CHECK(compatible(mu1, k, k));
  CHECK(compatible_case(mu1, k, k) == "C4");
  CHECK_FALSE(compatible(mu1, E, E));
}

TEST_CASE("id-cont-type") {
  CHECK(id_cont_type(Type::nat(), E, Meta::empty(), Type::nat()));
  CHECK_FALSE(id_cont_type(Type::nat(), E, Meta::empty(), Type::boolean()));
  Meta m = Meta::cons(kont(Type::nat(), Type::boolean()), E, Meta::empty());
  CHECK(id_cont_type(Type::nat(), E, m, Type::boolean()));
  CHECK(id_cont_case(Type::nat(), E, m, Type::boolean()) == "I2");
  Trail t = Trail::kont(kont(Type::nat(), Type::boolean()));
  CHECK(id_cont_case(Type::nat(), t, Meta::empty(), Type::boolean()) == "I3");
}

TEST_CASE("I1 exactness") {
  testing::Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    Type a = testing::random_type(rng, 2), b = testing::random_type(rng, 2);
    if (id_cont_type(a, E, Meta::empty(), b)) CHECK(type_equal(a, b));
  }
}

TEST_CASE("relations agree with exhaustive enumeration") {
  testing::Universe u = testing::small_universe();
  CHECK(u.trails.size() == 21);
  CHECK(u.metas.size() == 21);
  testing::EnumerationReport r = testing::enumerate_relations(u);
  CHECK(r.compatible_tuples == 9261);
  CHECK(r.id_cont_tuples == 1764);
  CHECK(r.disagreements.empty());
}

TEST_CASE("golden programs check at the program judgment") {
  Term t = parse_term(std::string_view(testing::kShiftGolden));
  Derivation d = check(top_level(elaborate(t).term, Type::nat()));
  CHECK(d.rule == "TAdd");
  CHECK(find_rule(d, "TShift") != nullptr);
  CHECK_NOTHROW(validate(d));
  CHECK_NOTHROW(check(top_level(elaborate(parse_term(std::string_view(testing::kControlGolden))).term, Type::nat())));
}

TEST_CASE("answer type modification inside a reset") {
  Elaboration el = elaborate(parse_term("reset { is0 (shift k -> 42) }"));
  const Derivation* s = find_rule(el.derivation, "TShift");
  REQUIRE(s);
  CHECK(s->judgment.tau.is_nat());
  const Derivation* body = &el.derivation.premises.at(0);
  CHECK(body->judgment.tau.is_bool());
  CHECK(body->judgment.final.answer.is_nat());
}

TEST_CASE("the annotated program shows Bool then Nat at the shift node") {
  Elaboration el = elaborate(parse_term(std::string_view(testing::kAtmProgram)));
  const Derivation* s = find_rule(el.derivation, "TShift");
  REQUIRE(s);
  auto j = nlohmann::json::parse(to_json_tree(*s));
  CHECK(j["rule"] == "TShift");
  CHECK(j["judgment"]["initial"]["answer"]["con"] == "bool");
  CHECK(j["judgment"]["final"]["answer"]["con"] == "nat");
}

TEST_CASE("type errors") {
  CHECK(kind_of("is0 true") == TypeErrorKind::RuleMismatch);
  CHECK(kind_of("x") == TypeErrorKind::UnboundVariable);
  CHECK(kind_of("1 2") != TypeErrorKind::UnboundVariable);
  CHECK_THROWS_AS(check(top_level(parse_term("1"), Type::boolean())), TypeError);
}

TEST_CASE("check is deterministic") {
  testing::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    Term t = testing::random_term(rng, {testing::Fragment::All, 5, false});
    try {
      Elaboration a = elaborate(t), b = elaborate(t);
      CHECK(a.derivation == b.derivation);
      CHECK(print_derivation(a.derivation) == print_derivation(b.derivation));
    } catch (const TypeError&) {
    }
  }
}

TEST_CASE("discharged constraints re-validate") {
  auto corpus = testing::typed_corpus(9, 100, testing::Fragment::All);
  std::size_t seen = 0;
  std::function<void(const Derivation&)> walk = [&](const Derivation& d) {
    for (const auto& c : d.constraints) {
      ++seen;
      if (const auto* cc = std::get_if<CompatibleC>(&c.constraint)) {
        CHECK(compatible_case(cc->mu1, cc->mu2, cc->mu3) == c.clause);
      } else {
        const auto& ic = std::get<IdContTypeC>(c.constraint);
        CHECK(id_cont_case(ic.gamma, ic.mu, ic.sigma, ic.gamma_prime) == c.clause);
      }
    }
    for (const auto& p : d.premises) walk(p);
  };
  for (const auto& c : corpus) {
    walk(c.derivation);
    CHECK_NOTHROW(validate(c.derivation));
  }
  CHECK(seen > 0);
}

TEST_CASE("a validated derivation fails validation once a type is changed") {
  Elaboration el = elaborate(parse_term("reset { (shift k -> k 2) + 1 }"));
  Derivation d = el.derivation;
  d.judgment.tau = Type::boolean();
  CHECK_THROWS_AS(validate(d), TypeError);
}

TEST_CASE("infer_pure_shift") {
  Inference a = infer_pure_shift(parse_term("fun x -> x + 1"));
  REQUIRE(a.judgment.tau.is_fun());
  const FunType& f = a.judgment.tau.as_fun();
  CHECK(f.dom.is_nat());
  CHECK(f.cod.is_nat());
  CHECK(f.initial == f.final);

  Inference b = infer_pure_shift(parse_term("reset { (shift k -> k 2) + 1 }"));
  CHECK(b.judgment.tau.is_nat());
  CHECK(b.judgment.initial == b.judgment.final);
  CHECK_NOTHROW(check(top_level(b.term, Type::nat())));

  CHECK_THROWS_AS(infer_pure_shift(parse_term("shift k -> k")), TypeError);
  CHECK_THROWS_AS(infer_pure_shift(parse_term("reset { control k -> 1 }")), TypeError);
}
