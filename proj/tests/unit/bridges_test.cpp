#include <doctest.h>

#include "lambdad/bridges.hpp"
#include "lambdad/errors.hpp"
#include "lambdad/parser.hpp"
#include "lambdad/testing/acceptance.hpp"
#include "lambdad/testing/generate.hpp"

using namespace lambdad;
using namespace lambdad::bridge;

namespace {

BType T(const char* s) { return parse_btype(s); }
const BType Nat = BType::nat(), Bool = BType::boolean();

BridgeErrorKind bridge_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const BridgeError& e) {
    return e.kind();
  }
  FAIL("expected a bridge error");
  return BridgeErrorKind::NotInImage;
}

BJudgment judgment(BType tau, std::vector<BType> a, std::vector<BType> b) { return {{}, tau, a, b}; }

}  // namespace

TEST_CASE("systems and type syntax") {
  CHECK(parse_system("4dfun") == System::FourDfun);
  CHECK(parse_system("D'") == System::DPrime);
  CHECK(parse_system("dprime") == System::DPrime);
  CHECK_THROWS_AS(parse_system("nope"), std::invalid_argument);
  BType f = T("(DFFun Nat Bool Nat Nat)");
  CHECK(parse_btype(to_string(f)) == f);
  CHECK(well_formed(System::DF, f));
  CHECK_FALSE(well_formed(System::DF2, f));
  CHECK_THROWS(parse_btype("(DFFun Nat)"));
}

TEST_CASE("DF and DF2") {
  CHECK(df_to_df2(Nat, Nat) == Nat);
  CHECK(df_to_df2(T("(DFFun Nat Bool Nat Nat)"), Bool) ==
        T("(DF2Fun Nat Bool (MFun Nat Bool) Bool (MFun Nat Bool) Bool)"));
  testing::Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    BType t = testing::random_btype(rng, System::DF, i % 4);
    BType g = testing::random_btype(rng, System::DF2, i % 3);
    CHECK(df2_to_df(df_to_df2(t, g)) == t);
  }
  CHECK(bridge_error([] { df2_to_df(T("(DF2Fun Nat Nat (MFun Nat Bool) Bool (MFun Nat Nat) Nat)")); }) ==
        BridgeErrorKind::NotInImage);
}

TEST_CASE("DF2 and 4Dfun") {
  CHECK(df2_to_4dfun(Nat) == Nat);
  CHECK(fourdfun_to_df2(Nat) == Nat);
  testing::Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    BType t = testing::random_btype(rng, System::DF2, i % 4);
    CHECK(fourdfun_to_df2(df2_to_4dfun(t)) == t);
  }
  BType with_trail = T("(Fun Nat Nat (Kont Nat TNil MNil Nat) (MFun Nat Nat) Nat TNil (MFun Nat Nat) Nat)");
  CHECK(bridge_error([&] { fourdfun_to_df2(with_trail); }) == BridgeErrorKind::NonEmptyTrail);
}

TEST_CASE("CP to 4Dfun") {
  CHECK(cp_to_4dfun(Nat, Nat) == Nat);
  CHECK(cp_to_4dfun(T("(CPKont Nat TNil Nat)"), Bool) == T("(Kont Nat TNil (MFun Nat Bool) Bool)"));
  testing::Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    BType t = testing::random_btype(rng, System::CP, i % 4);
    BType g = testing::random_btype(rng, System::FourDfun, i % 2);
    auto back = cp_from_4dfun(cp_to_4dfun(t, g));
    REQUIRE(back);
    CHECK(back->cp == t);
    // the recognizer rejects a 4Dfun type whose answers disagree
    BType mixed = T("(Fun Nat Nat TNil (MFun Nat Nat) Nat TNil (MFun Nat Bool) Bool)");
    CHECK_FALSE(cp_from_4dfun(mixed));
  }
}

TEST_CASE("MB and D'") {
  auto [s, a] = mb_ann_to_dprime(Nat, BType::eps());
  CHECK(s == BType::mnil());
  CHECK(a == Nat);
  CHECK(dprime_meta_to_mb(BType::mnil(), Nat) == std::pair{Nat, BType::eps()});
  testing::Rng rng(4);
  for (int i = 0; i < 3000; ++i) {
    BType m = testing::random_mb_ext(rng, i % 4);
    CHECK(dprime_to_mb(mb_to_dprime(m)) == m);
    BType d = testing::random_btype(rng, System::DPrime, i % 4);
    CHECK(mb_to_dprime(dprime_to_mb(d)) == d);
  }
  CHECK(bridge_error([] { mb_to_dprime(T("(MBFun Nat Nat Eps)")); }) == BridgeErrorKind::NotInImage);
}

TEST_CASE("D' and 4D") {
  testing::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    BType d = testing::random_btype(rng, System::DPrime, i % 4);
    CHECK(fourd_to_dprime(dprime_to_4d(d)) == d);
    BType f = testing::random_btype(rng, System::FourD, i % 3);
    CHECK(from_lambdad(to_lambdad(f)) == f);
  }
  BType trail = T("(Fun Nat Nat (Kont Nat TNil MNil Nat) MNil Nat TNil MNil Nat)");
  CHECK(bridge_error([&] { fourd_to_dprime(trail); }) == BridgeErrorKind::NonEmptyTrail);
}

TEST_CASE("translate dispatches and rejects unknown pairs") {
  CHECK(translate(System::DF, System::DF2, T("(DFFun Nat Nat Nat Nat)"), Nat) ==
        df_to_df2(T("(DFFun Nat Nat Nat Nat)"), Nat));
  CHECK_THROWS_AS(translate(System::DF, System::DF2, Nat), std::invalid_argument);
  CHECK_THROWS_AS(translate(System::DF, System::MB, Nat), std::invalid_argument);
  CHECK(translate(System::FourDfun, System::CP, T("(Kont Nat TNil (MFun Nat Bool) Bool)")) == T("(CPKont Nat TNil Nat)"));
}

TEST_CASE("typable_in") {
  Term e = parse_term("reset { (shift k -> k 2) + 1 }");
  CHECK(typable_in(System::DF, e, judgment(Nat, {Nat}, {Nat})));
  CHECK_FALSE(typable_in(System::DF, e, judgment(Bool, {Nat}, {Nat})));
  BJudgment j2 = df_to_df2(judgment(Nat, {Nat}, {Nat}), Nat);
  CHECK(typable_in(System::DF2, e, j2));
  try {
    typable_in(System::DF, parse_term("reset { shift0 k -> 1 }"), judgment(Nat, {Nat}, {Nat}));
    FAIL("expected FragmentViolation");
  } catch (const BridgeError& err) {
    CHECK(err.kind() == BridgeErrorKind::FragmentViolation);
  }
  CHECK_THROWS_AS(typable_in(System::DF, e, judgment(Nat, {Nat, Nat}, {Nat})), std::invalid_argument);
}

TEST_CASE("DF changes the answer type") {
  Term e = parse_term("reset { is0 (shift k -> 42) }");
  auto r = infer_in(System::DF, e);
  REQUIRE(r);
  Term body = parse_term("is0 (shift k -> 42)");
  auto shift = infer_in(System::DF, body);
  REQUIRE(shift);
  CHECK(shift->judgment.tau == Bool);
  CHECK(shift->judgment.final[0] == Nat);
  // the surrounding context is unknown, so its answer type is free
  CHECK(typable_in(System::DF, body, judgment(Bool, {Bool}, {Nat})));
  CHECK(typable_in(System::DF, body, judgment(Bool, {Nat}, {Nat})));
  CHECK_FALSE(typable_in(System::DF, body, judgment(Bool, {Bool}, {Bool})));
}

TEST_CASE("MB names the extended rules") {
  auto r = infer_in(System::MB, parse_term("reset { (shift0 k -> k 1) + 2 }"));
  REQUIRE(r);
  bool ext = false;
  for (const auto& name : r->rules) ext = ext || name == "MB-Shift0-Ext";
  CHECK(ext);
}

TEST_CASE("4D existential typability follows λD elaboration") {
  CHECK(infer_in(System::FourD, parse_term(std::string_view(testing::kControlGolden))));
  CHECK_FALSE(infer_in(System::FourD, parse_term("is0 true")));
}

TEST_CASE("transport directions hold on small corpora") {
  auto ts = testing::run_transports({3, 40});
  for (const auto& t : ts) {
    CAPTURE(t.name);
    CHECK(t.checked > 0);
    bool known = t.name == "4Dfun vs 4D" || t.name == "4Dfun vs 4Dsr" || t.name == "MB original vs extended";
    if (!known) CHECK(t.counterexamples.empty());
  }
}
