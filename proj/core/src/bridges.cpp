#include "lambdad/bridges.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "lambdad/errors.hpp"
#include "lambdad/sexpr.hpp"

namespace lambdad::bridge {

namespace {

struct CtorInfo {
  Ctor c;
  const char* name;
  int arity;
};

constexpr CtorInfo kCtors[] = {
    {Ctor::Nat, "Nat", 0},      {Ctor::Bool, "Bool", 0},     {Ctor::Fun, "Fun", 8},
    {Ctor::TNil, "TNil", 0},    {Ctor::Kont, "Kont", 4},     {Ctor::MNil, "MNil", 0},
    {Ctor::MCons, "MCons", 3},  {Ctor::MFun, "MFun", 2},     {Ctor::DFFun, "DFFun", 4},
    {Ctor::DF2Fun, "DF2Fun", 6}, {Ctor::CPFun, "CPFun", 6},  {Ctor::CPKont, "CPKont", 3},
    {Ctor::DPFun, "DPFun", 6},  {Ctor::DPKont, "DPKont", 3}, {Ctor::DPCons, "DPCons", 2},
    {Ctor::MBFun, "MBFun", 3},  {Ctor::AnnEps, "Eps", 0},    {Ctor::AnnCons, "Ann", 4},
};

const CtorInfo& info(Ctor c) { return kCtors[static_cast<std::size_t>(c)]; }

[[noreturn]] void not_in_image(const std::string& what, const BType& t) {
  throw BridgeError(BridgeErrorKind::NotInImage, what + ": " + to_string(t));
}

[[noreturn]] void non_empty_trail(const BType& t) {
  throw BridgeError(BridgeErrorKind::NonEmptyTrail, "trail " + to_string(t) + " is not •");
}

BType mk(Ctor c, std::vector<BType> args) { return BType::make(c, std::move(args)); }

}  // namespace

std::string_view name(System s) {
  switch (s) {
    case System::DF: return "DF";
    case System::DF2: return "DF2";
    case System::FourDfun: return "4Dfun";
    case System::FourDsr: return "4Dsr";
    case System::CP: return "CP";
    case System::MB: return "MB";
    case System::DPrime: return "4D'";
    case System::FourD: return "4D";
  }
  return "?";
}

System parse_system(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "df") return System::DF;
  if (t == "df2" || t == "df-2") return System::DF2;
  if (t == "4dfun") return System::FourDfun;
  if (t == "4dsr") return System::FourDsr;
  if (t == "cp") return System::CP;
  if (t == "mb") return System::MB;
  if (t == "4d'" || t == "dprime" || t == "d'") return System::DPrime;
  if (t == "4d" || t == "lambdad") return System::FourD;
  throw std::invalid_argument("unknown system '" + std::string(text) + "'");
}

BType BType::make(Ctor c, std::vector<BType> args) {
  if (static_cast<int>(args.size()) != info(c).arity) {
    throw std::invalid_argument(std::string(info(c).name) + " takes " + std::to_string(info(c).arity) +
                                " arguments, got " + std::to_string(args.size()));
  }
  return BType{c, std::move(args)};
}

bool operator==(const BType& a, const BType& b) { return a.ctor == b.ctor && a.args == b.args; }

int arity(Ctor c) { return info(c).arity; }

int depth(const BType& t) {
  int d = 0;
  for (const BType& a : t.args) d = std::max(d, depth(a));
  return t.args.empty() ? 0 : d + 1;
}

// ---------------------------------------------------------------------------
// Grammars

namespace {

using S = Sort;

// Argument sorts of each constructor per system; an empty optional means the
// constructor is not part of that system.
std::optional<std::pair<Sort, std::vector<Sort>>> signature(System sys, Ctor c) {
  const bool lambda_d = sys == System::FourD || sys == System::FourDsr;
  switch (c) {
    case Ctor::Nat:
    case Ctor::Bool: return std::pair{S::Type, std::vector<Sort>{}};
    case Ctor::DFFun:
      if (sys == System::DF) return std::pair{S::Type, std::vector{S::Type, S::Type, S::Type, S::Type}};
      break;
    case Ctor::DF2Fun:
      if (sys == System::DF2) {
        return std::pair{S::Type, std::vector{S::Type, S::Type, S::Meta, S::Type, S::Meta, S::Type}};
      }
      break;
    case Ctor::MFun:
      if (sys == System::DF2 || sys == System::FourDfun) return std::pair{S::Meta, std::vector{S::Type, S::Type}};
      break;
    case Ctor::Fun:
      if (lambda_d || sys == System::FourDfun) {
        return std::pair{S::Type, std::vector{S::Type, S::Type, S::Trail, S::Meta, S::Type, S::Trail, S::Meta,
                                              S::Type}};
      }
      break;
    case Ctor::TNil:
      if (lambda_d || sys == System::FourDfun || sys == System::CP) return std::pair{S::Trail, std::vector<Sort>{}};
      break;
    case Ctor::Kont:
      if (lambda_d || sys == System::FourDfun) {
        return std::pair{S::Trail, std::vector{S::Type, S::Trail, S::Meta, S::Type}};
      }
      break;
    case Ctor::MNil:
      if (lambda_d || sys == System::FourDfun || sys == System::DPrime) {
        return std::pair{S::Meta, std::vector<Sort>{}};
      }
      break;
    case Ctor::MCons:
      // the continuation slot is a Kont, which the Trail sort covers
      if (lambda_d) return std::pair{S::Meta, std::vector{S::Trail, S::Trail, S::Meta}};
      break;
    case Ctor::CPFun:
      if (sys == System::CP) {
        return std::pair{S::Type, std::vector{S::Type, S::Type, S::Trail, S::Type, S::Trail, S::Type}};
      }
      break;
    case Ctor::CPKont:
      if (sys == System::CP) return std::pair{S::Trail, std::vector{S::Type, S::Trail, S::Type}};
      break;
    case Ctor::DPFun:
      if (sys == System::DPrime) {
        return std::pair{S::Type, std::vector{S::Type, S::Type, S::Meta, S::Type, S::Meta, S::Type}};
      }
      break;
    case Ctor::DPKont:
      // only ever the head of a DPCons; given its own sort slot via Trail
      if (sys == System::DPrime) return std::pair{S::Trail, std::vector{S::Type, S::Meta, S::Type}};
      break;
    case Ctor::DPCons:
      if (sys == System::DPrime) return std::pair{S::Meta, std::vector{S::Trail, S::Meta}};
      break;
    case Ctor::MBFun:
      if (sys == System::MB) return std::pair{S::Type, std::vector{S::Type, S::Type, S::Ann}};
      break;
    case Ctor::AnnEps:
      if (sys == System::MB) return std::pair{S::Ann, std::vector<Sort>{}};
      break;
    case Ctor::AnnCons:
      if (sys == System::MB) return std::pair{S::Ann, std::vector{S::Type, S::Ann, S::Type, S::Ann}};
      break;
  }
  return std::nullopt;
}

}  // namespace

bool well_formed(System sys, const BType& t, Sort s) {
  auto sig = signature(sys, t.ctor);
  if (!sig || sig->first != s || sig->second.size() != t.args.size()) return false;
  // MCons and DPCons heads must be continuation types, not •μ
  if ((t.ctor == Ctor::MCons && t.args[0].ctor != Ctor::Kont) ||
      (t.ctor == Ctor::DPCons && t.args[0].ctor != Ctor::DPKont)) {
    return false;
  }
  // D′ has no trails: DPKont is the only constructor of its slot
  if (t.ctor == Ctor::DPKont && s != Sort::Trail) return false;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (!well_formed(sys, t.args[i], sig->second[i])) return false;
  }
  return true;
}

const std::vector<Sort>& row_sorts(System sys) {
  static const std::vector<Sort> one{S::Type};
  static const std::vector<Sort> meta_ans{S::Meta, S::Type};
  static const std::vector<Sort> trail_ans{S::Trail, S::Type};
  static const std::vector<Sort> full{S::Trail, S::Meta, S::Type};
  static const std::vector<Sort> mb{S::Type, S::Ann};
  switch (sys) {
    case System::DF: return one;
    case System::DF2:
    case System::DPrime: return meta_ans;
    case System::CP: return trail_ans;
    case System::MB: return mb;
    case System::FourDfun:
    case System::FourDsr:
    case System::FourD: return full;
  }
  return full;
}

// ---------------------------------------------------------------------------
// Text

std::string to_string(const BType& t) {
  if (t.args.empty()) return info(t.ctor).name;
  std::string out = "(";
  out += info(t.ctor).name;
  for (const BType& a : t.args) out += " " + to_string(a);
  return out + ")";
}

namespace {

BType from_sexpr(const SExpr& s, const std::string& origin) {
  auto find = [&](const std::string& n) -> const CtorInfo* {
    for (const CtorInfo& c : kCtors) {
      if (n == c.name) return &c;
    }
    return nullptr;
  };
  if (s.is_atom) {
    const CtorInfo* c = find(s.atom);
    if (!c || c->arity != 0) throw ParseError(origin, s.line, s.col, "unknown type atom '" + s.atom + "'");
    return BType{c->c, {}};
  }
  if (s.items.empty() || !s.items[0].is_atom) throw ParseError(origin, s.line, s.col, "expected (Ctor args...)");
  const CtorInfo* c = find(s.items[0].atom);
  if (!c) throw ParseError(origin, s.line, s.col, "unknown constructor '" + s.items[0].atom + "'");
  if (static_cast<int>(s.items.size()) - 1 != c->arity) {
    throw ParseError(origin, s.line, s.col,
                     std::string(c->name) + " takes " + std::to_string(c->arity) + " arguments");
  }
  std::vector<BType> args;
  for (std::size_t i = 1; i < s.items.size(); ++i) args.push_back(from_sexpr(s.items[i], origin));
  return BType{c->c, std::move(args)};
}

}  // namespace

BType parse_btype(std::string_view text, const std::string& origin) {
  return from_sexpr(read_sexpr(text, origin), origin);
}

bool operator==(const BJudgment& a, const BJudgment& b) {
  return a.env == b.env && a.tau == b.tau && a.initial == b.initial && a.final == b.final;
}

std::string to_string(const BJudgment& j) {
  std::string out;
  for (std::size_t i = 0; i < j.env.size(); ++i) {
    out += (i ? ", " : "") + j.env[i].first + " : " + to_string(j.env[i].second);
  }
  out += " ⊢ " + to_string(j.tau) + " <";
  for (std::size_t i = 0; i < j.initial.size(); ++i) out += (i ? " " : "") + to_string(j.initial[i]);
  out += "> <";
  for (std::size_t i = 0; i < j.final.size(); ++i) out += (i ? " " : "") + to_string(j.final[i]);
  return out + ">";
}

// ---------------------------------------------------------------------------
// λD embedding

namespace {

BType from_ld(const Trail& t);
BType from_ld(const Meta& m);

BType from_ld(const Kont& k) {
  return mk(Ctor::Kont, {from_lambdad(k.arg), from_ld(k.trail), from_ld(k.meta), from_lambdad(k.result)});
}

BType from_ld(const Trail& t) { return t.is_empty() ? BType::tnil() : from_ld(t.as_kont()); }

BType from_ld(const Meta& m) {
  if (m.is_empty()) return BType::mnil();
  const ConsMeta& c = m.as_cons();
  return mk(Ctor::MCons, {from_ld(c.kont), from_ld(c.trail), from_ld(c.rest)});
}

[[noreturn]] void not_lambdad(const BType& t) {
  throw std::invalid_argument("not a λD type: " + to_string(t));
}

Trail to_ld_trail(const BType& t);
Meta to_ld_meta(const BType& t);

Kont to_ld_kont(const BType& t) {
  if (t.ctor != Ctor::Kont) not_lambdad(t);
  return make_kont(to_lambdad(t.args[0]), to_ld_trail(t.args[1]), to_ld_meta(t.args[2]), to_lambdad(t.args[3]));
}

Trail to_ld_trail(const BType& t) { return t.ctor == Ctor::TNil ? Trail::empty() : Trail::kont(to_ld_kont(t)); }

Meta to_ld_meta(const BType& t) {
  if (t.ctor == Ctor::MNil) return Meta::empty();
  if (t.ctor != Ctor::MCons) not_lambdad(t);
  return Meta::cons(to_ld_kont(t.args[0]), to_ld_trail(t.args[1]), to_ld_meta(t.args[2]));
}

Row to_ld_row(const std::vector<BType>& r) {
  if (r.size() != 3) throw std::invalid_argument("λD rows have three components");
  return Row{to_ld_trail(r[0]), to_ld_meta(r[1]), to_lambdad(r[2])};
}

std::vector<BType> from_ld_row(const Row& r) { return {from_ld(r.trail), from_ld(r.meta), from_lambdad(r.answer)}; }

}  // namespace

BType from_lambdad(const Type& t) {
  if (t.is_nat()) return BType::nat();
  if (t.is_bool()) return BType::boolean();
  const FunType& f = t.as_fun();
  return mk(Ctor::Fun, {from_lambdad(f.dom), from_lambdad(f.cod), from_ld(f.initial.trail), from_ld(f.initial.meta),
                        from_lambdad(f.initial.answer), from_ld(f.final.trail), from_ld(f.final.meta),
                        from_lambdad(f.final.answer)});
}

Type to_lambdad(const BType& t) {
  switch (t.ctor) {
    case Ctor::Nat: return Type::nat();
    case Ctor::Bool: return Type::boolean();
    case Ctor::Fun: {
      const auto& a = t.args;
      return Type::fun(to_lambdad(a[0]), to_lambdad(a[1]), to_ld_trail(a[2]), to_ld_meta(a[3]), to_lambdad(a[4]),
                       to_ld_trail(a[5]), to_ld_meta(a[6]), to_lambdad(a[7]));
    }
    default: not_lambdad(t);
  }
}

Judgment to_lambdad(const BJudgment& j, const Term& e) {
  Judgment out{{}, e, to_lambdad(j.tau), to_ld_row(j.initial), to_ld_row(j.final)};
  for (const auto& [x, t] : j.env) out.env.emplace_back(x, to_lambdad(t));
  return out;
}

BJudgment from_lambdad(const Judgment& j) {
  BJudgment out{{}, from_lambdad(j.tau), from_ld_row(j.initial), from_ld_row(j.final)};
  for (const auto& [x, t] : j.env) out.env.emplace_back(x, from_lambdad(t));
  return out;
}

// ---------------------------------------------------------------------------
// DF ↔ DF2

BType df_to_df2(const BType& t, const BType& gamma) {
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool: return t;
    case Ctor::DFFun: {
      const auto& a = t.args;
      return mk(Ctor::DF2Fun, {df_to_df2(a[0], gamma), df_to_df2(a[1], gamma),
                               mk(Ctor::MFun, {df_to_df2(a[2], gamma), gamma}), gamma,
                               mk(Ctor::MFun, {df_to_df2(a[3], gamma), gamma}), gamma});
    }
    default: throw std::invalid_argument("not a DF type: " + to_string(t));
  }
}

namespace {

BType strip_df2(const BType& t) {
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool: return t;
    case Ctor::DF2Fun: {
      const auto& a = t.args;
      if (a[2].ctor != Ctor::MFun || a[4].ctor != Ctor::MFun) not_in_image("DF2 meta rows must be functions", t);
      return mk(Ctor::DFFun, {strip_df2(a[0]), strip_df2(a[1]), strip_df2(a[2].args[0]), strip_df2(a[4].args[0])});
    }
    default: not_in_image("not a DF2 type", t);
  }
}

// The γ of the first answer position, pre-order.
const BType* first_df2_gamma(const BType& t) {
  if (t.ctor != Ctor::DF2Fun) return nullptr;
  if (const BType* g = first_df2_gamma(t.args[0])) return g;
  if (const BType* g = first_df2_gamma(t.args[1])) return g;
  return &t.args[3];
}

}  // namespace

BType df2_to_df(const BType& t, bool uniform) {
  BType out = strip_df2(t);
  if (uniform) {
    if (const BType* g = first_df2_gamma(t); g && !(df_to_df2(out, *g) == t)) {
      not_in_image("answer positions do not share one γ", t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// DF2 ↔ 4Dfun

BType df2_to_4dfun(const BType& t) {
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool: return t;
    case Ctor::MFun: return mk(Ctor::MFun, {df2_to_4dfun(t.args[0]), df2_to_4dfun(t.args[1])});
    case Ctor::DF2Fun: {
      const auto& a = t.args;
      return mk(Ctor::Fun, {df2_to_4dfun(a[0]), df2_to_4dfun(a[1]), BType::tnil(), df2_to_4dfun(a[2]),
                            df2_to_4dfun(a[3]), BType::tnil(), df2_to_4dfun(a[4]), df2_to_4dfun(a[5])});
    }
    default: throw std::invalid_argument("not a DF2 type: " + to_string(t));
  }
}

BType fourdfun_to_df2(const BType& t) {
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool: return t;
    case Ctor::MFun: return mk(Ctor::MFun, {fourdfun_to_df2(t.args[0]), fourdfun_to_df2(t.args[1])});
    case Ctor::MNil: not_in_image("•σ has no DF2 counterpart", t);
    case Ctor::TNil:
    case Ctor::Kont: non_empty_trail(t);
    case Ctor::Fun: {
      const auto& a = t.args;
      if (a[2].ctor != Ctor::TNil) non_empty_trail(a[2]);
      if (a[5].ctor != Ctor::TNil) non_empty_trail(a[5]);
      return mk(Ctor::DF2Fun, {fourdfun_to_df2(a[0]), fourdfun_to_df2(a[1]), fourdfun_to_df2(a[3]),
                               fourdfun_to_df2(a[4]), fourdfun_to_df2(a[6]), fourdfun_to_df2(a[7])});
    }
    default: throw std::invalid_argument("not a 4Dfun type: " + to_string(t));
  }
}

// ---------------------------------------------------------------------------
// CP → 4Dfun

BType cp_to_4dfun(const BType& t, const BType& gamma) {
  auto meta = [&](const BType& ans) { return mk(Ctor::MFun, {cp_to_4dfun(ans, gamma), gamma}); };
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool:
    case Ctor::TNil: return t;
    case Ctor::CPKont:
      return mk(Ctor::Kont, {cp_to_4dfun(t.args[0], gamma), cp_to_4dfun(t.args[1], gamma), meta(t.args[2]), gamma});
    case Ctor::CPFun: {
      const auto& a = t.args;
      return mk(Ctor::Fun, {cp_to_4dfun(a[0], gamma), cp_to_4dfun(a[1], gamma), cp_to_4dfun(a[2], gamma),
                            meta(a[3]), gamma, cp_to_4dfun(a[4], gamma), meta(a[5]), gamma});
    }
    default: throw std::invalid_argument("not a CP type: " + to_string(t));
  }
}

namespace {

// The γ at the first answer position: a 4Dfun Fun's α slot or a Kont's result.
const BType* first_fun_gamma(const BType& t) {
  switch (t.ctor) {
    case Ctor::Fun:
      for (int i : {0, 1, 2}) {
        if (const BType* g = first_fun_gamma(t.args[i])) return g;
      }
      return &t.args[4];
    case Ctor::Kont:
      for (int i : {0, 1}) {
        if (const BType* g = first_fun_gamma(t.args[i])) return g;
      }
      return &t.args[3];
    default: return nullptr;
  }
}

std::optional<BType> strip_cp(const BType& t) {
  auto ans = [](const BType& m) -> std::optional<BType> {
    if (m.ctor != Ctor::MFun) return std::nullopt;
    return strip_cp(m.args[0]);
  };
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool:
    case Ctor::TNil: return t;
    case Ctor::Kont: {
      auto x = strip_cp(t.args[0]);
      auto mu = strip_cp(t.args[1]);
      auto r = ans(t.args[2]);
      if (!x || !mu || !r) return std::nullopt;
      return mk(Ctor::CPKont, {*x, *mu, *r});
    }
    case Ctor::Fun: {
      const auto& a = t.args;
      auto d = strip_cp(a[0]);
      auto c = strip_cp(a[1]);
      auto ma = strip_cp(a[2]);
      auto al = ans(a[3]);
      auto mb = strip_cp(a[5]);
      auto be = ans(a[6]);
      if (!d || !c || !ma || !al || !mb || !be) return std::nullopt;
      return mk(Ctor::CPFun, {*d, *c, *ma, *al, *mb, *be});
    }
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<CpPreimage> cp_from_4dfun(const BType& t) {
  auto cp = strip_cp(t);
  if (!cp) return std::nullopt;
  const BType* g = first_fun_gamma(t);
  if (!g) return CpPreimage{*cp, std::nullopt};
  // every answer position must be this γ: translate back and compare
  if (!(cp_to_4dfun(*cp, *g) == t)) return std::nullopt;
  return CpPreimage{*cp, *g};
}

// ---------------------------------------------------------------------------
// MB ↔ D′

std::pair<BType, BType> mb_ann_to_dprime(const BType& tau, const BType& ann) {
  BType t = mb_to_dprime(tau);
  if (ann.ctor == Ctor::AnnEps) return {BType::mnil(), t};
  if (ann.ctor != Ctor::AnnCons) throw std::invalid_argument("not an MB annotation: " + to_string(ann));
  auto [s1, a1] = mb_ann_to_dprime(ann.args[0], ann.args[1]);
  auto [s2, a2] = mb_ann_to_dprime(ann.args[2], ann.args[3]);
  return {mk(Ctor::DPCons, {mk(Ctor::DPKont, {t, s1, a1}), s2}), a2};
}

BType mb_to_dprime(const BType& t) {
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool: return t;
    case Ctor::MBFun: {
      const BType& ann = t.args[2];
      if (ann.ctor != Ctor::AnnCons) not_in_image("ε-annotated function body has no D′ counterpart", t);
      auto [sa, a] = mb_ann_to_dprime(ann.args[0], ann.args[1]);
      auto [sb, b] = mb_ann_to_dprime(ann.args[2], ann.args[3]);
      return mk(Ctor::DPFun, {mb_to_dprime(t.args[0]), mb_to_dprime(t.args[1]), sa, a, sb, b});
    }
    default: throw std::invalid_argument("not an MB type: " + to_string(t));
  }
}

std::pair<BType, BType> dprime_meta_to_mb(const BType& sigma, const BType& alpha) {
  if (sigma.ctor == Ctor::MNil) return {dprime_to_mb(alpha), BType::eps()};
  if (sigma.ctor != Ctor::DPCons || sigma.args[0].ctor != Ctor::DPKont) {
    throw std::invalid_argument("not a D′ meta continuation type: " + to_string(sigma));
  }
  const BType& k = sigma.args[0];
  auto [t1, n1] = dprime_meta_to_mb(k.args[1], k.args[2]);
  auto [t2, n2] = dprime_meta_to_mb(sigma.args[1], alpha);
  return {dprime_to_mb(k.args[0]), mk(Ctor::AnnCons, {t1, n1, t2, n2})};
}

BType dprime_to_mb(const BType& t) {
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool: return t;
    case Ctor::DPFun: {
      const auto& a = t.args;
      auto [ta, na] = dprime_meta_to_mb(a[2], a[3]);
      auto [tb, nb] = dprime_meta_to_mb(a[4], a[5]);
      return mk(Ctor::MBFun, {dprime_to_mb(a[0]), dprime_to_mb(a[1]), mk(Ctor::AnnCons, {ta, na, tb, nb})});
    }
    default: throw std::invalid_argument("not a D′ type: " + to_string(t));
  }
}

// ---------------------------------------------------------------------------
// D′ ↔ 4D

BType dprime_to_4d(const BType& t) {
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool:
    case Ctor::MNil: return t;
    case Ctor::DPKont:
      return mk(Ctor::Kont, {dprime_to_4d(t.args[0]), BType::tnil(), dprime_to_4d(t.args[1]), dprime_to_4d(t.args[2])});
    case Ctor::DPCons: return mk(Ctor::MCons, {dprime_to_4d(t.args[0]), BType::tnil(), dprime_to_4d(t.args[1])});
    case Ctor::DPFun: {
      const auto& a = t.args;
      return mk(Ctor::Fun, {dprime_to_4d(a[0]), dprime_to_4d(a[1]), BType::tnil(), dprime_to_4d(a[2]),
                            dprime_to_4d(a[3]), BType::tnil(), dprime_to_4d(a[4]), dprime_to_4d(a[5])});
    }
    default: throw std::invalid_argument("not a D′ type: " + to_string(t));
  }
}

BType fourd_to_dprime(const BType& t) {
  auto no_trail = [](const BType& mu) {
    if (mu.ctor != Ctor::TNil) non_empty_trail(mu);
  };
  switch (t.ctor) {
    case Ctor::Nat:
    case Ctor::Bool:
    case Ctor::MNil: return t;
    case Ctor::TNil: non_empty_trail(t);
    case Ctor::Kont:
      no_trail(t.args[1]);
      return mk(Ctor::DPKont, {fourd_to_dprime(t.args[0]), fourd_to_dprime(t.args[2]), fourd_to_dprime(t.args[3])});
    case Ctor::MCons:
      no_trail(t.args[1]);
      return mk(Ctor::DPCons, {fourd_to_dprime(t.args[0]), fourd_to_dprime(t.args[2])});
    case Ctor::Fun: {
      const auto& a = t.args;
      no_trail(a[2]);
      no_trail(a[5]);
      return mk(Ctor::DPFun, {fourd_to_dprime(a[0]), fourd_to_dprime(a[1]), fourd_to_dprime(a[3]),
                              fourd_to_dprime(a[4]), fourd_to_dprime(a[6]), fourd_to_dprime(a[7])});
    }
    default: throw std::invalid_argument("not a 4D type: " + to_string(t));
  }
}

// ---------------------------------------------------------------------------
// Judgments

namespace {

template <typename F>
std::vector<std::pair<std::string, BType>> map_env(const BJudgment& j, F f) {
  std::vector<std::pair<std::string, BType>> out;
  for (const auto& [x, t] : j.env) out.emplace_back(x, f(t));
  return out;
}

void need_width(const BJudgment& j, std::size_t n) {
  if (j.initial.size() != n || j.final.size() != n) {
    throw std::invalid_argument("judgment rows need " + std::to_string(n) + " components");
  }
}

}  // namespace

BJudgment df_to_df2(const BJudgment& j, const BType& gamma) {
  need_width(j, 1);
  auto f = [&](const BType& t) { return df_to_df2(t, gamma); };
  auto row = [&](const std::vector<BType>& r) { return std::vector{mk(Ctor::MFun, {f(r[0]), gamma}), gamma}; };
  return {map_env(j, f), f(j.tau), row(j.initial), row(j.final)};
}

BJudgment df2_to_df(const BJudgment& j, bool uniform) {
  need_width(j, 2);
  auto f = [&](const BType& t) { return df2_to_df(t, uniform); };
  auto row = [&](const std::vector<BType>& r) {
    if (r[0].ctor != Ctor::MFun) not_in_image("DF2 meta rows must be functions", r[0]);
    if (uniform && !(r[0].args[1] == r[1])) not_in_image("answer row does not use one γ", r[0]);
    return std::vector{f(r[0].args[0])};
  };
  BJudgment out{map_env(j, f), f(j.tau), row(j.initial), row(j.final)};
  if (uniform && !(j.initial[1] == j.final[1])) not_in_image("answer rows do not share one γ", j.final[1]);
  return out;
}

BJudgment df2_to_4dfun(const BJudgment& j) {
  need_width(j, 2);
  auto row = [&](const std::vector<BType>& r) {
    return std::vector{BType::tnil(), df2_to_4dfun(r[0]), df2_to_4dfun(r[1])};
  };
  return {map_env(j, [](const BType& t) { return df2_to_4dfun(t); }), df2_to_4dfun(j.tau), row(j.initial),
          row(j.final)};
}

BJudgment fourdfun_to_df2(const BJudgment& j) {
  need_width(j, 3);
  auto row = [&](const std::vector<BType>& r) {
    if (r[0].ctor != Ctor::TNil) non_empty_trail(r[0]);
    return std::vector{fourdfun_to_df2(r[1]), fourdfun_to_df2(r[2])};
  };
  return {map_env(j, [](const BType& t) { return fourdfun_to_df2(t); }), fourdfun_to_df2(j.tau), row(j.initial),
          row(j.final)};
}

BJudgment cp_to_4dfun(const BJudgment& j, const BType& gamma) {
  need_width(j, 2);
  auto f = [&](const BType& t) { return cp_to_4dfun(t, gamma); };
  auto row = [&](const std::vector<BType>& r) { return std::vector{f(r[0]), mk(Ctor::MFun, {f(r[1]), gamma}), gamma}; };
  return {map_env(j, f), f(j.tau), row(j.initial), row(j.final)};
}

BJudgment mb_to_dprime(const BJudgment& j) {
  need_width(j, 2);
  auto row = [&](const std::vector<BType>& r) {
    auto [s, a] = mb_ann_to_dprime(r[0], r[1]);
    return std::vector{s, a};
  };
  return {map_env(j, [](const BType& t) { return mb_to_dprime(t); }), mb_to_dprime(j.tau), row(j.initial),
          row(j.final)};
}

BJudgment dprime_to_mb(const BJudgment& j) {
  need_width(j, 2);
  auto row = [&](const std::vector<BType>& r) {
    auto [t, n] = dprime_meta_to_mb(r[0], r[1]);
    return std::vector{t, n};
  };
  return {map_env(j, [](const BType& t) { return dprime_to_mb(t); }), dprime_to_mb(j.tau), row(j.initial),
          row(j.final)};
}

BJudgment dprime_to_4d(const BJudgment& j) {
  need_width(j, 2);
  auto row = [&](const std::vector<BType>& r) {
    return std::vector{BType::tnil(), dprime_to_4d(r[0]), dprime_to_4d(r[1])};
  };
  return {map_env(j, [](const BType& t) { return dprime_to_4d(t); }), dprime_to_4d(j.tau), row(j.initial),
          row(j.final)};
}

BJudgment fourd_to_dprime(const BJudgment& j) {
  need_width(j, 3);
  auto row = [&](const std::vector<BType>& r) {
    if (r[0].ctor != Ctor::TNil) non_empty_trail(r[0]);
    return std::vector{fourd_to_dprime(r[1]), fourd_to_dprime(r[2])};
  };
  return {map_env(j, [](const BType& t) { return fourd_to_dprime(t); }), fourd_to_dprime(j.tau), row(j.initial),
          row(j.final)};
}

namespace {

const BType& need_gamma(const std::optional<BType>& gamma, System from, System to) {
  if (!gamma) {
    throw std::invalid_argument(std::string(name(from)) + " to " + std::string(name(to)) + " needs an answer type");
  }
  return *gamma;
}

[[noreturn]] void no_translation(System from, System to) {
  throw std::invalid_argument("no translation from " + std::string(name(from)) + " to " + std::string(name(to)));
}

}  // namespace

BType translate(System from, System to, const BType& t, const std::optional<BType>& gamma) {
  using S = System;
  if (from == S::DF && to == S::DF2) return df_to_df2(t, need_gamma(gamma, from, to));
  if (from == S::DF2 && to == S::DF) return df2_to_df(t, true);
  if (from == S::DF2 && to == S::FourDfun) return df2_to_4dfun(t);
  if (from == S::FourDfun && to == S::DF2) return fourdfun_to_df2(t);
  if (from == S::CP && to == S::FourDfun) return cp_to_4dfun(t, need_gamma(gamma, from, to));
  if (from == S::FourDfun && to == S::CP) {
    auto pre = cp_from_4dfun(t);
    if (!pre) throw BridgeError(BridgeErrorKind::NotInImage, "not an image of a CP type: " + to_string(t));
    return pre->cp;
  }
  if (from == S::MB && to == S::DPrime) return mb_to_dprime(t);
  if (from == S::DPrime && to == S::MB) return dprime_to_mb(t);
  if (from == S::DPrime && to == S::FourD) return dprime_to_4d(t);
  if (from == S::FourD && to == S::DPrime) return fourd_to_dprime(t);
  no_translation(from, to);
}

BJudgment translate(System from, System to, const BJudgment& j, const std::optional<BType>& gamma) {
  using S = System;
  if (from == S::DF && to == S::DF2) return df_to_df2(j, need_gamma(gamma, from, to));
  if (from == S::DF2 && to == S::DF) return df2_to_df(j, false);
  if (from == S::DF2 && to == S::FourDfun) return df2_to_4dfun(j);
  if (from == S::FourDfun && to == S::DF2) return fourdfun_to_df2(j);
  if (from == S::CP && to == S::FourDfun) return cp_to_4dfun(j, need_gamma(gamma, from, to));
  if (from == S::MB && to == S::DPrime) return mb_to_dprime(j);
  if (from == S::DPrime && to == S::MB) return dprime_to_mb(j);
  if (from == S::DPrime && to == S::FourD) return dprime_to_4d(j);
  if (from == S::FourD && to == S::DPrime) return fourd_to_dprime(j);
  no_translation(from, to);
}

}  // namespace lambdad::bridge
