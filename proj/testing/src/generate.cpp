#include "lambdad/testing/generate.hpp"

#include <string>
#include <utility>

namespace lambdad::testing {

using bridge::BType;
using bridge::Ctor;
using bridge::Sort;
using bridge::System;

std::vector<ControlOp> ops_of(Fragment f) {
  switch (f) {
    case Fragment::All: return {ControlOp::Shift, ControlOp::Control, ControlOp::Shift0, ControlOp::Control0};
    case Fragment::ShiftReset: return {ControlOp::Shift};
    case Fragment::ControlPrompt: return {ControlOp::Control};
    case Fragment::Shift0Reset: return {ControlOp::Shift0};
  }
  return {};
}

namespace {

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

class TermGen {
 public:
  TermGen(Rng& rng, const TermGenOptions& o) : rng_(rng), o_(o), ops_(ops_of(o.fragment)) {}

  Term top() {
    if (o_.max_depth >= 1 && chance(rng_, 0.75)) return Term::reset(nat(o_.max_depth - 1));
    return nat(o_.max_depth);
  }

 private:
  struct Bound {
    std::string name;
    bool cont;
  };

  Rng& rng_;
  const TermGenOptions& o_;
  std::vector<ControlOp> ops_;
  std::vector<Bound> scope_;
  int counter_ = 0;

  std::string fresh(const char* base) { return base + std::to_string(++counter_); }

  std::vector<std::string> vars(bool cont) const {
    std::vector<std::string> out;
    for (const Bound& b : scope_) {
      if (b.cont == cont) out.push_back(b.name);
    }
    return out;
  }

  Term leaf() {
    auto xs = vars(false);
    if (o_.sloppy && chance(rng_, 0.05)) return Term::boolean(chance(rng_, 0.5));
    if (!xs.empty() && chance(rng_, 0.5)) return Term::var(xs[static_cast<std::size_t>(pick(rng_, static_cast<int>(xs.size())))]);
    return Term::num(pick(rng_, 10));
  }

  template <typename F>
  Term with(Bound b, F body) {
    scope_.push_back(std::move(b));
    Term t = body();
    scope_.pop_back();
    return t;
  }

  // A term meant to have type Nat, of depth at most d.
  Term nat(int d) {
    if (d <= 0) return leaf();
    auto ks = vars(true);
    enum Choice { Leaf, Add, Reset, Capture, Resume, Beta, Cond, Sloppy };
    std::vector<std::pair<Choice, int>> w{{Leaf, 1}, {Add, 3}, {Reset, 2}};
    if (!ops_.empty()) w.emplace_back(Capture, 4);
    if (!ks.empty()) w.emplace_back(Resume, 4);
    if (d >= 2) w.emplace_back(Beta, 2);
    if (d >= 2) w.emplace_back(Cond, 1);
    if (o_.sloppy) w.emplace_back(Sloppy, 1);
    int total = 0;
    for (auto& p : w) total += p.second;
    int r = pick(rng_, total);
    Choice c = Leaf;
    for (auto& p : w) {
      if (r < p.second) {
        c = p.first;
        break;
      }
      r -= p.second;
    }
    switch (c) {
      case Leaf: return leaf();
      case Add: return Term::add(nat(d - 1), nat(d - 1));
      case Reset: return Term::reset(nat(d - 1));
      case Capture: {
        ControlOp op = ops_[static_cast<std::size_t>(pick(rng_, static_cast<int>(ops_.size())))];
        std::string k = fresh("k");
        return Term::capture(op, k, with({k, true}, [&] { return nat(d - 1); }));
      }
      case Resume: {
        std::string k = ks[static_cast<std::size_t>(pick(rng_, static_cast<int>(ks.size())))];
        return Term::app(Term::var(k), nat(d - 1));
      }
      case Beta: {
        std::string x = fresh("x");
        Term body = with({x, false}, [&] { return nat(d - 2); });
        return Term::app(Term::lam(x, body), nat(d - 1));
      }
      case Cond: return Term::if_(Term::is_zero(nat(d - 2)), nat(d - 1), nat(d - 1));
      case Sloppy: {
        if (chance(rng_, 0.5)) return Term::add(Term::boolean(true), nat(d - 1));
        std::string x = fresh("x");
        return Term::app(Term::lam(x, Term::app(Term::var(x), Term::var(x))), Term::num(1));
      }
    }
    return leaf();
  }
};

// Productions of each system's type grammar.
struct Prod {
  Ctor c;
  Sort result;
  std::vector<Sort> args;
};

const std::vector<Prod>& grammar(System sys) {
  using S = Sort;
  static const std::vector<Prod> df{{Ctor::Nat, S::Type, {}}, {Ctor::Bool, S::Type, {}},
                                    {Ctor::DFFun, S::Type, {S::Type, S::Type, S::Type, S::Type}}};
  static const std::vector<Prod> df2{{Ctor::Nat, S::Type, {}},
                                     {Ctor::Bool, S::Type, {}},
                                     {Ctor::DF2Fun, S::Type, {S::Type, S::Type, S::Meta, S::Type, S::Meta, S::Type}},
                                     {Ctor::MFun, S::Meta, {S::Type, S::Type}}};
  static const std::vector<Prod> fun{
      {Ctor::Nat, S::Type, {}},
      {Ctor::Bool, S::Type, {}},
      {Ctor::Fun, S::Type, {S::Type, S::Type, S::Trail, S::Meta, S::Type, S::Trail, S::Meta, S::Type}},
      {Ctor::TNil, S::Trail, {}},
      {Ctor::Kont, S::Trail, {S::Type, S::Trail, S::Meta, S::Type}},
      {Ctor::MNil, S::Meta, {}},
      {Ctor::MFun, S::Meta, {S::Type, S::Type}}};
  static const std::vector<Prod> d4{
      {Ctor::Nat, S::Type, {}},
      {Ctor::Bool, S::Type, {}},
      {Ctor::Fun, S::Type, {S::Type, S::Type, S::Trail, S::Meta, S::Type, S::Trail, S::Meta, S::Type}},
      {Ctor::TNil, S::Trail, {}},
      {Ctor::Kont, S::Trail, {S::Type, S::Trail, S::Meta, S::Type}},
      {Ctor::MNil, S::Meta, {}},
      {Ctor::MCons, S::Meta, {S::Trail, S::Trail, S::Meta}}};
  static const std::vector<Prod> cp{{Ctor::Nat, S::Type, {}},
                                    {Ctor::Bool, S::Type, {}},
                                    {Ctor::CPFun, S::Type, {S::Type, S::Type, S::Trail, S::Type, S::Trail, S::Type}},
                                    {Ctor::TNil, S::Trail, {}},
                                    {Ctor::CPKont, S::Trail, {S::Type, S::Trail, S::Type}}};
  static const std::vector<Prod> dp{{Ctor::Nat, S::Type, {}},
                                    {Ctor::Bool, S::Type, {}},
                                    {Ctor::DPFun, S::Type, {S::Type, S::Type, S::Meta, S::Type, S::Meta, S::Type}},
                                    {Ctor::MNil, S::Meta, {}},
                                    {Ctor::DPCons, S::Meta, {S::Trail, S::Meta}},
                                    {Ctor::DPKont, S::Trail, {S::Type, S::Meta, S::Type}}};
  static const std::vector<Prod> mb{{Ctor::Nat, S::Type, {}},
                                    {Ctor::Bool, S::Type, {}},
                                    {Ctor::MBFun, S::Type, {S::Type, S::Type, S::Ann}},
                                    {Ctor::AnnEps, S::Ann, {}},
                                    {Ctor::AnnCons, S::Ann, {S::Type, S::Ann, S::Type, S::Ann}}};
  switch (sys) {
    case System::DF: return df;
    case System::DF2: return df2;
    case System::FourDfun: return fun;
    case System::CP: return cp;
    case System::DPrime: return dp;
    case System::MB: return mb;
    default: return d4;
  }
}

class TypeGen {
 public:
  TypeGen(Rng& rng, System sys, bool mb_ext) : rng_(rng), sys_(sys), mb_ext_(mb_ext) {}

  BType gen(Sort s, int depth) {
    std::vector<const Prod*> leaves, nodes;
    for (const Prod& p : grammar(sys_)) {
      if (p.result != s) continue;
      if (p.args.empty()) {
        leaves.push_back(&p);
      } else if (depth >= min_depth(p.c)) {
        nodes.push_back(&p);
      }
    }
    // Some sorts have no leaf (D′ continuations, DF2 metas): past the depth
    // bound, take the first production of the sort anyway.
    if (leaves.empty() && nodes.empty()) {
      for (const Prod& p : grammar(sys_)) {
        if (p.result == s) return build(p, 0);
      }
    }
    if (leaves.empty() || (!nodes.empty() && chance(rng_, 0.6))) {
      return build(*nodes[static_cast<std::size_t>(pick(rng_, static_cast<int>(nodes.size())))], depth);
    }
    return BType{leaves[static_cast<std::size_t>(pick(rng_, static_cast<int>(leaves.size())))]->c, {}};
  }

 private:
  Rng& rng_;
  System sys_;
  bool mb_ext_;

  static int min_depth(Ctor c) { return c == Ctor::MCons || c == Ctor::DPCons ? 2 : 1; }

  BType build(const Prod& p, int depth) {
    std::vector<BType> args;
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      if (i == 0 && p.c == Ctor::MCons) {
        args.push_back(head(Ctor::Kont, depth - 1));
      } else if (i == 0 && p.c == Ctor::DPCons) {
        args.push_back(head(Ctor::DPKont, depth - 1));
      } else if (mb_ext_ && p.c == Ctor::MBFun && i == 2) {
        args.push_back(build(grammar(sys_)[4], depth - 1));
      } else {
        args.push_back(gen(p.args[i], depth - 1));
      }
    }
    return BType{p.c, std::move(args)};
  }

  BType head(Ctor c, int depth) {
    for (const Prod& p : grammar(sys_)) {
      if (p.c == c) return build(p, depth);
    }
    return BType::nat();
  }
};

}  // namespace

Term random_term(Rng& rng, const TermGenOptions& opts) {
  for (;;) {
    TermGen g(rng, opts);
    Term t = g.top();
    if (depth(t) <= opts.max_depth) return t;
  }
}

bridge::BType random_btype(Rng& rng, bridge::System sys, int depth) {
  return TypeGen(rng, sys, false).gen(Sort::Type, depth);
}

bridge::BType random_mb_ext(Rng& rng, int depth) { return TypeGen(rng, System::MB, true).gen(Sort::Type, depth); }

Type random_type(Rng& rng, int depth) { return bridge::to_lambdad(random_btype(rng, System::FourD, depth)); }

bridge::BType random_btype(Rng& rng, bridge::System sys, bridge::Sort sort, int depth) {
  return TypeGen(rng, sys, false).gen(sort, depth);
}

namespace {
// Carries a trail or meta through a λD function type to reach its λD form.
FunType carrier(const BType& trail, const BType& meta) {
  BType f{Ctor::Fun, {BType::nat(), BType::nat(), trail, meta, BType::nat(), BType::tnil(), BType::mnil(), BType::nat()}};
  return bridge::to_lambdad(f).as_fun();
}
}  // namespace

Trail random_trail(Rng& rng, int depth) {
  return carrier(random_btype(rng, System::FourD, Sort::Trail, depth), BType::mnil()).initial.trail;
}

Meta random_meta(Rng& rng, int depth) {
  return carrier(BType::tnil(), random_btype(rng, System::FourD, Sort::Meta, depth)).initial.meta;
}

}  // namespace lambdad::testing
