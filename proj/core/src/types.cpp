#include "lambdad/types.hpp"

#include <algorithm>

#include "overloaded.hpp"

namespace lambdad {

Type Type::nat() {
  static const Type t(std::make_shared<const TypeNode>(TypeNode{NatType{}}));
  return t;
}

Type Type::boolean() {
  static const Type t(std::make_shared<const TypeNode>(TypeNode{BoolType{}}));
  return t;
}

Type Type::fun(Type dom, Type cod, Trail mu_alpha, Meta sigma_alpha, Type alpha,
               Trail mu_beta, Meta sigma_beta, Type beta) {
  return make_fun(std::move(dom), std::move(cod),
                  Row{std::move(mu_alpha), std::move(sigma_alpha), std::move(alpha)},
                  Row{std::move(mu_beta), std::move(sigma_beta), std::move(beta)});
}

Type make_fun(Type dom, Type cod, Row initial, Row final) {
  return Type(std::make_shared<const TypeNode>(
      TypeNode{FunType{std::move(dom), std::move(cod), std::move(initial), std::move(final)}}));
}

bool Type::is_nat() const { return std::holds_alternative<NatType>(node_->v); }
bool Type::is_bool() const { return std::holds_alternative<BoolType>(node_->v); }
bool Type::is_fun() const { return std::holds_alternative<FunType>(node_->v); }
const FunType& Type::as_fun() const { return std::get<FunType>(node_->v); }

Trail Trail::empty() {
  static const Trail t(std::make_shared<const TrailNode>(TrailNode{EmptyTrail{}}));
  return t;
}

Trail Trail::kont(const Kont& k) { return Trail(std::make_shared<const TrailNode>(TrailNode{k})); }

bool Trail::is_empty() const { return std::holds_alternative<EmptyTrail>(node_->v); }
const Kont& Trail::as_kont() const { return std::get<Kont>(node_->v); }

Meta Meta::empty() {
  static const Meta m(std::make_shared<const MetaNode>(MetaNode{EmptyMeta{}}));
  return m;
}

Meta Meta::cons(const Kont& kont, Trail trail, Meta rest) {
  return Meta(std::make_shared<const MetaNode>(
      MetaNode{ConsMeta{kont, std::move(trail), std::move(rest)}}));
}

bool Meta::is_empty() const { return std::holds_alternative<EmptyMeta>(node_->v); }
const ConsMeta& Meta::as_cons() const { return std::get<ConsMeta>(node_->v); }

Kont make_kont(Type arg, Trail trail, Meta meta, Type result) {
  return Kont{std::move(arg), std::move(trail), std::move(meta), std::move(result)};
}

bool operator==(const Type& a, const Type& b) {
  if (&a.node() == &b.node()) return true;
  if (a.node().v.index() != b.node().v.index()) return false;
  if (!a.is_fun()) return true;
  const FunType& fa = a.as_fun();
  const FunType& fb = b.as_fun();
  return fa.dom == fb.dom && fa.cod == fb.cod && fa.initial == fb.initial && fa.final == fb.final;
}

bool operator==(const Trail& a, const Trail& b) {
  if (&a.node() == &b.node()) return true;
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  return a.as_kont() == b.as_kont();
}

bool operator==(const Meta& a, const Meta& b) {
  if (&a.node() == &b.node()) return true;
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  const ConsMeta& ca = a.as_cons();
  const ConsMeta& cb = b.as_cons();
  return ca.kont == cb.kont && ca.trail == cb.trail && ca.rest == cb.rest;
}

bool operator==(const Kont& a, const Kont& b) {
  return a.arg == b.arg && a.trail == b.trail && a.meta == b.meta && a.result == b.result;
}

bool operator==(const Row& a, const Row& b) {
  return a.trail == b.trail && a.meta == b.meta && a.answer == b.answer;
}

bool type_equal(const Type& a, const Type& b) { return a == b; }
bool type_equal(const Trail& a, const Trail& b) { return a == b; }
bool type_equal(const Meta& a, const Meta& b) { return a == b; }

namespace {

int depth(const Kont& k) {
  return 1 + std::max({depth(k.arg), depth(k.trail), depth(k.meta), depth(k.result)});
}

int depth(const Row& r) { return std::max({depth(r.trail), depth(r.meta), depth(r.answer)}); }

}  // namespace

int depth(const Type& t) {
  if (!t.is_fun()) return 0;
  const FunType& f = t.as_fun();
  return 1 + std::max({depth(f.dom), depth(f.cod), depth(f.initial), depth(f.final)});
}

int depth(const Trail& t) { return t.is_empty() ? 0 : depth(t.as_kont()); }

int depth(const Meta& m) {
  if (m.is_empty()) return 0;
  const ConsMeta& c = m.as_cons();
  return 1 + std::max({depth(c.kont), depth(c.trail), depth(c.rest)});
}

std::string to_display(const Row& r) {
  return "<" + to_display(r.trail) + "," + to_display(r.meta) + "> " + to_display(r.answer);
}

std::string to_display(const Type& t) {
  return std::visit(overloaded{
                        [](const NatType&) -> std::string { return "Nat"; },
                        [](const BoolType&) -> std::string { return "Bool"; },
                        [](const FunType& f) -> std::string {
                          return "(" + to_display(f.dom) + " -> " + to_display(f.cod) + ") " +
                                 to_display(f.initial) + " " + to_display(f.final);
                        },
                    },
                    t.node().v);
}

std::string to_display(const Kont& k) {
  return "[" + to_display(k.arg) + " <" + to_display(k.trail) + "," + to_display(k.meta) + "> " +
         to_display(k.result) + "]";
}

std::string to_display(const Trail& t) { return t.is_empty() ? "•" : to_display(t.as_kont()); }

std::string to_display(const Meta& m) {
  if (m.is_empty()) return "•";
  const ConsMeta& c = m.as_cons();
  return "((" + to_display(c.kont) + " * " + to_display(c.trail) + ") :: " + to_display(c.rest) +
         ")";
}

}  // namespace lambdad
