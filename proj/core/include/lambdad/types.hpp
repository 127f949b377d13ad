#pragma once

#include <memory>
#include <string>
#include <variant>

namespace lambdad {

class Type;
class Trail;
class Meta;

struct TypeNode;
struct TrailNode;
struct MetaNode;
struct FunType;
struct Kont;
struct ConsMeta;

// Value types τ.
class Type {
 public:
  static Type nat();
  static Type boolean();
  static Type fun(Type dom, Type cod, Trail mu_alpha, Meta sigma_alpha,
                  Type alpha, Trail mu_beta, Meta sigma_beta, Type beta);

  bool is_nat() const;
  bool is_bool() const;
  bool is_fun() const;
  const FunType& as_fun() const;  // precondition: is_fun()

  explicit Type(std::shared_ptr<const TypeNode> node) : node_(std::move(node)) {}
  const TypeNode& node() const { return *node_; }

 private:
  std::shared_ptr<const TypeNode> node_;
};

// Trail types μ: empty, or a continuation type τ1 ⟨μ,σ⟩ τ2.
class Trail {
 public:
  static Trail empty();
  static Trail kont(const Kont& k);

  bool is_empty() const;
  const Kont& as_kont() const;  // precondition: !is_empty()

  explicit Trail(std::shared_ptr<const TrailNode> node) : node_(std::move(node)) {}
  const TrailNode& node() const { return *node_; }

 private:
  std::shared_ptr<const TrailNode> node_;
};

// Meta-continuation types σ: empty, or (κ × μ) :: σ.
class Meta {
 public:
  static Meta empty();
  static Meta cons(const Kont& kont, Trail trail, Meta rest);

  bool is_empty() const;
  const ConsMeta& as_cons() const;  // precondition: !is_empty()

  explicit Meta(std::shared_ptr<const MetaNode> node) : node_(std::move(node)) {}
  const MetaNode& node() const { return *node_; }

 private:
  std::shared_ptr<const MetaNode> node_;
};

// The continuation type τ1 ⟨μ,σ⟩ τ2: accepts a value of type `arg`, a trail
// of type `trail` and a meta continuation of type `meta`, answers `result`.
struct Kont {
  Type arg;
  Trail trail;
  Meta meta;
  Type result;
};

// An answer-type row ⟨μ,σ⟩ α.
struct Row {
  Trail trail;
  Meta meta;
  Type answer;

  static Row pure(Type answer) { return {Trail::empty(), Meta::empty(), std::move(answer)}; }
};

// τ1 → τ2 ⟨μα,σα⟩ α ⟨μβ,σβ⟩ β.
struct FunType {
  Type dom;
  Type cod;
  Row initial;
  Row final;
};

struct ConsMeta {
  Kont kont;
  Trail trail;
  Meta rest;
};

struct NatType {};
struct BoolType {};

struct TypeNode {
  std::variant<NatType, BoolType, FunType> v;
};
struct EmptyTrail {};
struct TrailNode {
  std::variant<EmptyTrail, Kont> v;
};
struct EmptyMeta {};
struct MetaNode {
  std::variant<EmptyMeta, ConsMeta> v;
};

Type make_fun(Type dom, Type cod, Row initial, Row final);
Kont make_kont(Type arg, Trail trail, Meta meta, Type result);

// Structural equality (type_equal).
bool operator==(const Type& a, const Type& b);
bool operator==(const Trail& a, const Trail& b);
bool operator==(const Meta& a, const Meta& b);
bool operator==(const Kont& a, const Kont& b);
bool operator==(const Row& a, const Row& b);

bool type_equal(const Type& a, const Type& b);
bool type_equal(const Trail& a, const Trail& b);
bool type_equal(const Meta& a, const Meta& b);

// Depth: base types and empty sorts are 0; constructors add one.
int depth(const Type& t);
int depth(const Trail& t);
int depth(const Meta& t);

// Human-facing display using the surface type syntax.
std::string to_display(const Type& t);
std::string to_display(const Trail& t);
std::string to_display(const Meta& t);
std::string to_display(const Kont& k);
std::string to_display(const Row& r);

}  // namespace lambdad
