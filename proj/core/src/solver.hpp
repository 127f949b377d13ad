#pragma once

// Unification with disjunctive relational constraints.
//
// A relation expands, given its current arguments, into an ordered list of
// alternatives (equations plus further relations). Propagation commits any
// relation with exactly one alternative whose equations still unify; when
// every pending relation is ambiguous the solver branches depth first, in
// alternative order, on the relation with the fewest viable alternatives.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tytree.hpp"

namespace lambdad::solve {

class Solver;
struct Relation;

struct Alternative {
  std::string label;
  std::vector<std::pair<Ty, Ty>> eqs;
  std::vector<Relation> subs;
};

using Expander = std::vector<Alternative> (*)(Solver&, const std::vector<Ty>&);

struct Relation {
  const char* name;
  Expander expand;
  std::vector<Ty> args;
  std::string origin;  // which rule instance produced it
  int depth = 0;       // nesting below the relation the typing rule emitted
};

class Solver {
 public:
  struct Mark {
    std::size_t log;
    std::size_t vars;
  };

  Ty fresh(Sort s);
  Sort sort_of_var(int id) const { return sorts_[static_cast<std::size_t>(id)]; }
  std::size_t var_count() const { return binding_.size(); }

  // Follows variable bindings at the root only.
  Ty resolve(Ty t) const;
  // On failure the state may be partially updated; callers roll back to a mark.
  bool unify(const Ty& a, const Ty& b);
  bool unify_all(const std::vector<std::pair<Ty, Ty>>& eqs);

  Mark mark() const { return {log_.size(), binding_.size()}; }
  void rollback(Mark m);

  void add(Relation r) { pending_.push_back(std::move(r)); }
  std::size_t pending() const { return pending_.size(); }

  // Discharges every pending relation. Returns false when unsatisfiable.
  // Throws TypeError(SearchExhausted) after `budget` alternative trials, or
  // when no solution was found and some branch hit the nesting bound.
  bool solve(std::size_t budget = 200000, int max_depth = 8);

  // Substitutes all bindings. Unbound variables are bound to `dflt(sort)`
  // (which may itself create fresh variables) and recorded in `defaulted`.
  Ty zonk(const Ty& t, const std::function<Ty(Solver&, Sort)>& dflt,
          std::vector<std::pair<int, Ty>>* defaulted = nullptr);
  // Substitutes bindings, leaving unbound variables in place.
  Ty walk(const Ty& t) const;

  const std::string& failure() const { return failure_; }
  void set_failure(std::string f) {
    if (failure_.empty()) failure_ = std::move(f);
  }

 private:
  std::vector<Ty> binding_;
  std::vector<Sort> sorts_;
  std::vector<int> log_;
  std::vector<Relation> pending_;
  std::string failure_;
  std::size_t trials_ = 0;
  std::size_t budget_ = 0;
  int max_depth_ = 8;
  bool cut_ = false;

  bool occurs(int v, const Ty& t) const;
  void bind(int v, Ty t);
  bool propagate();
  bool search();
  std::vector<Alternative> expand(const Relation& r);
  std::vector<std::size_t> viable(const std::vector<Alternative>& alts);
  void commit(Alternative& alt, const Relation& parent);
};

std::string show_relation(const Solver& s, const Relation& r);

}  // namespace lambdad::solve
