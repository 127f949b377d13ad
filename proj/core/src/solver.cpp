#include "solver.hpp"

#include <cstdint>

#include "lambdad/errors.hpp"

namespace lambdad::solve {

Ty Solver::fresh(Sort s) {
  int id = static_cast<int>(binding_.size());
  binding_.push_back(nullptr);
  sorts_.push_back(s);
  return mk_var(id);
}

Ty Solver::resolve(Ty t) const {
  while (t->con == Con::Var) {
    const Ty& b = binding_[static_cast<std::size_t>(t->var)];
    if (!b) break;
    t = b;
  }
  return t;
}

bool Solver::occurs(int v, const Ty& t) const {
  Ty r = resolve(t);
  if (r->con == Con::Var) return r->var == v;
  for (const Ty& a : r->args) {
    if (occurs(v, a)) return true;
  }
  return false;
}

void Solver::bind(int v, Ty t) {
  binding_[static_cast<std::size_t>(v)] = std::move(t);
  log_.push_back(v);
}

bool Solver::unify(const Ty& a0, const Ty& b0) {
  Ty a = resolve(a0);
  Ty b = resolve(b0);
  if (a == b) return true;
  if (a->con == Con::Var && b->con == Con::Var && a->var == b->var) return true;
  if (a->con == Con::Var) {
    if (occurs(a->var, b)) return false;
    bind(a->var, b);
    return true;
  }
  if (b->con == Con::Var) {
    if (occurs(b->var, a)) return false;
    bind(b->var, a);
    return true;
  }
  if (a->con != b->con) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!unify(a->args[i], b->args[i])) return false;
  }
  return true;
}

bool Solver::unify_all(const std::vector<std::pair<Ty, Ty>>& eqs) {
  for (const auto& [x, y] : eqs) {
    if (!unify(x, y)) return false;
  }
  return true;
}

void Solver::rollback(Mark m) {
  while (log_.size() > m.log) {
    binding_[static_cast<std::size_t>(log_.back())] = nullptr;
    log_.pop_back();
  }
  binding_.resize(m.vars);
  sorts_.resize(m.vars);
}

Ty Solver::walk(const Ty& t) const {
  Ty r = resolve(t);
  if (r->args.empty()) return r;
  std::vector<Ty> args;
  args.reserve(r->args.size());
  bool changed = false;
  for (const Ty& a : r->args) {
    args.push_back(walk(a));
    changed = changed || args.back() != a;
  }
  return changed ? mk(r->con, std::move(args)) : r;
}

Ty Solver::zonk(const Ty& t, const std::function<Ty(Solver&, Sort)>& dflt,
                std::vector<std::pair<int, Ty>>* defaulted) {
  Ty r = resolve(t);
  if (r->con == Con::Var) {
    Ty d = dflt(*this, sorts_[static_cast<std::size_t>(r->var)]);
    bind(r->var, d);
    if (defaulted) defaulted->emplace_back(r->var, d);
    return zonk(d, dflt, defaulted);
  }
  if (r->args.empty()) return r;
  std::vector<Ty> args;
  args.reserve(r->args.size());
  for (const Ty& a : r->args) args.push_back(zonk(a, dflt, defaulted));
  return mk(r->con, std::move(args));
}

std::vector<std::size_t> Solver::viable(const std::vector<Alternative>& alts) {
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    if (++trials_ > budget_) {
      throw TypeError(TypeErrorKind::SearchExhausted, "",
                      "constraint search exceeded " + std::to_string(budget_) + " trials");
    }
    Mark m = mark();
    if (unify_all(alts[i].eqs)) ok.push_back(i);
    rollback(m);
  }
  return ok;
}

std::vector<Alternative> Solver::expand(const Relation& r) {
  if (r.depth > max_depth_) {
    cut_ = true;
    return {};
  }
  return r.expand(*this, r.args);
}

void Solver::commit(Alternative& alt, const Relation& parent) {
  bool ok = unify_all(alt.eqs);
  (void)ok;  // checked viable just before
  for (Relation& r : alt.subs) {
    if (r.origin.empty()) r.origin = parent.origin;
    r.depth = parent.depth + 1;
    pending_.push_back(std::move(r));
  }
}

bool Solver::propagate() {
  bool progress = true;
  while (progress && !pending_.empty()) {
    progress = false;
    for (std::size_t i = 0; i < pending_.size();) {
      Mark before = mark();
      std::vector<Alternative> alts = expand(pending_[i]);
      std::vector<std::size_t> ok = viable(alts);
      if (ok.empty()) {
        set_failure(show_relation(*this, pending_[i]));
        rollback(before);
        return false;
      }
      if (ok.size() == 1) {
        Relation r = std::move(pending_[i]);
        pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(i));
        commit(alts[ok.front()], r);
        progress = true;
        continue;
      }
      rollback(before);
      ++i;
    }
  }
  return true;
}

bool Solver::search() {
  if (!propagate()) return false;
  if (pending_.empty()) return true;

  std::size_t best = 0;
  std::size_t best_count = SIZE_MAX;
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    Mark before = mark();
    auto alts = expand(pending_[i]);
    std::size_t n = viable(alts).size();
    rollback(before);
    if (n < best_count) {
      best = i;
      best_count = n;
    }
  }

  std::vector<Relation> saved = pending_;
  Relation chosen = pending_[best];
  Mark before = mark();
  std::vector<Alternative> alts = expand(chosen);
  std::vector<std::size_t> ok = viable(alts);
  for (std::size_t idx : ok) {
    Mark m = mark();
    pending_ = saved;
    pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(best));
    commit(alts[idx], chosen);
    if (search()) return true;
    rollback(m);
  }
  rollback(before);
  pending_ = std::move(saved);
  return false;
}

bool Solver::solve(std::size_t budget, int max_depth) {
  budget_ = budget;
  max_depth_ = max_depth;
  trials_ = 0;
  cut_ = false;
  if (search()) return true;
  if (cut_) {
    throw TypeError(TypeErrorKind::SearchExhausted, "",
                    "no solution with trail constraints nested at most " +
                        std::to_string(max_depth) + " deep");
  }
  return false;
}

std::string show_relation(const Solver& s, const Relation& r) {
  std::string out = std::string(r.name) + "(";
  for (std::size_t i = 0; i < r.args.size(); ++i) {
    if (i) out += ", ";
    out += show(s.walk(r.args[i]));
  }
  out += ")";
  if (!r.origin.empty()) out += " from " + r.origin;
  return out;
}

}  // namespace lambdad::solve
