#include "lambdad/serialize.hpp"

#include <cctype>
#include <charconv>

#include "json_tree.hpp"
#include "lambdad/errors.hpp"
#include "overloaded.hpp"

namespace lambdad {

namespace {

SExpr atom(std::string a) { return SExpr::make_atom(std::move(a)); }
SExpr list(std::vector<SExpr> xs) { return SExpr::make_list(std::move(xs)); }

SExpr kont_sexpr(const Kont& k) {
  return list({atom("kont"), to_sexpr(k.arg), to_sexpr(k.trail), to_sexpr(k.meta), to_sexpr(k.result)});
}

}  // namespace

SExpr to_sexpr(const Type& t) {
  if (t.is_nat()) return atom("nat");
  if (t.is_bool()) return atom("bool");
  const FunType& f = t.as_fun();
  return list({atom("fun"), to_sexpr(f.dom), to_sexpr(f.cod), to_sexpr(f.initial.trail),
               to_sexpr(f.initial.meta), to_sexpr(f.initial.answer), to_sexpr(f.final.trail),
               to_sexpr(f.final.meta), to_sexpr(f.final.answer)});
}

SExpr to_sexpr(const Trail& t) { return t.is_empty() ? atom("tnil") : kont_sexpr(t.as_kont()); }

SExpr to_sexpr(const Meta& m) {
  if (m.is_empty()) return atom("mnil");
  const ConsMeta& c = m.as_cons();
  return list({atom("mcons"), kont_sexpr(c.kont), to_sexpr(c.trail), to_sexpr(c.rest)});
}

SExpr to_sexpr(const Term& t) {
  auto sub = [](const std::shared_ptr<const TermNode>& p) { return to_sexpr(Term(p)); };
  return std::visit(
      overloaded{
          [](const Num& n) { return atom(std::to_string(n.value)); },
          [](const BoolLit& b) { return atom(b.value ? "true" : "false"); },
          [](const Var& v) { return atom(v.name); },
          [&](const Lam& l) {
            std::vector<SExpr> xs{atom("lam"), atom(l.param)};
            if (l.annotation) xs.push_back(list({atom(":"), to_sexpr(*l.annotation)}));
            xs.push_back(sub(l.body));
            return list(std::move(xs));
          },
          [&](const App& a) { return list({atom("app"), sub(a.fn), sub(a.arg)}); },
          [&](const Add& a) { return list({atom("add"), sub(a.lhs), sub(a.rhs)}); },
          [&](const IsZero& z) { return list({atom("is0"), sub(z.arg)}); },
          [&](const If& i) {
            return list({atom("if"), sub(i.cond), sub(i.then_branch), sub(i.else_branch)});
          },
          [&](const Capture& c) {
            std::vector<SExpr> xs{atom(std::string(keyword(c.op))), atom(c.binder)};
            if (!c.annotation.empty()) {
              std::vector<SExpr> ann{atom("@")};
              const OpAnnotation& a = c.annotation;
              if (a.k_type) ann.push_back(list({atom("k"), to_sexpr(*a.k_type)}));
              if (a.body_cont) ann.push_back(list({atom("cont"), kont_sexpr(*a.body_cont)}));
              if (a.body_trail) ann.push_back(list({atom("trail"), to_sexpr(*a.body_trail)}));
              if (a.mid_trail) ann.push_back(list({atom("mid"), to_sexpr(*a.mid_trail)}));
              xs.push_back(list(std::move(ann)));
            }
            xs.push_back(sub(c.body));
            return list(std::move(xs));
          },
          [&](const Reset& r) { return list({atom("reset"), sub(r.body)}); },
      },
      t.node().v);
}

std::string serialize(const Term& t) { return write_sexpr(to_sexpr(t)); }
std::string serialize(const Type& t) { return write_sexpr(to_sexpr(t)); }
std::string serialize(const Trail& t) { return write_sexpr(to_sexpr(t)); }
std::string serialize(const Meta& t) { return write_sexpr(to_sexpr(t)); }
std::string serialize(const Kont& k) { return write_sexpr(kont_sexpr(k)); }

namespace {

SExpr ctype_sexpr(const lc::CType& t) {
  using namespace lc;
  return std::visit(overloaded{
                        [](const CNat&) { return atom("nat"); },
                        [](const CBool&) { return atom("bool"); },
                        [](const CUnit&) { return atom("unit"); },
                        [](const CFun& f) {
                          return list({atom("->"), ctype_sexpr(f.dom), ctype_sexpr(f.cod)});
                        },
                        [](const CProd& p) {
                          return list({atom("*"), ctype_sexpr(p.left), ctype_sexpr(p.right)});
                        },
                    },
                    t.node().v);
}

SExpr cterm_sexpr(const lc::CTerm& t) {
  using namespace lc;
  auto sub = [](const CPtr& p) { return cterm_sexpr(CTerm(p)); };
  return std::visit(
      overloaded{
          [](const CVar& v) { return atom(v.name); },
          [&](const CLam& l) {
            return list({atom("lam"), atom(l.param), ctype_sexpr(l.param_type), sub(l.body)});
          },
          [&](const CApp& a) { return list({atom("app"), sub(a.fn), sub(a.arg)}); },
          [](const CNum& n) { return atom(std::to_string(n.value)); },
          [](const CBoolLit& b) { return atom(b.value ? "true" : "false"); },
          [&](const CAdd& a) { return list({atom("add"), sub(a.lhs), sub(a.rhs)}); },
          [&](const CIsZero& z) { return list({atom("is0"), sub(z.arg)}); },
          [&](const CIf& i) {
            return list({atom("if"), sub(i.cond), sub(i.then_branch), sub(i.else_branch)});
          },
          [](const CUnitLit&) { return atom("unit"); },
          [&](const CPair& p) { return list({atom("pair"), sub(p.left), sub(p.right)}); },
          [&](const CCase& c) {
            SExpr pat = c.pattern.nested
                            ? list({list({atom(c.pattern.k), atom(c.pattern.t)}), atom(c.pattern.m)})
                            : list({atom(c.pattern.var)});
            return list({atom("case"), sub(c.scrut), ctype_sexpr(c.result), sub(c.unit_branch),
                         std::move(pat), sub(c.other_branch)});
          },
      },
      t.node().v);
}

}  // namespace

std::string serialize(const lc::CTerm& t) { return write_sexpr(cterm_sexpr(t)); }
std::string serialize(const lc::CType& t) { return write_sexpr(ctype_sexpr(t)); }

// ---------------------------------------------------------------------------
// Reading

namespace {

bool is_numeral(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

class Decoder {
 public:
  explicit Decoder(const std::string& origin) : origin_(origin) {}

  [[noreturn]] void fail(const SExpr& at, const std::string& msg,
                         std::vector<std::string> expected = {}) const {
    throw ParseError(origin_, at.line, at.col, msg, std::move(expected));
  }

  std::int64_t numeral(const SExpr& s) const {
    std::int64_t v = 0;
    auto r = std::from_chars(s.atom.data(), s.atom.data() + s.atom.size(), v);
    if (r.ec != std::errc{}) fail(s, "numeral out of range");
    return v;
  }

  std::string ident(const SExpr& s) const {
    if (!s.is_atom || !is_identifier(s.atom)) fail(s, "expected an identifier", {"identifier"});
    return s.atom;
  }

  void arity(const SExpr& s, std::size_t n) const {
    if (s.items.size() != n) {
      fail(s, "'" + s.items.front().atom + "' takes " + std::to_string(n - 1) + " operand(s)");
    }
  }

  Type type(const SExpr& s) const {
    if (s.is("nat")) return Type::nat();
    if (s.is("bool")) return Type::boolean();
    if (s.headed("fun")) {
      arity(s, 9);
      const auto& x = s.items;
      return Type::fun(type(x[1]), type(x[2]), trail(x[3]), meta(x[4]), type(x[5]), trail(x[6]),
                       meta(x[7]), type(x[8]));
    }
    fail(s, "expected a value type", {"nat", "bool", "(fun ...)"});
  }

  Kont kont(const SExpr& s) const {
    if (!s.headed("kont")) fail(s, "expected a continuation type", {"(kont ...)"});
    arity(s, 5);
    const auto& x = s.items;
    return make_kont(type(x[1]), trail(x[2]), meta(x[3]), type(x[4]));
  }

  Trail trail(const SExpr& s) const {
    if (s.is("tnil")) return Trail::empty();
    if (s.headed("kont")) return Trail::kont(kont(s));
    fail(s, "expected a trail type", {"tnil", "(kont ...)"});
  }

  Meta meta(const SExpr& s) const {
    if (s.is("mnil")) return Meta::empty();
    if (s.headed("mcons")) {
      arity(s, 4);
      const auto& x = s.items;
      return Meta::cons(kont(x[1]), trail(x[2]), meta(x[3]));
    }
    fail(s, "expected a meta-continuation type", {"mnil", "(mcons ...)"});
  }

  OpAnnotation op_annotation(const SExpr& s) const {
    OpAnnotation a;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const SExpr& f = s.items[i];
      if (f.is_atom || f.items.size() != 2 || !f.items[0].is_atom) {
        fail(f, "malformed annotation field", {"(k T)", "(cont K)", "(trail M)", "(mid M)"});
      }
      const std::string& key = f.items[0].atom;
      if (key == "k" && !a.k_type) {
        a.k_type = type(f.items[1]);
      } else if (key == "cont" && !a.body_cont) {
        a.body_cont = kont(f.items[1]);
      } else if (key == "trail" && !a.body_trail) {
        a.body_trail = trail(f.items[1]);
      } else if (key == "mid" && !a.mid_trail) {
        a.mid_trail = trail(f.items[1]);
      } else {
        fail(f, "unknown or repeated annotation field '" + key + "'", {"k", "cont", "trail", "mid"});
      }
    }
    return a;
  }

  Term term(const SExpr& s) const {
    if (s.is_atom) {
      if (s.atom == "true") return Term::boolean(true);
      if (s.atom == "false") return Term::boolean(false);
      if (is_numeral(s.atom)) return Term::num(numeral(s));
      return Term::var(ident(s));
    }
    if (s.items.empty() || !s.items.front().is_atom) fail(s, "expected a term form");
    const std::string& head = s.items.front().atom;
    const auto& x = s.items;
    if (head == "lam") {
      if (x.size() == 3) return Term::lam(ident(x[1]), term(x[2]));
      if (x.size() == 4 && x[2].headed(":") && x[2].items.size() == 2) {
        return Term::lam(ident(x[1]), term(x[3]), type(x[2].items[1]));
      }
      fail(s, "malformed lam", {"(lam x body)", "(lam x (: T) body)"});
    }
    if (head == "app") {
      arity(s, 3);
      return Term::app(term(x[1]), term(x[2]));
    }
    if (head == "add") {
      arity(s, 3);
      return Term::add(term(x[1]), term(x[2]));
    }
    if (head == "is0") {
      arity(s, 2);
      return Term::is_zero(term(x[1]));
    }
    if (head == "if") {
      arity(s, 4);
      return Term::if_(term(x[1]), term(x[2]), term(x[3]));
    }
    if (head == "reset") {
      arity(s, 2);
      return Term::reset(term(x[1]));
    }
    for (ControlOp op : {ControlOp::Shift, ControlOp::Control, ControlOp::Shift0, ControlOp::Control0}) {
      if (head != keyword(op)) continue;
      if (x.size() == 3) return Term::capture(op, ident(x[1]), term(x[2]));
      if (x.size() == 4 && x[2].headed("@")) {
        return Term::capture(op, ident(x[1]), term(x[3]), op_annotation(x[2]));
      }
      fail(s, "malformed " + head, {"(" + head + " k body)", "(" + head + " k (@ ...) body)"});
    }
    fail(s.items.front(), "unknown form '" + head + "'",
         {"lam", "app", "add", "is0", "if", "shift", "control", "shift0", "control0", "reset"});
  }

  lc::CType ctype(const SExpr& s) const {
    using lc::CType;
    if (s.is("nat")) return CType::nat();
    if (s.is("bool")) return CType::boolean();
    if (s.is("unit")) return CType::unit();
    if (s.headed("->")) {
      arity(s, 3);
      return CType::fun(ctype(s.items[1]), ctype(s.items[2]));
    }
    if (s.headed("*")) {
      arity(s, 3);
      return CType::prod(ctype(s.items[1]), ctype(s.items[2]));
    }
    fail(s, "expected a target type", {"nat", "bool", "unit", "(-> a b)", "(* a b)"});
  }

  lc::CTerm cterm(const SExpr& s) const {
    using lc::CTerm;
    if (s.is_atom) {
      if (s.atom == "true") return CTerm::boolean(true);
      if (s.atom == "false") return CTerm::boolean(false);
      if (s.atom == "unit") return CTerm::unit();
      if (is_numeral(s.atom)) return CTerm::num(numeral(s));
      return CTerm::var(ident(s));
    }
    if (s.items.empty() || !s.items.front().is_atom) fail(s, "expected a target term form");
    const std::string& head = s.items.front().atom;
    const auto& x = s.items;
    if (head == "lam") {
      arity(s, 4);
      return CTerm::lam(ident(x[1]), ctype(x[2]), cterm(x[3]));
    }
    if (head == "app") {
      arity(s, 3);
      return CTerm::app(cterm(x[1]), cterm(x[2]));
    }
    if (head == "add") {
      arity(s, 3);
      return CTerm::add(cterm(x[1]), cterm(x[2]));
    }
    if (head == "is0") {
      arity(s, 2);
      return CTerm::is_zero(cterm(x[1]));
    }
    if (head == "if") {
      arity(s, 4);
      return CTerm::if_(cterm(x[1]), cterm(x[2]), cterm(x[3]));
    }
    if (head == "pair") {
      arity(s, 3);
      return CTerm::pair(cterm(x[1]), cterm(x[2]));
    }
    if (head == "case") {
      arity(s, 6);
      const SExpr& p = x[4];
      lc::CasePattern pat;
      if (!p.is_atom && p.items.size() == 1) {
        pat.var = ident(p.items[0]);
      } else if (!p.is_atom && p.items.size() == 2 && !p.items[0].is_atom &&
                 p.items[0].items.size() == 2) {
        pat.nested = true;
        pat.k = ident(p.items[0].items[0]);
        pat.t = ident(p.items[0].items[1]);
        pat.m = ident(p.items[1]);
      } else {
        fail(p, "malformed case pattern", {"(x)", "((k t) m)"});
      }
      return CTerm::case_(cterm(x[1]), ctype(x[2]), cterm(x[3]), std::move(pat), cterm(x[5]));
    }
    fail(s.items.front(), "unknown form '" + head + "'",
         {"lam", "app", "add", "is0", "if", "pair", "case"});
  }

 private:
  const std::string& origin_;
};

}  // namespace

Term term_from_sexpr(const SExpr& s, const std::string& origin) { return Decoder(origin).term(s); }
Type type_from_sexpr(const SExpr& s, const std::string& origin) { return Decoder(origin).type(s); }
Trail trail_from_sexpr(const SExpr& s, const std::string& origin) { return Decoder(origin).trail(s); }
Meta meta_from_sexpr(const SExpr& s, const std::string& origin) { return Decoder(origin).meta(s); }

Term deserialize_term(std::string_view text, const std::string& origin) {
  return term_from_sexpr(read_sexpr(text, origin), origin);
}
Type deserialize_type(std::string_view text, const std::string& origin) {
  return type_from_sexpr(read_sexpr(text, origin), origin);
}
Trail deserialize_trail(std::string_view text, const std::string& origin) {
  return trail_from_sexpr(read_sexpr(text, origin), origin);
}
Meta deserialize_meta(std::string_view text, const std::string& origin) {
  return meta_from_sexpr(read_sexpr(text, origin), origin);
}
lc::CTerm deserialize_cterm(std::string_view text, const std::string& origin) {
  return Decoder(origin).cterm(read_sexpr(text, origin));
}
lc::CType deserialize_ctype(std::string_view text, const std::string& origin) {
  return Decoder(origin).ctype(read_sexpr(text, origin));
}

// ---------------------------------------------------------------------------
// JSON tree export

namespace tree {

using nlohmann::json;

json of(const Row& r) { return {{"trail", of(r.trail)}, {"meta", of(r.meta)}, {"answer", of(r.answer)}}; }

json of(const Type& t) {
  if (t.is_nat()) return {{"con", "nat"}};
  if (t.is_bool()) return {{"con", "bool"}};
  const FunType& f = t.as_fun();
  return {{"con", "fun"}, {"dom", of(f.dom)}, {"cod", of(f.cod)}, {"initial", of(f.initial)}, {"final", of(f.final)}};
}

json of(const Kont& k) {
  return {{"con", "kont"}, {"arg", of(k.arg)}, {"trail", of(k.trail)}, {"meta", of(k.meta)}, {"result", of(k.result)}};
}

json of(const Trail& t) { return t.is_empty() ? json{{"con", "tnil"}} : of(t.as_kont()); }

json of(const Meta& m) {
  if (m.is_empty()) return {{"con", "mnil"}};
  const ConsMeta& c = m.as_cons();
  return {{"con", "mcons"}, {"kont", of(c.kont)}, {"trail", of(c.trail)}, {"rest", of(c.rest)}};
}

json of(const Term& t) {
  auto sub = [](const std::shared_ptr<const TermNode>& p) { return of(Term(p)); };
  return std::visit(
      overloaded{
          [](const Num& n) { return json{{"node", "num"}, {"value", n.value}}; },
          [](const BoolLit& b) { return json{{"node", "bool"}, {"value", b.value}}; },
          [](const Var& v) { return json{{"node", "var"}, {"name", v.name}}; },
          [&](const Lam& l) {
            return json{{"node", "lam"},
                        {"param", l.param},
                        {"annotation", l.annotation ? of(*l.annotation) : json(nullptr)},
                        {"body", sub(l.body)}};
          },
          [&](const App& a) { return json{{"node", "app"}, {"fn", sub(a.fn)}, {"arg", sub(a.arg)}}; },
          [&](const Add& a) {
            return json{{"node", "add"}, {"left", sub(a.lhs)}, {"right", sub(a.rhs)}};
          },
          [&](const IsZero& z) { return json{{"node", "is0"}, {"arg", sub(z.arg)}}; },
          [&](const If& i) {
            return json{{"node", "if"},
                        {"cond", sub(i.cond)},
                        {"then", sub(i.then_branch)},
                        {"else", sub(i.else_branch)}};
          },
          [&](const Capture& c) {
            json ann = nullptr;
            if (!c.annotation.empty()) {
              const OpAnnotation& a = c.annotation;
              ann = json::object();
              ann["k"] = a.k_type ? of(*a.k_type) : json(nullptr);
              ann["cont"] = a.body_cont ? of(*a.body_cont) : json(nullptr);
              ann["trail"] = a.body_trail ? of(*a.body_trail) : json(nullptr);
              ann["mid"] = a.mid_trail ? of(*a.mid_trail) : json(nullptr);
            }
            return json{{"node", std::string(keyword(c.op))},
                        {"binder", c.binder},
                        {"annotation", ann},
                        {"body", sub(c.body)}};
          },
          [&](const Reset& r) { return json{{"node", "reset"}, {"body", sub(r.body)}}; },
      },
      t.node().v);
}

json of(const lc::CType& t) {
  using namespace lc;
  return std::visit(overloaded{
                        [](const CNat&) { return json{{"con", "nat"}}; },
                        [](const CBool&) { return json{{"con", "bool"}}; },
                        [](const CUnit&) { return json{{"con", "unit"}}; },
                        [](const CFun& f) { return json{{"con", "fun"}, {"dom", of(f.dom)}, {"cod", of(f.cod)}}; },
                        [](const CProd& p) {
                          return json{{"con", "prod"}, {"left", of(p.left)}, {"right", of(p.right)}};
                        },
                    },
                    t.node().v);
}

json of(const lc::CTerm& t) {
  using namespace lc;
  auto sub = [](const CPtr& p) { return of(CTerm(p)); };
  return std::visit(
      overloaded{
          [](const CVar& v) { return json{{"node", "var"}, {"name", v.name}}; },
          [&](const CLam& l) {
            return json{{"node", "lam"}, {"param", l.param}, {"param_type", of(l.param_type)}, {"body", sub(l.body)}};
          },
          [&](const CApp& a) { return json{{"node", "app"}, {"fn", sub(a.fn)}, {"arg", sub(a.arg)}}; },
          [](const CNum& n) { return json{{"node", "num"}, {"value", n.value}}; },
          [](const CBoolLit& b) { return json{{"node", "bool"}, {"value", b.value}}; },
          [&](const CAdd& a) { return json{{"node", "add"}, {"left", sub(a.lhs)}, {"right", sub(a.rhs)}}; },
          [&](const CIsZero& z) { return json{{"node", "is0"}, {"arg", sub(z.arg)}}; },
          [&](const CIf& i) {
            return json{{"node", "if"}, {"cond", sub(i.cond)}, {"then", sub(i.then_branch)}, {"else", sub(i.else_branch)}};
          },
          [](const CUnitLit&) { return json{{"node", "unit"}}; },
          [&](const CPair& p) { return json{{"node", "pair"}, {"left", sub(p.left)}, {"right", sub(p.right)}}; },
          [&](const CCase& c) {
            json pat = c.pattern.nested ? json{{"k", c.pattern.k}, {"t", c.pattern.t}, {"m", c.pattern.m}}
                                        : json{{"var", c.pattern.var}};
            return json{{"node", "case"},
                        {"scrut", sub(c.scrut)},
                        {"result", of(c.result)},
                        {"unit_branch", sub(c.unit_branch)},
                        {"pattern", pat},
                        {"other_branch", sub(c.other_branch)}};
          },
      },
      t.node().v);
}

}  // namespace tree

std::string to_json_tree(const Term& t, int indent) { return tree::of(t).dump(indent); }
std::string to_json_tree(const Type& t, int indent) { return tree::of(t).dump(indent); }
std::string to_json_tree(const lc::CTerm& t, int indent) { return tree::of(t).dump(indent); }

}  // namespace lambdad
