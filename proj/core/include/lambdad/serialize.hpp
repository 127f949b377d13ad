#pragma once

#include <string>
#include <string_view>

#include "lambdad/lambda_c.hpp"
#include "lambdad/sexpr.hpp"
#include "lambdad/term.hpp"
#include "lambdad/types.hpp"

// Canonical prefix form. deserialize(serialize(x)) == x for every AST.
//
//   term  ::= n | true | false | x | (lam x [(: fun)] term) | (app term term)
//           | (add term term) | (is0 term) | (if term term term)
//           | (OP k [(@ (k fun) (cont kont) (trail trail) (mid trail))] term)
//           | (reset term)                      OP ∈ shift control shift0 control0
//   type  ::= nat | bool | (fun type type trail meta type trail meta type)
//   trail ::= tnil | kont        kont ::= (kont type trail meta type)
//   meta  ::= mnil | (mcons kont trail meta)
//
//   cterm ::= x | n | true | false | unit | (lam x ctype cterm) | (app cterm cterm)
//           | (add ..) | (is0 ..) | (if ..) | (pair cterm cterm)
//           | (case cterm ctype cterm (x) cterm) | (case cterm ctype cterm ((k t) m) cterm)
//   ctype ::= nat | bool | unit | (-> ctype ctype) | (* ctype ctype)
namespace lambdad {

std::string serialize(const Term& t);
std::string serialize(const Type& t);
std::string serialize(const Trail& t);
std::string serialize(const Meta& t);
std::string serialize(const Kont& k);
std::string serialize(const lc::CTerm& t);
std::string serialize(const lc::CType& t);

SExpr to_sexpr(const Term& t);
SExpr to_sexpr(const Type& t);
SExpr to_sexpr(const Trail& t);
SExpr to_sexpr(const Meta& t);

// All throw ParseError (with position) on malformed text.
Term deserialize_term(std::string_view text, const std::string& origin = "<input>");
Type deserialize_type(std::string_view text, const std::string& origin = "<input>");
Trail deserialize_trail(std::string_view text, const std::string& origin = "<input>");
Meta deserialize_meta(std::string_view text, const std::string& origin = "<input>");
lc::CTerm deserialize_cterm(std::string_view text, const std::string& origin = "<input>");
lc::CType deserialize_ctype(std::string_view text, const std::string& origin = "<input>");

Term term_from_sexpr(const SExpr& s, const std::string& origin = "<input>");
Type type_from_sexpr(const SExpr& s, const std::string& origin = "<input>");
Trail trail_from_sexpr(const SExpr& s, const std::string& origin = "<input>");
Meta meta_from_sexpr(const SExpr& s, const std::string& origin = "<input>");

// Field-labelled JSON tree export (schema in docs/tree-schema.md).
std::string to_json_tree(const Term& t, int indent = 2);
std::string to_json_tree(const Type& t, int indent = 2);
std::string to_json_tree(const lc::CTerm& t, int indent = 2);

}  // namespace lambdad
