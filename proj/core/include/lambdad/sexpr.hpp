#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lambdad {

// A parsed s-expression node with its source position.
struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int col = 1;

  static SExpr make_atom(std::string a) {
    SExpr s;
    s.atom = std::move(a);
    return s;
  }
  static SExpr make_list(std::vector<SExpr> items) {
    SExpr s;
    s.is_atom = false;
    s.items = std::move(items);
    return s;
  }

  bool is(std::string_view a) const { return is_atom && atom == a; }
  // True for a list whose first item is the atom `head`.
  bool headed(std::string_view head) const {
    return !is_atom && !items.empty() && items.front().is(head);
  }
};

// Reads exactly one s-expression; trailing text other than whitespace is an error.
// Throws ParseError.
SExpr read_sexpr(std::string_view text, const std::string& origin = "<input>");

std::string write_sexpr(const SExpr& s);

}  // namespace lambdad
