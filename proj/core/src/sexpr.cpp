#include "lambdad/sexpr.hpp"

#include <cctype>

#include "lambdad/errors.hpp"

namespace lambdad {

namespace {

class Reader {
 public:
  Reader(std::string_view text, const std::string& origin) : text_(text), origin_(origin) {}

  SExpr read_top() {
    skip_ws();
    SExpr s = read();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected text after expression", {"end of input"});
    return s;
  }

 private:
  std::string_view text_;
  const std::string& origin_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) {
    throw ParseError(origin_, line_, col_, msg, std::move(expected));
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;  // count code points, not UTF-8 continuation bytes
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    if (pos_ >= text_.size()) fail("unexpected end of input", {"atom", "'('"});
    int line = line_, col = col_;
    char c = text_[pos_];
    if (c == ')') fail("unexpected ')'", {"atom", "'('"});
    if (c == '(') {
      advance();
      std::vector<SExpr> items;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input", {"')'"});
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        items.push_back(read());
      }
      SExpr s = SExpr::make_list(std::move(items));
      s.line = line;
      s.col = col;
      return s;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      advance();
    }
    SExpr s = SExpr::make_atom(std::string(text_.substr(start, pos_ - start)));
    s.line = line;
    s.col = col;
    return s;
  }
};

}  // namespace

SExpr read_sexpr(std::string_view text, const std::string& origin) {
  return Reader(text, origin).read_top();
}

std::string write_sexpr(const SExpr& s) {
  if (s.is_atom) return s.atom;
  std::string out = "(";
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ' ';
    out += write_sexpr(s.items[i]);
  }
  return out + ")";
}

}  // namespace lambdad
