#include "lambdad/parser.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "lambdad/errors.hpp"

namespace lambdad {

namespace {

enum class Tok {
  Ident,
  Number,
  Keyword,  // reserved words, stored in text
  Sym,      // punctuation, stored in text
  Bullet,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& origin) : src_(src), origin_(origin) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t{Tok::End, "", line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (std::isdigit(c)) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          t.text += src_[pos_];
          advance();
        }
        t.kind = Tok::Number;
      } else if (std::isalpha(c) || c == '_') {
        while (pos_ < src_.size()) {
          unsigned char d = static_cast<unsigned char>(src_[pos_]);
          if (!(std::isalnum(d) || d == '_' || d == '\'')) break;
          t.text += src_[pos_];
          advance();
        }
        t.kind = is_identifier(t.text) ? Tok::Ident : Tok::Keyword;
      } else if (src_.substr(pos_, 3) == "\xE2\x80\xA2") {  // •
        pos_ += 3;
        ++col_;
        t.kind = Tok::Bullet;
        t.text = "•";
      } else if (src_.substr(pos_, 2) == "->" || src_.substr(pos_, 2) == "::") {
        t.kind = Tok::Sym;
        t.text = std::string(src_.substr(pos_, 2));
        advance();
        advance();
      } else if (std::string_view("(){}[]<>,:+@*.").find(static_cast<char>(c)) != std::string_view::npos) {
        t.kind = c == '.' ? Tok::Bullet : Tok::Sym;
        t.text = c == '.' ? "•" : std::string(1, static_cast<char>(c));
        advance();
      } else {
        throw ParseError(origin_, line_, col_, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  std::string_view src_;
  const std::string& origin_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Number: return "numeral " + t.text;
    case Tok::Ident: return "identifier '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  Parser(std::string_view src, std::string origin) : origin_(std::move(origin)) {
    toks_ = Lexer(src, origin_).run();
  }

  Term whole_term() {
    Term t = expr();
    expect_end();
    return t;
  }
  Type whole_type() {
    Type t = type();
    expect_end();
    return t;
  }
  Trail whole_trail() {
    Trail t = trail();
    expect_end();
    return t;
  }
  Meta whole_meta() {
    Meta m = meta();
    expect_end();
    return m;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::string origin_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at_sym(std::string_view s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool at_kw(std::string_view s) const { return peek().kind == Tok::Keyword && peek().text == s; }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what = "") {
    const Token& t = peek();
    throw ParseError(origin_, t.line, t.col, what.empty() ? "unexpected " + describe(t) : what,
                     std::move(expected));
  }

  void expect_sym(std::string_view s) {
    if (!at_sym(s)) fail({"'" + std::string(s) + "'"});
    ++i_;
  }
  void expect_kw(std::string_view s) {
    if (!at_kw(s)) fail({"'" + std::string(s) + "'"});
    ++i_;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

  std::string ident() {
    if (peek().kind != Tok::Ident) fail({"identifier"});
    return toks_[i_++].text;
  }

  // Tokens that can start an atom.
  bool at_atom_start() const {
    const Token& t = peek();
    if (t.kind == Tok::Number || t.kind == Tok::Ident) return true;
    if (t.kind == Tok::Keyword) return t.text == "true" || t.text == "false" || t.text == "reset";
    return t.kind == Tok::Sym && t.text == "(";
  }

  bool at_binder() const {
    if (peek().kind != Tok::Keyword) return false;
    const std::string& k = peek().text;
    return k == "fun" || k == "if0" || k == "shift" || k == "control" || k == "shift0" ||
           k == "control0";
  }

  Term expr() {
    if (at_binder()) return binder();
    return sum();
  }

  Term binder() {
    const std::string kw = toks_[i_++].text;
    if (kw == "fun") {
      std::string x = ident();
      std::optional<Type> ann;
      if (at_sym(":")) {
        ++i_;
        ann = type();
        if (!ann->is_fun()) fail({"function type"}, "a lambda annotation must be a function type");
      }
      expect_sym("->");
      return Term::lam(std::move(x), expr(), std::move(ann));
    }
    if (kw == "if0") {
      Term c = expr();
      expect_kw("then");
      Term a = expr();
      expect_kw("else");
      Term b = expr();
      return Term::if_(std::move(c), std::move(a), std::move(b));
    }
    ControlOp op = kw == "shift"     ? ControlOp::Shift
                   : kw == "control" ? ControlOp::Control
                   : kw == "shift0"  ? ControlOp::Shift0
                                     : ControlOp::Control0;
    std::string k = ident();
    OpAnnotation ann;
    if (at_sym("@")) {
      ++i_;
      ann = op_annotation();
    }
    expect_sym("->");
    return Term::capture(op, std::move(k), expr(), std::move(ann));
  }

  OpAnnotation op_annotation() {
    OpAnnotation a;
    expect_sym("{");
    for (bool first = true; !at_sym("}"); first = false) {
      if (!first) expect_sym(",");
      const Token& key = peek();
      std::string name = key.text;
      if (key.kind != Tok::Ident && key.kind != Tok::Keyword) fail({"k", "cont", "trail", "mid"});
      ++i_;
      expect_sym(":");
      if (name == "k" && !a.k_type) {
        a.k_type = type();
      } else if (name == "cont" && !a.body_cont) {
        a.body_cont = kont();
      } else if (name == "trail" && !a.body_trail) {
        a.body_trail = trail();
      } else if (name == "mid" && !a.mid_trail) {
        a.mid_trail = trail();
      } else {
        --i_;
        --i_;
        fail({"k", "cont", "trail", "mid"}, "unknown or repeated annotation field '" + name + "'");
      }
    }
    ++i_;
    return a;
  }

  Term sum() {
    Term t = app();
    while (at_sym("+")) {
      ++i_;
      Term rhs = at_binder() ? binder() : app();
      t = Term::add(std::move(t), std::move(rhs));
    }
    return t;
  }

  Term app() {
    if (at_kw("is0")) {
      ++i_;
      return Term::is_zero(app());
    }
    if (!at_atom_start()) fail({"term"});
    Term t = atom();
    while (at_atom_start()) t = Term::app(std::move(t), atom());
    return t;
  }

  Term atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      std::int64_t v = 0;
      auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (r.ec != std::errc{}) fail({}, "numeral out of range");
      ++i_;
      return Term::num(v);
    }
    if (t.kind == Tok::Ident) {
      ++i_;
      return Term::var(t.text);
    }
    if (at_kw("true") || at_kw("false")) {
      ++i_;
      return Term::boolean(t.text == "true");
    }
    if (at_kw("reset")) {
      ++i_;
      expect_sym("{");
      Term body = expr();
      expect_sym("}");
      return Term::reset(std::move(body));
    }
    expect_sym("(");
    Term inner = expr();
    expect_sym(")");
    return inner;
  }

  // ---- types

  Type type() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && t.text == "Nat") {
      ++i_;
      return Type::nat();
    }
    if (t.kind == Tok::Ident && t.text == "Bool") {
      ++i_;
      return Type::boolean();
    }
    if (at_sym("(")) {
      ++i_;
      Type dom = type();
      expect_sym("->");
      Type cod = type();
      expect_sym(")");
      Row a = row();
      Row b = row();
      return make_fun(std::move(dom), std::move(cod), std::move(a), std::move(b));
    }
    if (t.kind == Tok::Bullet || at_sym("[")) fail({"value type"}, "sort error: expected a value type, found a trail type");
    fail({"Nat", "Bool", "'('"});
  }

  Row row() {
    expect_sym("<");
    Trail mu = trail();
    expect_sym(",");
    Meta sigma = meta();
    expect_sym(">");
    Type ans = type();
    return Row{std::move(mu), std::move(sigma), std::move(ans)};
  }

  Kont kont() {
    expect_sym("[");
    Type a = type();
    expect_sym("<");
    Trail mu = trail();
    expect_sym(",");
    Meta sigma = meta();
    expect_sym(">");
    Type r = type();
    expect_sym("]");
    return make_kont(std::move(a), std::move(mu), std::move(sigma), std::move(r));
  }

  Trail trail() {
    if (peek().kind == Tok::Bullet) {
      ++i_;
      return Trail::empty();
    }
    if (at_sym("[")) return Trail::kont(kont());
    if (at_sym("(")) fail({"trail type"}, "sort error: expected a trail type, found a meta-continuation type");
    fail({"'•'", "'['"});
  }

  Meta meta() {
    if (peek().kind == Tok::Bullet) {
      ++i_;
      return Meta::empty();
    }
    if (at_sym("[")) fail({"meta-continuation type"}, "sort error: expected a meta-continuation type, found a trail type");
    expect_sym("(");
    bool outer = at_sym("(");
    if (outer) ++i_;
    Kont k = kont();
    expect_sym("*");
    Trail mu = trail();
    expect_sym(")");
    expect_sym("::");
    Meta rest = meta();
    if (outer) expect_sym(")");
    return Meta::cons(k, std::move(mu), std::move(rest));
  }
};

}  // namespace

Term parse_term(const SourceProgram& src) { return Parser(src.text, src.origin).whole_term(); }
Term parse_term(std::string_view text) { return Parser(text, "<input>").whole_term(); }

Type parse_type(std::string_view text, const std::string& origin) {
  return Parser(text, origin).whole_type();
}
Trail parse_trail(std::string_view text, const std::string& origin) {
  return Parser(text, origin).whole_trail();
}
Meta parse_meta(std::string_view text, const std::string& origin) {
  return Parser(text, origin).whole_meta();
}

}  // namespace lambdad
