// Copyright 2026 The costcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "costcert/error.h"
#include "costcert/target_syntax.h"

namespace costcert::target {
namespace {

constexpr std::string_view kKeywords[] = {
    "if", "then", "else", "case", "fold", "of",  "nil",
    "true", "false", "def", "int", "bool",
};

enum class Tok {
  kInt,     // unsigned magnitude; sign handled by the parser
  kIdent,
  kKeyword,
  kSymbol,  // \ : . ( ) [ ] , :: + - * < <= = -> ;
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t magnitude = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t{Tok::kEnd, "", 0, line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_int(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_' || text_[pos_] == '\'')) {
          advance();
        }
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = is_reserved(t.text) ? Tok::kKeyword : Tok::kIdent;
      } else {
        lex_symbol(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      } else if (at("--")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  void lex_int(Token& t) {
    // Magnitudes up to 2^63 are accepted so that the most negative int64
    // literal can be written; the parser rejects 2^63 without a sign.
    constexpr std::uint64_t kLimit =
        static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) +
        1;
    std::uint64_t v = 0;
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (kLimit - d) / 10) {
        throw ParseError("integer literal out of 64-bit range", t.line,
                         t.column);
      }
      v = v * 10 + d;
      advance();
    }
    t.kind = Tok::kInt;
    t.magnitude = v;
    t.text = std::string(text_.substr(start, pos_ - start));
  }

  void lex_symbol(Token& t) {
    static constexpr std::string_view kTwo[] = {"::", "<=", "->"};
    for (auto s : kTwo) {
      if (at(s)) {
        t.kind = Tok::kSymbol;
        t.text = std::string(s);
        advance();
        advance();
        return;
      }
    }
    char c = text_[pos_];
    if (std::string_view("\\:.()[],+-*<=;").find(c) == std::string_view::npos) {
      throw ParseError(std::string("unexpected character `") + c + "`",
                       t.line, t.column);
    }
    t.kind = Tok::kSymbol;
    t.text = std::string(1, c);
    advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  TargetExpr program(bool allow_defs) {
    std::map<std::string, TargetExpr> defs;
    while (allow_defs && is_keyword("def")) {
      next();
      std::string name = identifier("definition name");
      expect("=");
      TargetExpr body = substitute(expr(), defs);
      expect(";");
      defs[name] = body;
    }
    TargetExpr e = substitute(expr(), defs);
    if (peek().kind != Tok::kEnd) fail("unexpected `" + peek().text + "`");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.column);
  }

  bool is_symbol(std::string_view s) const {
    return peek().kind == Tok::kSymbol && peek().text == s;
  }
  bool is_keyword(std::string_view s) const {
    return peek().kind == Tok::kKeyword && peek().text == s;
  }

  void expect(std::string_view s) {
    if (!(is_symbol(s) || is_keyword(s))) {
      fail("expected `" + std::string(s) + "`, found " + describe(peek()));
    }
    next();
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::kEnd ? "end of input" : "`" + t.text + "`";
  }

  std::string identifier(const char* what) {
    if (peek().kind == Tok::kKeyword) {
      fail("reserved word `" + peek().text + "` cannot be used as " + what);
    }
    if (peek().kind != Tok::kIdent) {
      fail(std::string("expected ") + what + ", found " + describe(peek()));
    }
    return next().text;
  }

  std::vector<std::string> binders(std::size_t count) {
    expect("[");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) expect(",");
      std::size_t at = pos_;
      names.push_back(identifier("a binder"));
      for (std::size_t j = 0; j < i; ++j) {
        if (names[j] == names[i]) {
          throw ParseError("duplicate binder `" + names[i] + "`",
                           toks_[at].line, toks_[at].column);
        }
      }
    }
    expect("]");
    return names;
  }

  TargetTy type() {
    TargetTy dom = type_atom();
    if (is_symbol("->")) {
      next();
      return TargetTy::Arrow(dom, type());
    }
    return dom;
  }

  TargetTy type_atom() {
    if (is_symbol("(")) {
      next();
      TargetTy t = type();
      expect(")");
      return t;
    }
    if (is_keyword("bool")) {
      next();
      return TargetTy::Bool();
    }
    if (is_keyword("int")) {
      next();
      if (is_symbol("*")) {
        next();
        return TargetTy::IntList();
      }
      return TargetTy::Int();
    }
    fail("expected a type, found " + describe(peek()));
  }

  TargetExpr expr() {
    if (is_symbol("\\")) {
      next();
      std::string x = identifier("a lambda binder");
      if (!is_symbol(":")) fail("lambda binder `" + x + "` needs a type annotation");
      next();
      TargetTy ty = type();
      expect(".");
      return lam(x, ty, expr());
    }
    if (is_keyword("if")) {
      next();
      TargetExpr test = expr();
      expect("then");
      TargetExpr a = expr();
      expect("else");
      return if_(test, a, expr());
    }
    if (is_keyword("case") || is_keyword("fold")) {
      bool is_fold = peek().text == "fold";
      next();
      TargetExpr scrutinee = expr();
      expect("of");
      expect("(");
      TargetExpr nil_branch = expr();
      expect(",");
      auto names = binders(is_fold ? 3 : 2);
      TargetExpr body = expr();
      expect(")");
      if (is_fold) {
        return fold(scrutinee, nil_branch, names[0], names[1], names[2], body);
      }
      return case_(scrutinee, nil_branch, names[0], names[1], body);
    }
    return relation();
  }

  TargetExpr relation() {
    TargetExpr lhs = cons_expr();
    static const std::pair<std::string_view, RelOp> kOps[] = {
        {"<", RelOp::kLt}, {"<=", RelOp::kLe}, {"=", RelOp::kEq}};
    for (auto [sym, op] : kOps) {
      if (is_symbol(sym)) {
        next();
        TargetExpr r = rel(op, lhs, cons_expr());
        for (auto [s2, _] : kOps) {
          if (is_symbol(s2)) fail("relations do not associate; add parentheses");
        }
        return r;
      }
    }
    return lhs;
  }

  TargetExpr cons_expr() {
    TargetExpr head = additive();
    if (is_symbol("::")) {
      next();
      return cons(head, cons_expr());
    }
    return head;
  }

  TargetExpr additive() {
    TargetExpr lhs = multiplicative();
    while (is_symbol("+") || is_symbol("-")) {
      ArithOp op = next().text == "+" ? ArithOp::kAdd : ArithOp::kSub;
      lhs = arith(op, lhs, multiplicative());
    }
    return lhs;
  }

  TargetExpr multiplicative() {
    TargetExpr lhs = application();
    while (is_symbol("*")) {
      next();
      lhs = arith(ArithOp::kMul, lhs, application());
    }
    return lhs;
  }

  bool starts_argument() const {
    const Token& t = peek();
    if (t.kind == Tok::kInt || t.kind == Tok::kIdent) return true;
    if (t.kind == Tok::kKeyword) {
      return t.text == "nil" || t.text == "true" || t.text == "false";
    }
    return t.kind == Tok::kSymbol && (t.text == "(" || t.text == "[");
  }

  TargetExpr application() {
    TargetExpr fn = atom(/*allow_sign=*/true);
    while (starts_argument()) fn = app(fn, atom(/*allow_sign=*/false));
    return fn;
  }

  TargetExpr integer(bool negative) {
    constexpr std::uint64_t kMaxPositive =
        static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    std::uint64_t m = peek().magnitude;
    if (!negative && m > kMaxPositive) fail("integer literal out of 64-bit range");
    next();
    if (!negative) return int_const(static_cast<std::int64_t>(m));
    if (m == kMaxPositive + 1) {
      return int_const(std::numeric_limits<std::int64_t>::min());
    }
    return int_const(-static_cast<std::int64_t>(m));
  }

  TargetExpr atom(bool allow_sign) {
    const Token& t = peek();
    if (allow_sign && is_symbol("-") && toks_[pos_ + 1].kind == Tok::kInt) {
      next();
      return integer(/*negative=*/true);
    }
    switch (t.kind) {
      case Tok::kInt:
        return integer(/*negative=*/false);
      case Tok::kIdent:
        return var(next().text);
      case Tok::kKeyword:
        if (t.text == "nil") {
          next();
          return nil();
        }
        if (t.text == "true" || t.text == "false") {
          bool v = next().text == "true";
          return bool_const(v);
        }
        fail("reserved word `" + t.text + "` cannot start an operand");
      case Tok::kSymbol:
        if (t.text == "(") {
          next();
          TargetExpr e = expr();
          expect(")");
          return e;
        }
        if (t.text == "[") return list();
        break;
      case Tok::kEnd:
        break;
    }
    fail("expected an expression, found " + describe(t));
  }

  // [a, b, c] is sugar for a :: b :: c :: nil.
  TargetExpr list() {
    expect("[");
    std::vector<TargetExpr> elems;
    if (!is_symbol("]")) {
      elems.push_back(expr());
      while (is_symbol(",")) {
        next();
        elems.push_back(expr());
      }
    }
    expect("]");
    TargetExpr out = nil();
    for (auto it = elems.rbegin(); it != elems.rend(); ++it) out = cons(*it, out);
    return out;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_reserved(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

TargetExpr parse(std::string_view text) {
  return Parser(Lexer(text).run()).program(/*allow_defs=*/false);
}

TargetExpr parse_program(std::string_view text) {
  return Parser(Lexer(text).run()).program(/*allow_defs=*/true);
}

}  // namespace costcert::target
