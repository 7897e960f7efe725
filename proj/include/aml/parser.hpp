#pragma once

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aml/ast.hpp"

namespace aml {

struct ParseError : std::runtime_error {
  ParseError(std::uint32_t line, std::uint32_t col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what),
        line(line),
        col(col) {}
  std::uint32_t line, col;
};

namespace detail {

struct Token {
  enum class Kind {
    Ident,
    Int,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Comma,
    Dot,
    Eq,
    Plus,
    Question,
    End
  };
  Kind kind = Kind::End;
  std::string text;
  long value = 0;
  std::uint32_t line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  /// Leading `#pragma key=value` lines, consumed before tokenization.
  std::vector<Pragma> take_pragmas() {
    std::vector<Pragma> out;
    for (;;) {
      skip_ws_and_comments(/*stop_at_newline=*/false);
      if (!starts_with("#pragma")) break;
      Pragma p;
      p.span = {line_, col_, line_, col_};
      advance(7);
      skip_spaces();
      while (pos_ < src_.size() && (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
        p.key += src_[pos_], advance(1);
      skip_spaces();
      if (pos_ >= src_.size() || src_[pos_] != '=')
        throw ParseError(line_, col_, "expected '=' in pragma");
      advance(1);
      skip_spaces();
      while (pos_ < src_.size() && src_[pos_] != '\n' && !std::isspace((unsigned char)src_[pos_]))
        p.value += src_[pos_], advance(1);
      if (p.key.empty() || p.value.empty())
        throw ParseError(p.span.line, p.span.col, "malformed pragma");
      out.push_back(std::move(p));
    }
    return out;
  }

  Token next() {
    skip_ws_and_comments(false);
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    auto punct = [&](Token::Kind k) {
      t.kind = k;
      t.text = c;
      advance(1);
      return t;
    };
    switch (c) {
      case '{': return punct(Token::Kind::LBrace);
      case '}': return punct(Token::Kind::RBrace);
      case '(': return punct(Token::Kind::LParen);
      case ')': return punct(Token::Kind::RParen);
      case ':': return punct(Token::Kind::Colon);
      case ',': return punct(Token::Kind::Comma);
      case '.': return punct(Token::Kind::Dot);
      case '=': return punct(Token::Kind::Eq);
      case '+': return punct(Token::Kind::Plus);
      case '?': return punct(Token::Kind::Question);
      default: break;
    }
    if (std::isdigit((unsigned char)c)) {
      t.kind = Token::Kind::Int;
      while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_]))
        t.text += src_[pos_], advance(1);
      t.value = std::stol(t.text);
      return t;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      t.kind = Token::Kind::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
        t.text += src_[pos_], advance(1);
      return t;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1, col_ = 1;

  bool starts_with(std::string_view s) const {
    return src_.substr(pos_).starts_with(s);
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }
  void skip_spaces() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) advance(1);
  }
  void skip_ws_and_comments(bool) {
    for (;;) {
      while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) advance(1);
      if (starts_with("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
        continue;
      }
      break;
    }
  }
};

class Parser {
 public:
  explicit Parser(std::string_view src, bool allow_holes)
      : lexer_(src), allow_holes_(allow_holes) {
    prog_.pragmas = lexer_.take_pragmas();
    bump();
  }

  Program parse() {
    while (cur_.kind != Token::Kind::End) prog_.members.push_back(parse_member());
    prog_.max_node_id = next_id_ - 1;
    return std::move(prog_);
  }

 private:
  Lexer lexer_;
  bool allow_holes_;
  Token cur_;
  Program prog_;
  NodeId next_id_ = 1;

  NodeId fresh() { return next_id_++; }
  void bump() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& expected) {
    std::string got = cur_.kind == Token::Kind::End
                          ? "end of input"
                          : "'" + cur_.text + "'";
    throw ParseError(cur_.line, cur_.col, "expected " + expected + ", got " + got);
  }

  bool at_ident(std::string_view kw) const {
    return cur_.kind == Token::Kind::Ident && cur_.text == kw;
  }

  std::string expect_ident(const char* what) {
    if (cur_.kind != Token::Kind::Ident) fail(what);
    std::string name = cur_.text;
    bump();
    return name;
  }

  void expect(Token::Kind k, const char* what) {
    if (cur_.kind != k) fail(what);
    bump();
  }

  SourceSpan here() const { return {cur_.line, cur_.col, cur_.line, cur_.col}; }

  std::string parse_qname() {
    std::string q = expect_ident("module name");
    while (cur_.kind == Token::Kind::Dot) {
      bump();
      q += "." + expect_ident("module name after '.'");
    }
    return q;
  }

  Member parse_member() {
    if (at_ident("module")) return parse_module();
    if (at_ident("import")) {
      Import imp;
      imp.span = here();
      imp.id = fresh();
      bump();
      imp.qname = parse_qname();
      return imp;
    }
    if (at_ident("class")) return parse_class();
    fail("'module', 'import', or 'class'");
  }

  std::shared_ptr<const ModuleDef> parse_module() {
    auto mod = std::make_shared<ModuleDef>();
    mod->span = here();
    mod->id = fresh();
    bump();  // module
    mod->name = expect_ident("module name");
    expect(Token::Kind::LBrace, "'{'");
    while (cur_.kind != Token::Kind::RBrace) mod->members.push_back(parse_member());
    bump();  // }
    return mod;
  }

  std::shared_ptr<const ClassDef> parse_class() {
    auto cls = std::make_shared<ClassDef>();
    cls->span = here();
    cls->id = fresh();
    bump();  // class
    cls->name = expect_ident("class name");
    if (cur_.kind == Token::Kind::Colon) {
      ExtendsClause ext;
      ext.span = here();
      bump();
      if (at_ident("public"))
        ext.acc = ExtendsClause::Acc::Public;
      else if (at_ident("protected"))
        ext.acc = ExtendsClause::Acc::Protected;
      else if (at_ident("private"))
        ext.acc = ExtendsClause::Acc::Private;
      else
        fail("'public', 'protected', or 'private' extends modifier");
      bump();
      ext.super = expect_ident("superclass name");
      cls->extends = std::move(ext);
    }
    expect(Token::Kind::LBrace, "'{'");
    while (cur_.kind != Token::Kind::RBrace) {
      if (at_ident("class")) {
        cls->members.push_back(parse_class());
      } else {
        cls->members.push_back(parse_field());
      }
    }
    bump();  // }
    return cls;
  }

  std::vector<std::string> parse_arg_list() {
    expect(Token::Kind::LParen, "'('");
    std::vector<std::string> names;
    if (cur_.kind != Token::Kind::RParen) {
      names.push_back(parse_qname());
      while (cur_.kind == Token::Kind::Comma) {
        bump();
        names.push_back(parse_qname());
      }
    }
    expect(Token::Kind::RParen, "')'");
    return names;
  }

  AccKeyword parse_acc() {
    AccKeyword acc;
    if (cur_.kind == Token::Kind::Question) {
      if (!allow_holes_)
        throw ParseError(cur_.line, cur_.col, "modifier hole '?' not allowed here");
      acc.kind = AccKeyword::Kind::Hole;
      bump();
      return acc;
    }
    if (at_ident("public")) {
      acc.kind = AccKeyword::Kind::Public;
      bump();
      return acc;
    }
    if (at_ident("internal")) {
      acc.kind = AccKeyword::Kind::Internal;
      bump();
      acc.names = parse_arg_list();
      return acc;
    }
    if (at_ident("protected")) {
      bump();
      if (at_ident("internal")) {
        bump();
        acc.kind = AccKeyword::Kind::ProtectedInternal;
        acc.names = parse_arg_list();
      } else {
        acc.kind = AccKeyword::Kind::Protected;
      }
      return acc;
    }
    if (at_ident("private")) {
      bump();
      if (at_ident("protected")) {
        bump();
        acc.kind = AccKeyword::Kind::PrivateProtected;
        acc.names = parse_arg_list();
      } else {
        acc.kind = AccKeyword::Kind::Private;
      }
      return acc;
    }
    fail("access modifier");
  }

  ClassMember parse_field() {
    Field f;
    f.span = here();
    f.acc = parse_acc();
    f.id = fresh();
    if (!at_ident("var")) fail("'var'");
    bump();
    f.name = expect_ident("field name");
    expect(Token::Kind::Eq, "'='");
    f.init = parse_expr();
    return f;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_postfix();
    while (cur_.kind == Token::Kind::Plus) {
      auto add = std::make_shared<Expr>();
      add->span = here();
      add->id = fresh();
      add->kind = Expr::Kind::Add;
      bump();
      add->lhs = lhs;
      add->rhs = parse_postfix();
      lhs = add;
    }
    return lhs;
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_atom();
    while (cur_.kind == Token::Kind::Dot) {
      auto fa = std::make_shared<Expr>();
      fa->span = here();
      fa->id = fresh();
      fa->kind = Expr::Kind::FieldAccess;
      bump();
      fa->name = expect_ident("field name after '.'");
      fa->lhs = e;
      e = fa;
    }
    return e;
  }

  ExprPtr parse_atom() {
    auto e = std::make_shared<Expr>();
    e->span = here();
    if (cur_.kind == Token::Kind::Int) {
      e->id = fresh();
      e->kind = Expr::Kind::IntLit;
      e->value = cur_.value;
      bump();
      return e;
    }
    if (at_ident("new")) {
      e->id = fresh();
      e->kind = Expr::Kind::New;
      bump();
      e->name = expect_ident("class name after 'new'");
      expect(Token::Kind::LParen, "'('");
      expect(Token::Kind::RParen, "')'");
      return e;
    }
    if (cur_.kind == Token::Kind::Ident && cur_.text != "var" && cur_.text != "class") {
      e->id = fresh();
      e->kind = Expr::Kind::Ref;
      e->name = cur_.text;
      bump();
      return e;
    }
    fail("expression");
  }
};

}  // namespace detail

/// Parses AML source; holes (`?` modifiers) only when allow_holes is set.
inline Program parse_program(std::string_view text, bool allow_holes = false) {
  return detail::Parser(text, allow_holes).parse();
}

}  // namespace aml
