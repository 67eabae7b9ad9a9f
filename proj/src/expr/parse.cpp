// Recursive-descent parser for the expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('+'|'-') unary | factor
//   factor := base ('^' ['-'] integer)?
//   base   := integer | 'x' | 'y'I'_'R | ident | '(' expr ')'

#include <cctype>
#include <string>

#include "odeinv/error.hpp"
#include "odeinv/expr/expr.hpp"

namespace odeinv {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx) : s_(text), ctx_(ctx) {}

  Expr run() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Expr term() {
    Expr acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_syntactic_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return factor();
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      bool neg = accept('-');
      skip_ws();
      std::size_t at = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected integer exponent", at);
      if (digits.size() > 6) throw ParseError("exponent too large", at);
      long e = std::stol(digits);
      if (neg) {
        if (b.is_syntactic_zero()) throw ParseError("zero raised to a negative power", at);
        e = -e;
      }
      return b.pow(e);
    }
    return b;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Expr base() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Expr(mpz_class(read_digits()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      return identifier(s_.substr(start, pos_ - start), start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr identifier(std::string_view name, std::size_t at) {
    if (name == "x") return Expr::x();
    if (looks_like_jet_syntax(name)) {
      auto us = name.find('_');
      std::string is(name.substr(1, us - 1));
      std::string rs(name.substr(us + 1));
      if (is.size() > 4 || rs.size() > 4) {
        throw ShapeError("jet index out of range: " + std::string(name) + " at position " +
                         std::to_string(at));
      }
      int i = std::stoi(is);
      int r = std::stoi(rs);
      if (i < 1 || i > ctx_.m || r > ctx_.max_order) {
        throw ShapeError("jet index out of range: " + std::string(name) + " (m=" +
                         std::to_string(ctx_.m) + ", max order " +
                         std::to_string(ctx_.max_order) + ") at position " + std::to_string(at));
      }
      return Expr::jet(i, r);
    }
    if (!ctx_.allow_aux) {
      throw ParseError("unknown identifier '" + std::string(name) + "'", at);
    }
    if (name.size() > VarId::kMaxAuxName) {
      throw ParseError("identifier too long '" + std::string(name) + "'", at);
    }
    return Expr::aux(name);
  }

  std::string_view s_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const ParseContext& ctx) { return Parser(text, ctx).run(); }

}  // namespace odeinv
