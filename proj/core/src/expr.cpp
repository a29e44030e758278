#include "krd/expr.hpp"

#include <cctype>
#include <string>

#include "krd/error.hpp"

namespace krd {

namespace {

constexpr unsigned kMaxExponent = 1000;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<Expr> parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static std::unique_ptr<Expr> make(Expr::Binary b) {
    return std::make_unique<Expr>(Expr{std::move(b)});
  }

  std::unique_ptr<Expr> expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make({'+', std::move(lhs), term()});
      else if (accept('-'))
        lhs = make({'-', std::move(lhs), term()});
      else
        return lhs;
    }
  }

  std::unique_ptr<Expr> term() {
    auto lhs = factor();
    while (accept('*')) lhs = make({'*', std::move(lhs), factor()});
    return lhs;
  }

  std::unique_ptr<Expr> factor() {
    if (accept('-')) return std::make_unique<Expr>(Expr{Expr::Negate{factor()}});
    auto base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      mpz_class e = nat();
      if (e > kMaxExponent) throw ParseError("exponent too large", at);
      return std::make_unique<Expr>(Expr{Expr::Power{std::move(base), static_cast<unsigned>(e.get_ui())}});
    }
    return base;
  }

  mpz_class nat() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::unique_ptr<Expr> atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = nat();
      mpz_class den = 1;
      if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        den = nat();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      return std::make_unique<Expr>(Expr{Expr::Literal{Rat(num, den)}});
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      auto v = var_from_char(c);
      const bool longer = pos_ + 1 < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_ + 1]));
      if (!v || longer) {
        std::size_t end = pos_;
        while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
        fail("unknown variable '" + std::string(text_.substr(pos_, end - pos_)) + "'");
      }
      ++pos_;
      return std::make_unique<Expr>(Expr{Expr::Variable{*v}});
    }
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<Expr> parse_expr(std::string_view text) { return Parser(text).parse(); }

MPoly evaluate(const Expr& e) {
  struct Visitor {
    MPoly operator()(const Expr::Literal& l) const { return MPoly(l.value); }
    MPoly operator()(const Expr::Variable& v) const { return MPoly::var(v.var); }
    MPoly operator()(const Expr::Binary& b) const {
      MPoly lhs = evaluate(*b.lhs), rhs = evaluate(*b.rhs);
      switch (b.op) {
        case '+':
          return lhs + rhs;
        case '-':
          return lhs - rhs;
        default:
          return lhs * rhs;
      }
    }
    MPoly operator()(const Expr::Negate& n) const { return -evaluate(*n.operand); }
    MPoly operator()(const Expr::Power& p) const { return evaluate(*p.base).pow(p.exponent); }
  };
  return std::visit(Visitor{}, e.node);
}

MPoly parse_poly(std::string_view text) { return evaluate(*parse_expr(text)); }

}  // namespace krd
