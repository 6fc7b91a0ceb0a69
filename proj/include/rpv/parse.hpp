#pragma once

// Reader for the canonical text form (and ordinary hand-written input):
// integers, rationals written with '/', the imaginary unit i, variables,
// + - * / ^ and parentheses. Division by a non-constant produces a fraction.

#include <cctype>
#include <string>
#include <string_view>

#include "rpv/ratfunc.hpp"

namespace rpv {

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, ContextPtr ctx) : s_(text), ctx_(std::move(ctx)), empty_rules_(ctx_, {}) {}

  RatFunc run() {
    RatFunc v = expr();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc constant(const GaussRat& c) const { return {poly_const(ctx_, c), poly_const(ctx_, GaussRat(1))}; }

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (accept('+')) {
        acc = rf_add(acc, term(), empty_rules_);
      } else if (accept('-')) {
        acc = rf_sub(acc, term(), empty_rules_);
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = rf_mul(acc, unary(), empty_rules_);
      } else if (accept('/')) {
        RatFunc d = unary();
        if (d.num.is_zero()) fail("division by zero");
        acc = rf_div(acc, d, empty_rules_);
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) {
      RatFunc v = unary();
      return {-v.num, v.den};
    }
    if (accept('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip_space();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    long e = std::stol(std::string(s_.substr(start, pos_ - start)));
    RatFunc result = constant(GaussRat(1));
    for (long k = 0; k < e; ++k) result = rf_mul(result, base, empty_rules_);
    if (negative) {
      if (result.num.is_zero()) fail("negative power of zero");
      result = rf_inv(result, empty_rules_);
    }
    return result;
  }

  RatFunc atom() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(GaussRat(Rat(mpq_class(std::string(s_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "i") return constant(GaussRat::i());
      if (!ctx_->index_of(name)) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return {poly_var(ctx_, name), poly_const(ctx_, GaussRat(1))};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  ContextPtr ctx_;
  RewriteSystem empty_rules_;
};

}  // namespace detail

inline RatFunc parse_ratfunc(std::string_view text, const ContextPtr& ctx) {
  return detail::ExprParser(text, ctx).run();
}

// Parses a polynomial; division is allowed only by nonzero constants.
inline Poly parse_poly(std::string_view text, const ContextPtr& ctx) {
  RatFunc f = parse_ratfunc(text, ctx);
  if (!f.den.is_constant()) throw ParseError("expected a polynomial: \"" + std::string(text) + "\"");
  return f.num.scaled(f.den.leading().coeff.inverse());
}

}  // namespace rpv
