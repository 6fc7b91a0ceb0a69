#pragma once

// Exact coefficient arithmetic: rationals and Gaussian rationals.
//
// Rat wraps a GMP rational that is always kept canonical (reduced, positive
// denominator, zero as 0/1). GaussRat is a + b*i over Rat, with the
// conjugation a + b*i -> a - b*i.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "rpv/errors.hpp"

namespace rpv {

class Rat {
 public:
  Rat() : value_(0) {}
  Rat(long v) : value_(v) {}  // NOLINT: implicit from integers is intended
  Rat(int v) : value_(static_cast<long>(v)) {}
  Rat(long num, long den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rat(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  // Accepts "a" or "a/b" with optional sign.
  static Rat parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ParseError("bad rational '" + text + "'");
    if (q.get_den() == 0) throw DivisionByZero("rational with zero denominator");
    q.canonicalize();
    return Rat(std::move(q));
  }

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  Rat operator-() const { return Rat(mpq_class(-value_)); }
  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    value_ /= o.value_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  Rat inverse() const { return Rat(1) / *this; }
  Rat abs() const { return Rat(mpq_class(::abs(value_))); }

  Rat pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(mpq_class(n, d));
  }

  // Exact square root when this is the square of a rational.
  std::optional<Rat> sqrt() const {
    if (sign() < 0) return std::nullopt;
    if (!mpz_perfect_square_p(value_.get_num_mpz_t()) ||
        !mpz_perfect_square_p(value_.get_den_mpz_t())) {
      return std::nullopt;
    }
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), value_.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), value_.get_den_mpz_t());
    return Rat(mpq_class(n, d));
  }

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // Canonical text form: always "a/b".
  std::string str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }
  // Short form: "a" for integers, "a/b" otherwise.
  std::string short_str() const {
    return is_integer() ? value_.get_num().get_str() : str();
  }

 private:
  mpq_class value_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(Rat re) : re_(std::move(re)) {}  // NOLINT
  GaussRat(long re) : re_(re) {}            // NOLINT
  GaussRat(int re) : re_(re) {}             // NOLINT
  GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRat i() { return {Rat(0), Rat(1)}; }

  const Rat& re() const { return re_; }
  const Rat& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussRat conj() const { return {re_, -im_}; }
  Rat norm() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return {-re_, -im_}; }
  GaussRat& operator+=(const GaussRat& o) { re_ += o.re_; im_ += o.im_; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  GaussRat& operator*=(const GaussRat& o) {
    if (im_.is_zero() && o.im_.is_zero()) {
      re_ *= o.re_;
      return *this;
    }
    Rat r = re_ * o.re_ - im_ * o.im_;
    Rat m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw DivisionByZero("Gaussian rational division by zero");
    if (o.im_.is_zero()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rat n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

  GaussRat inverse() const { return GaussRat(1) / *this; }

  GaussRat pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussRat result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  // Exact square root in Q(i), if one exists.
  std::optional<GaussRat> sqrt() const {
    if (im_.is_zero()) {
      if (auto r = re_.sqrt()) return GaussRat(*r);
      if (auto r = (-re_).sqrt()) return GaussRat(Rat(0), *r);
      return std::nullopt;
    }
    // (x + yi)^2 = re + im i  =>  x^2 = (re + |z|)/2, y = im / (2x)
    auto modulus = norm().sqrt();
    if (!modulus) return std::nullopt;
    auto x = ((re_ + *modulus) / Rat(2)).sqrt();
    if (!x || x->is_zero()) return std::nullopt;
    Rat y = im_ / (Rat(2) * *x);
    return GaussRat(*x, y);
  }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  // Arbitrary but total order, used only for deterministic sorting.
  friend std::strong_ordering operator<=>(const GaussRat& a, const GaussRat& b) {
    if (auto c = a.re_ <=> b.re_; c != 0) return c;
    return a.im_ <=> b.im_;
  }

  // Canonical text: "a/b" when real, "(a/b+c/d*i)" / "(a/b-c/d*i)" otherwise.
  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string s = "(" + re_.str();
    s += im_.sign() < 0 ? "-" + (-im_).str() : "+" + im_.str();
    return s + "*i)";
  }

 private:
  Rat re_;
  Rat im_;
};

inline std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << z.str(); }

}  // namespace rpv
