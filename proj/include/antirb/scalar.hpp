#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace antirb {

/// Exact rational number in canonical form: denominator > 0 and
/// gcd(|numerator|, denominator) == 1; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& value() const noexcept { return value_; }

  bool is_zero() const noexcept { return sgn(value_) == 0; }
  int sign() const noexcept { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  /// True iff denominator > 0 and the fraction is reduced.
  bool is_canonical() const;

  Rational inv() const;

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.value_ + b.value_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.value_ - b.value_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.value_ * b.value_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return a * b.inv();
  }
  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "n" for integers, otherwise "n/d".
  std::string to_string() const;

 private:
  mpq_class value_{0};
};

/// Element of the Gaussian rationals Q(i). This is the scalar field for every
/// computation in the library; there is no floating-point path.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return {Rational(0), Rational(1)}; }
  static Scalar ratio(std::int64_t num, std::int64_t den) {
    return Scalar(Rational(num, den));
  }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }

  /// Throws DivisionByZero for zero.
  Scalar inv() const;
  Scalar conj() const { return {re_, -im_}; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
  Scalar operator-() const { return {-re_, -im_}; }
  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) = default;
  /// Lexicographic (re, im) order; only for containers, not a field order.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (auto c = a.re_ <=> b.re_; c != 0) return c;
    return a.im_ <=> b.im_;
  }

  std::string to_string() const;

 private:
  Rational re_;
  Rational im_;
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar neg(const Scalar& a);
Scalar inv(const Scalar& a);

/// Grammar: rat := '-'? digits ('/' digits)?
///          scalar := rat | rat ('+'|'-') rat 'i' | rat 'i'
/// No whitespace. Throws ParseError with the offending byte offset.
Scalar parse_scalar(std::string_view text);
Rational parse_rational(std::string_view text);
std::string format_scalar(const Scalar& a);

std::ostream& operator<<(std::ostream& os, const Rational& r);
std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace antirb
