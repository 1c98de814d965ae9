#include "antirb/scalar.hpp"

#include <cctype>

#include "antirb/errors.hpp"

namespace antirb {

Rational::Rational(std::int64_t n) {
  // mpq_class has no int64 constructor on every platform; go through mpz.
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(n));
  value_ = mpq_class(z);
}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero();
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

bool Rational::is_canonical() const {
  if (value_.get_den() <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return g == 1;
}

Rational Rational::inv() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(mpq_class(1 / value_));
}

std::string Rational::to_string() const {
  std::string out = value_.get_num().get_str();
  if (value_.get_den() != 1) {
    out += '/';
    out += value_.get_den().get_str();
  }
  return out;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ * b.re_);
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero();
  const Rational norm = re_ * re_ + im_ * im_;
  const Rational s = norm.inv();
  return {re_ * s, -(im_ * s)};
}

std::string Scalar::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  if (re_.is_zero()) return im_.to_string() + "i";
  std::string out = re_.to_string();
  if (im_.sign() < 0) {
    out += '-';
    out += (-im_).to_string();
  } else {
    out += '+';
    out += im_.to_string();
  }
  out += 'i';
  return out;
}

Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar neg(const Scalar& a) { return -a; }
Scalar inv(const Scalar& a) { return a.inv(); }

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Scalar parse() {
    if (text_.empty()) throw ParseError("empty scalar", 0);
    Rational first = rat();
    if (at_end()) return Scalar(first);
    if (peek() == 'i') {
      ++pos_;
      expect_end();
      return {Rational(0), first};
    }
    if (peek() != '+' && peek() != '-') {
      throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    }
    const bool negate = peek() == '-';
    ++pos_;
    Rational second = rat();
    if (at_end() || peek() != 'i') throw ParseError("expected 'i'", pos_);
    ++pos_;
    expect_end();
    return {first, negate ? -second : second};
  }

  Rational parse_rat_only() {
    if (text_.empty()) throw ParseError("empty rational", 0);
    Rational r = rat();
    expect_end();
    return r;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void expect_end() const {
    if (!at_end()) {
      throw ParseError(std::string("trailing character '") + peek() + "'", pos_);
    }
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) throw ParseError("expected digit", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational rat() {
    bool negative = false;
    if (!at_end() && peek() == '-') {
      negative = true;
      ++pos_;
    }
    mpz_class num(digits(), 10);
    mpz_class den(1);
    if (!at_end() && peek() == '/') {
      ++pos_;
      const std::size_t den_pos = pos_;
      den = mpz_class(digits(), 10);
      if (den == 0) throw ParseError("zero denominator", den_pos);
    }
    if (negative) num = -num;
    return Rational(num, den);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) { return ScalarParser(text).parse(); }

Rational parse_rational(std::string_view text) {
  return ScalarParser(text).parse_rat_only();
}

std::string format_scalar(const Scalar& a) { return a.to_string(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}
std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace antirb
