#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace symlie {

/// Raised on bad input: malformed words, context mismatches, invalid graphs.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation would exceed the configured dimension cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rational scalar: lowest terms, positive denominator, zero is 0/1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose
  Rational(long num, long den) {
    if (den == 0) throw ValidationError("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpz_class& z) : v_(z) {}
  explicit Rational(mpq_class q) : v_(std::move(q)) {
    if (v_.get_den() == 0) throw ValidationError("Rational: zero denominator");
    v_.canonicalize();
  }

  /// Accepts "p", "p/q" and a leading ASCII or U+2212 minus.
  static Rational parse(std::string s);

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_str();
  }

  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ValidationError("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

inline Rational Rational::parse(std::string s) {
  // U+2212 (e2 88 92) -> '-'
  if (s.size() >= 3 && (unsigned char)s[0] == 0xe2 && (unsigned char)s[1] == 0x88 &&
      (unsigned char)s[2] == 0x92) {
    s = "-" + s.substr(3);
  }
  if (s.empty()) throw ValidationError("Rational: empty string");
  try {
    mpq_class q(s);
    if (q.get_den() == 0) throw ValidationError("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  } catch (const std::invalid_argument&) {
    throw ValidationError("Rational: cannot parse '" + s + "'");
  }
}

}  // namespace symlie
