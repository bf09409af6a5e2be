#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace certigate {

// Exact arbitrary-precision rational. Always kept in canonical lowest terms
// with a positive denominator. Canonical text form is "p/q"; parsing accepts
// "p/q" and plain decimal strings ("0.7", "-1.25", "3"), both exactly.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rational(long num, long den);

  static Rational from_string(std::string_view s);
  static Rational from_mpq(mpq_class q);

  // Canonical "p/q" (q > 0, lowest terms). Integers serialize as "n/1".
  std::string str() const;
  // Lossy, for human-readable transcripts only.
  double approx() const { return v_.get_d(); }

  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }
  Rational abs() const;

  // Largest dyadic k/2^bits <= *this, and smallest >= *this.
  Rational floor_scaled(unsigned bits) const;
  Rational ceil_scaled(unsigned bits) const;

  const mpq_class& raw() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return from_mpq(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return from_mpq(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return from_mpq(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return from_mpq(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

 private:
  mpq_class v_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace certigate
