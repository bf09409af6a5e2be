#include "certigate/rational.hpp"

#include <cctype>

#include "certigate/errors.hpp"

namespace certigate {

Rational::Rational(long num, long den) {
  if (den == 0) throw ParseError("rational denominator must be nonzero");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::from_mpq(mpq_class q) {
  Rational r;
  r.v_ = std::move(q);
  return r;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw ParseError("division by zero rational");
  return Rational::from_mpq(a.v_ / b.v_);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational parse_fraction(std::string_view s) {
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), std::string(s).c_str(), 10) != 0)
    throw ParseError("malformed rational '" + std::string(s) + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw ParseError("zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return Rational::from_mpq(std::move(q));
}

Rational parse_decimal(std::string_view s) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view int_part = body, frac_part;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    int_part = body.substr(0, dot);
    frac_part = body.substr(dot + 1);
    if (frac_part.find('.') != std::string_view::npos)
      throw ParseError("malformed decimal '" + std::string(s) + "'");
  }
  if (int_part.empty() && frac_part.empty())
    throw ParseError("empty numeric literal '" + std::string(s) + "'");
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part)))
    throw ParseError("malformed decimal '" + std::string(s) + "'");

  std::string digits;
  digits.reserve(int_part.size() + frac_part.size());
  digits.append(int_part);
  digits.append(frac_part);
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class den = 1;
  for (size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  if (negative) q = -q;
  return Rational::from_mpq(std::move(q));
}

}  // namespace

Rational Rational::from_string(std::string_view s) {
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.find('/') != std::string_view::npos) return parse_fraction(s);
  return parse_decimal(s);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::abs() const { return from_mpq(::abs(v_)); }

Rational Rational::floor_scaled(unsigned bits) const {
  mpz_class scaled_num = v_.get_num() << bits;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), v_.get_den().get_mpz_t());
  mpq_class r(q, mpz_class(1) << bits);
  r.canonicalize();
  return from_mpq(std::move(r));
}

Rational Rational::ceil_scaled(unsigned bits) const {
  mpz_class scaled_num = v_.get_num() << bits;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), v_.get_den().get_mpz_t());
  mpq_class r(q, mpz_class(1) << bits);
  r.canonicalize();
  return from_mpq(std::move(r));
}

}  // namespace certigate
