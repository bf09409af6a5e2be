#include <mpfr.h>

#include "certigate/errors.hpp"
#include "certigate/network.hpp"

// Directed-rounding enclosures for the monotone activations.
//
// sigmoid is evaluated as (1 + tanh(x/2)) / 2: the halvings are exact in
// binary floating point and tanh is correctly rounded by MPFR, so chaining
// MPFR_RNDD (resp. RNDU) through the monotone steps yields a true lower
// (resp. upper) bound. The final mpfr_get_z with the same rounding snaps the
// bound outward onto the dyadic grid k/2^bits.

namespace certigate {

namespace {

constexpr unsigned kGuardBits = 48;

Rational directed_dyadic(MonotoneFn fn, unsigned bits, const Rational& x, mpfr_rnd_t dir) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits) + kGuardBits;
  mpfr_t t;
  mpfr_init2(t, prec);

  if (fn == MonotoneFn::Tanh) {
    mpfr_set_q(t, x.raw().get_mpq_t(), dir);
    mpfr_tanh(t, t, dir);
  } else {
    mpq_class half_x = x.raw() / 2;
    mpfr_set_q(t, half_x.get_mpq_t(), dir);
    mpfr_tanh(t, t, dir);
    mpfr_add_ui(t, t, 1, dir);
    mpfr_div_2ui(t, t, 1, dir);  // exact
  }

  mpfr_mul_2ui(t, t, bits, dir);  // exact scale by 2^bits
  mpz_class numerator;
  mpfr_get_z(numerator.get_mpz_t(), t, dir);
  mpfr_clear(t);

  mpq_class q(numerator, mpz_class(1) << bits);
  q.canonicalize();
  return Rational::from_mpq(std::move(q));
}

}  // namespace

Rational monotone_lower(MonotoneFn fn, unsigned bits, const Rational& x) {
  return directed_dyadic(fn, bits, x, MPFR_RNDD);
}

Rational monotone_upper(MonotoneFn fn, unsigned bits, const Rational& x) {
  return directed_dyadic(fn, bits, x, MPFR_RNDU);
}

Interval monotone_enclosure(MonotoneFn fn, unsigned bits, const Interval& in) {
  return Interval{monotone_lower(fn, bits, in.lo), monotone_upper(fn, bits, in.hi)};
}

}  // namespace certigate
