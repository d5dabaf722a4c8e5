#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace riffle {

/// Arbitrary-precision integer. Values used as counts are never negative.
using BigInt = mpz_class;
/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rational = mpq_class;

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// C(top, k) for any nonnegative big `top`; zero when top < k.
inline BigInt binomial(const BigInt& top, unsigned long k) {
  if (top < 0) return 0;
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), top.get_mpz_t(), k);
  return r;
}

inline BigInt binomial(unsigned long top, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), top, k);
  return r;
}

inline BigInt power(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// 2^m, the a-shuffle parameter equivalent to m riffle shuffles.
inline BigInt riffles_to_a(unsigned long m) {
  BigInt r = 1;
  r <<= m;
  return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "p/q" with the denominator always present ("1/1", "0/1").
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace riffle
