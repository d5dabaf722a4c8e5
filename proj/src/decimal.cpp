#include "riffle/decimal.hpp"

#include <stdexcept>

namespace riffle {

namespace {

// floor(log10(|q|)) for q != 0.
long decimal_exponent(const Rational& q) {
  Rational a = abs(q);
  long e = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
  // sizeinbase may overshoot by one; settle e so that 10^e <= a < 10^{e+1}.
  auto pow10 = [](long k) {
    Rational r = 1;
    if (k >= 0) r = Rational(power(BigInt(10), static_cast<unsigned long>(k)));
    else r = Rational(BigInt(1), power(BigInt(10), static_cast<unsigned long>(-k)));
    return r;
  };
  while (pow10(e) > a) --e;
  while (pow10(e + 1) <= a) ++e;
  return e;
}

}  // namespace

std::string to_decimal(const Rational& q, int significant) {
  if (significant < 1) throw std::invalid_argument("significant digits must be positive");
  if (q == 0) return "0";
  const bool negative = q < 0;
  Rational a = abs(q);
  long e = decimal_exponent(a);
  // digits = round_half_even(a * 10^{significant-1-e})
  long shift = significant - 1 - e;
  Rational scaled = a;
  if (shift >= 0) scaled *= Rational(power(BigInt(10), static_cast<unsigned long>(shift)));
  else scaled /= Rational(power(BigInt(10), static_cast<unsigned long>(-shift)));
  scaled.canonicalize();
  BigInt floor_part = scaled.get_num() / scaled.get_den();
  Rational frac = scaled - Rational(floor_part);
  int cmp = ::cmp(frac, Rational(1, 2));
  BigInt digits = floor_part;
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(floor_part.get_mpz_t()))) ++digits;
  std::string s = digits.get_str();
  if (static_cast<int>(s.size()) > significant) {  // rounding carried into a new digit
    ++e;
    s.pop_back();
  }

  std::string out;
  if (e >= -4) {
    if (e < 0) {
      out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
    } else if (static_cast<long>(s.size()) <= e + 1) {
      out = s + std::string(static_cast<std::size_t>(e + 1 - static_cast<long>(s.size())), '0');
    } else {
      out = s.substr(0, static_cast<std::size_t>(e + 1)) + "." + s.substr(static_cast<std::size_t>(e + 1));
    }
    if (out.find('.') != std::string::npos) {
      while (out.back() == '0') out.pop_back();
      if (out.back() == '.') out.pop_back();
    }
  } else {
    std::string mant = s.substr(0, 1);
    std::string rest = s.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    if (!rest.empty()) mant += "." + rest;
    out = mant + "e" + std::to_string(e);
  }
  return negative ? "-" + out : out;
}

double to_double(const Rational& q) {
  // mpq_get_d truncates; good enough for reporting and CI arithmetic.
  return q.get_d();
}

}  // namespace riffle
