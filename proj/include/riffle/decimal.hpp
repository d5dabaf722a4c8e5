#pragma once

#include <string>

#include "riffle/bignum.hpp"

namespace riffle {

/// Decimal rendering of an exact rational with `significant` digits,
/// rounding half to even. Fixed notation for magnitudes >= 1e-4, otherwise
/// scientific ("1.5e-30").
std::string to_decimal(const Rational& q, int significant = 12);

/// Nearest double; exact comparisons must use Rational, never this.
double to_double(const Rational& q);

}  // namespace riffle
