#include "riffle/transition.hpp"

#include <stdexcept>

#include "riffle/decimal.hpp"

namespace riffle {

ExactProbability::ExactProbability(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ < 0 || value_ > 1) throw std::domain_error("probability outside [0, 1]: " + to_fraction_string(value_));
}

std::string ExactProbability::decimal(int significant) const { return to_decimal(value_, significant); }

ShuffleWeights shuffle_weights(std::size_t n, const BigInt& a) {
  if (a < 1) throw std::invalid_argument("a-shuffle needs a >= 1");
  ShuffleWeights w;
  w.cards = n;
  w.a = a;
  w.weights.reserve(n);
  for (std::size_t d = 0; d < n; ++d) w.weights.push_back(binomial(a + BigInt(static_cast<unsigned long>(n - d - 1)), n));
  w.denominator = power(a, n);
  return w;
}

BigInt weighted_count(const DescentPolynomial& poly, const ShuffleWeights& w) {
  if (poly.degree() >= static_cast<long>(w.cards) && !poly.is_zero())
    throw std::invalid_argument("descent polynomial degree exceeds n - 1");
  BigInt sum = 0;
  for (std::size_t d = 0; d < poly.coeffs().size(); ++d) sum += poly.coeffs()[d] * w.weights[d];
  return sum;
}

ExactProbability transition_prob(const DescentPolynomial& poly, std::size_t n, const BigInt& a) {
  ShuffleWeights w = shuffle_weights(n, a);
  return ExactProbability(make_rational(weighted_count(poly, w), w.denominator));
}

std::vector<BigInt> recover_descent_counts(std::span<const Rational> probs, std::size_t n) {
  if (probs.size() != n) throw std::invalid_argument("need exactly n probabilities (a = 1..n)");
  std::vector<BigInt> out;
  out.reserve(n);
  for (std::size_t d = 0; d < n; ++d) {
    // c_d = sum_{k=0}^{d} (-1)^k p_{d+1-k} (d+1-k)^n C(n+1, k)
    Rational c = 0;
    for (std::size_t k = 0; k <= d; ++k) {
      const std::size_t a = d + 1 - k;
      Rational term = probs[a - 1] * Rational(power(BigInt(static_cast<unsigned long>(a)), n) * binomial(n + 1, k));
      if (k % 2 == 0) c += term;
      else c -= term;
    }
    c.canonicalize();
    if (c.get_den() != 1) throw std::domain_error("recovered descent count is not an integer");
    if (c < 0) throw std::domain_error("recovered descent count is negative");
    out.push_back(c.get_num());
  }
  return out;
}

LinearDeckStats linear_deck_stats(const Deck& d, std::size_t h) {
  if (h == 0) throw std::invalid_argument("linear deck needs h >= 1");
  const Label x = static_cast<Label>(h + 1);
  std::vector<std::size_t> where(h + 1, 0);  // 1-based position of card c
  LinearDeckStats s;
  s.h = h;
  for (std::size_t pos = 1; pos <= d.size(); ++pos) {
    Label c = d.at(pos);
    if (c == x) {
      ++s.n;
      continue;
    }
    if (c > h || where[c] != 0) throw std::invalid_argument("deck is not a rearrangement of {1..h, x^n}");
    where[c] = pos;
  }
  for (std::size_t c = 1; c <= h; ++c)
    if (where[c] == 0) throw std::invalid_argument("deck is missing a card of {1..h}");
  s.r = 1;
  for (std::size_t c = 2; c <= h; ++c)
    if (where[c - 1] > where[c]) ++s.r;
  for (std::size_t pos = 1; pos < where[h]; ++pos)
    if (d.at(pos) == x) ++s.l;
  return s;
}

ExactProbability linear_deck_prob(std::size_t h, std::size_t n, std::size_t r, std::size_t l, const BigInt& a) {
  if (h < 1 || r < 1 || r > h || l > n) throw std::invalid_argument("linear_deck_prob: parameters out of range");
  if (a < 1) throw std::invalid_argument("a-shuffle needs a >= 1");
  BigInt sum = 0;
  // m runs over r-1 .. a-1; a can be huge only in theory, callers keep it small.
  for (BigInt m = static_cast<unsigned long>(r - 1); m <= a - 1; ++m) {
    BigInt below = a - m - 1;
    BigInt strict = (l == 0) ? BigInt(1) : power(below, l);  // 0^0 taken as 1
    BigInt rest = power(a - m, n - l);
    BigInt choose = binomial(m - BigInt(static_cast<unsigned long>(r)) + BigInt(static_cast<unsigned long>(h)), h - 1);
    sum += choose * strict * rest;
  }
  return ExactProbability(make_rational(sum, power(a, n + h)));
}

std::pair<Deck, Deck> extremal_decks(const SortedSpec& spec) { return {spec.sorted_deck(), spec.reversed_deck()}; }

}  // namespace riffle
