#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riffle/bignum.hpp"
#include "riffle/deck.hpp"
#include "riffle/polynomial.hpp"

namespace riffle {

/// A probability held as an exact rational in [0, 1].
class ExactProbability {
 public:
  ExactProbability() = default;
  /// Throws std::domain_error outside [0, 1].
  explicit ExactProbability(Rational value);

  const Rational& value() const { return value_; }
  std::string fraction() const { return to_fraction_string(value_); }
  std::string decimal(int significant = 12) const;

  friend bool operator==(const ExactProbability& a, const ExactProbability& b) { return a.value_ == b.value_; }
  friend bool operator<(const ExactProbability& a, const ExactProbability& b) { return a.value_ < b.value_; }

 private:
  Rational value_ = 0;
};

/// w[d] = C(a + n - d - 1, n) for d = 0..n-1 and the common denominator a^n.
/// An a-shuffle produces a given permutation with d descents with
/// probability w[d] / a^n.
struct ShuffleWeights {
  std::size_t cards = 0;
  BigInt a;
  std::vector<BigInt> weights;
  BigInt denominator;
};

/// `a` may be astronomically large (2^m); nothing here is tabulated by a.
ShuffleWeights shuffle_weights(std::size_t n, const BigInt& a);

/// sum_d c_d w[d]: the number of digit sequences that land in the shuffle set.
BigInt weighted_count(const DescentPolynomial& poly, const ShuffleWeights& w);

/// Probability that an a-shuffle of an n-card deck lands in the shuffle set
/// described by `poly`. Throws std::invalid_argument if deg(poly) >= n or a < 1.
ExactProbability transition_prob(const DescentPolynomial& poly, std::size_t n, const BigInt& a);

/// Inverts transition_prob: given the exact probabilities for a = 1..n,
/// returns c_0..c_{n-1}. Throws std::domain_error if some c_d is negative or
/// not an integer (the inputs did not come from any shuffle set).
std::vector<BigInt> recover_descent_counts(std::span<const Rational> probs, std::size_t n);

/// Statistics read off a deck D that rearranges {1, ..., h, x^n}, where the
/// repeated card x carries label h + 1.
struct LinearDeckStats {
  std::size_t h = 0;
  std::size_t n = 0;
  /// Cards c in 1..h not preceded (anywhere above them) by card c - 1;
  /// card 1 always counts.
  std::size_t r = 0;
  /// x-cards above card h.
  std::size_t l = 0;
};

/// Validates D against the multiset {1..h, (h+1)^n}; throws std::invalid_argument otherwise.
LinearDeckStats linear_deck_stats(const Deck& d, std::size_t h);

/// Closed-form probability that an a-shuffle of 1, 2, ..., h, x^n yields a
/// deck with statistics (r, l), without going through descent polynomials.
ExactProbability linear_deck_prob(std::size_t h, std::size_t n, std::size_t r, std::size_t l, const BigInt& a);

/// (most likely, least likely) target of an a-shuffle from the sorted deck:
/// the sorted deck itself and its label-reversal.
std::pair<Deck, Deck> extremal_decks(const SortedSpec& spec);

}  // namespace riffle
