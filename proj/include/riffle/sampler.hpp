#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "riffle/bignum.hpp"
#include "riffle/deck.hpp"

namespace riffle {

/// Identifies one reproducible random stream.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Philox4x32-10 counter-based generator. The key is the seed and the
/// stream occupies the upper half of the 128-bit counter, so distinct
/// streams never share a counter value. Output is identical on every
/// platform.
class CounterRng {
 public:
  explicit CounterRng(RngSpec spec);

  std::uint64_t next_u64();
  /// Uniform in [0, bound), unbiased (power-of-two mask or rejection).
  std::uint64_t below(std::uint64_t bound);

  /// One Philox block; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;  // 32-bit words left in buffer_
};

/// Digits a_1..a_n in [0, base), indexed by destination position.
struct DigitSequence {
  std::vector<std::uint64_t> digits;
  std::uint64_t base = 1;
};

/// Stable sort of positions by digit: pi(k) is the position of the k-th
/// smallest (digit, position) pair.
Shuffle digits_to_shuffle(const DigitSequence& seq);

DigitSequence sample_digits(std::size_t n, std::uint64_t a, CounterRng& rng);
Shuffle sample_shuffle(std::size_t n, std::uint64_t a, CounterRng& rng);
Shuffle sample_shuffle(std::size_t n, std::uint64_t a, RngSpec rng);

/// One 2-shuffle in place. Consumes ceil(n / 64) words from rng.
void riffle_once(std::vector<Label>& cards, CounterRng& rng, std::vector<Label>& scratch);
/// Inverse of a 2-shuffle in place: cards given digit 0 go on top, order kept.
void inverse_riffle_once(std::vector<Label>& cards, CounterRng& rng, std::vector<Label>& scratch);

/// m independent 2-shuffles applied in sequence.
Deck riffle_m(const Deck& d, unsigned m, CounterRng& rng);
Deck riffle_m(const Deck& d, unsigned m, RngSpec rng);
/// m independent inverse 2-shuffles; the result is distributed as pi^{-1}
/// applied to d for a 2^m-shuffle pi.
Deck inverse_riffle_m(const Deck& d, unsigned m, CounterRng& rng);

/// Calls visit(const DigitSequence&) for all a^n sequences in lexicographic order.
template <class Visit>
void for_each_digit_sequence(std::size_t n, std::uint64_t a, Visit&& visit) {
  DigitSequence seq{std::vector<std::uint64_t>(n, 0), a};
  while (true) {
    visit(static_cast<const DigitSequence&>(seq));
    std::size_t k = n;
    while (k > 0 && ++seq.digits[k - 1] == a) seq.digits[--k] = 0;
    if (k == 0) return;
  }
}

/// Exhaustive a-shuffle distribution on S_n: shuffle -> number of digit
/// sequences inducing it (out of a^n).
std::map<Shuffle, std::uint64_t> shuffle_counts(std::size_t n, std::uint64_t a);

/// Exhaustive distribution of the deck after an a-shuffle of `start`: deck
/// -> number of inducing digit sequences. Throws if a^n exceeds `limit`.
std::map<Deck, BigInt> deck_counts(const Deck& start, std::uint64_t a, std::uint64_t limit = 1u << 24);

/// Number of the a^n digit sequences whose shuffle carries `start` to
/// `end`, for arbitrary (unsorted) endpoints. Splits `start` into a
/// consecutive packets and counts interleavings by dynamic programming.
BigInt count_inducing_sequences(const Deck& start, const Deck& end, std::uint64_t a);

}  // namespace riffle
