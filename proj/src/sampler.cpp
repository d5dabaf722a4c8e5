#include "riffle/sampler.hpp"

#include <algorithm>
#include <stdexcept>

namespace riffle {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> CounterRng::block(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

CounterRng::CounterRng(RngSpec spec)
    : key_{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32)}, stream_(spec.stream) {}

std::uint64_t CounterRng::next_u64() {
  if (buffered_ < 2) {
    buffer_ = block({static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32),
                     static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                    key_);
    ++index_;
    buffered_ = 4;
  }
  const int at = 4 - buffered_;
  buffered_ -= 2;
  return static_cast<std::uint64_t>(buffer_[at]) | (static_cast<std::uint64_t>(buffer_[at + 1]) << 32);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("below(0)");
  if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
  // Lemire: multiply-shift with rejection of the short final interval.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const unsigned __int128 p = static_cast<unsigned __int128>(next_u64()) * bound;
    if (static_cast<std::uint64_t>(p) >= threshold) return static_cast<std::uint64_t>(p >> 64);
  }
}

Shuffle digits_to_shuffle(const DigitSequence& seq) {
  const std::size_t n = seq.digits.size();
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (seq.digits[i] >= seq.base) throw std::invalid_argument("digit out of range for base");
    keyed[i] = {seq.digits[i], i + 1};
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> map(n);
  for (std::size_t k = 0; k < n; ++k) map[k] = keyed[k].second;
  return Shuffle(std::move(map));
}

DigitSequence sample_digits(std::size_t n, std::uint64_t a, CounterRng& rng) {
  if (a == 0) throw std::invalid_argument("a-shuffle needs a >= 1");
  DigitSequence seq{std::vector<std::uint64_t>(n), a};
  for (auto& d : seq.digits) d = a == 1 ? 0 : rng.below(a);
  return seq;
}

Shuffle sample_shuffle(std::size_t n, std::uint64_t a, CounterRng& rng) { return digits_to_shuffle(sample_digits(n, a, rng)); }

Shuffle sample_shuffle(std::size_t n, std::uint64_t a, RngSpec spec) {
  CounterRng rng(spec);
  return sample_shuffle(n, a, rng);
}

void riffle_once(std::vector<Label>& cards, CounterRng& rng, std::vector<Label>& scratch) {
  const std::size_t n = cards.size();
  scratch.resize(n);
  std::size_t zeros = 0;
  std::uint64_t word = 0;
  // Destination positions with digit 0 take the top cards in order, the
  // rest take the remaining cards in order.
  static thread_local std::vector<std::uint8_t> bits;
  bits.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j % 64 == 0) word = rng.next_u64();
    bits[j] = static_cast<std::uint8_t>((word >> (j % 64)) & 1);
    zeros += bits[j] == 0;
  }
  std::size_t top = 0, bottom = zeros;
  for (std::size_t j = 0; j < n; ++j) scratch[j] = bits[j] == 0 ? cards[top++] : cards[bottom++];
  cards.swap(scratch);
}

void inverse_riffle_once(std::vector<Label>& cards, CounterRng& rng, std::vector<Label>& scratch) {
  const std::size_t n = cards.size();
  scratch.resize(n);
  std::uint64_t word = 0;
  std::size_t out = 0;
  static thread_local std::vector<std::uint8_t> bits;
  bits.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j % 64 == 0) word = rng.next_u64();
    bits[j] = static_cast<std::uint8_t>((word >> (j % 64)) & 1);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (bits[j] == 0) scratch[out++] = cards[j];
  for (std::size_t j = 0; j < n; ++j)
    if (bits[j] == 1) scratch[out++] = cards[j];
  cards.swap(scratch);
}

Deck riffle_m(const Deck& d, unsigned m, CounterRng& rng) {
  std::vector<Label> cards(d.labels().begin(), d.labels().end()), scratch;
  for (unsigned k = 0; k < m; ++k) riffle_once(cards, rng, scratch);
  return Deck(std::move(cards));
}

Deck riffle_m(const Deck& d, unsigned m, RngSpec spec) {
  CounterRng rng(spec);
  return riffle_m(d, m, rng);
}

Deck inverse_riffle_m(const Deck& d, unsigned m, CounterRng& rng) {
  std::vector<Label> cards(d.labels().begin(), d.labels().end()), scratch;
  for (unsigned k = 0; k < m; ++k) inverse_riffle_once(cards, rng, scratch);
  return Deck(std::move(cards));
}

std::map<Shuffle, std::uint64_t> shuffle_counts(std::size_t n, std::uint64_t a) {
  std::map<Shuffle, std::uint64_t> out;
  for_each_digit_sequence(n, a, [&](const DigitSequence& s) { ++out[digits_to_shuffle(s)]; });
  return out;
}

std::map<Deck, BigInt> deck_counts(const Deck& start, std::uint64_t a, std::uint64_t limit) {
  BigInt total = power(BigInt(static_cast<unsigned long>(a)), start.size());
  if (total > BigInt(static_cast<unsigned long>(limit))) throw std::invalid_argument("a^n exceeds the enumeration limit");
  std::map<Deck, std::uint64_t> counts;
  for_each_digit_sequence(start.size(), a, [&](const DigitSequence& s) { ++counts[apply_shuffle(start, digits_to_shuffle(s))]; });
  std::map<Deck, BigInt> out;
  for (auto& [deck, c] : counts) out.emplace(deck, BigInt(static_cast<unsigned long>(c)));
  return out;
}

BigInt count_inducing_sequences(const Deck& start, const Deck& end, std::uint64_t a) {
  const std::size_t n = start.size();
  if (end.size() != n) throw std::invalid_argument("decks differ in size");
  if (a == 0) throw std::invalid_argument("a-shuffle needs a >= 1");
  if (a > 16) throw std::invalid_argument("count_inducing_sequences supports a <= 16");
  std::vector<Label> s(start.labels().begin(), start.labels().end());
  std::vector<Label> e(end.labels().begin(), end.labels().end());
  {
    auto x = s, y = e;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return 0;
  }

  // cut[v] = first card of packet v; cut[a] = n.
  std::vector<std::size_t> cut(a + 1, 0);
  cut[a] = n;
  BigInt total = 0;
  std::map<std::vector<std::size_t>, BigInt> layer, next;
  while (true) {
    // Interleaving count for this cut: state = cards consumed per packet.
    layer.clear();
    layer.emplace(std::vector<std::size_t>(a, 0), BigInt(1));
    for (std::size_t j = 0; j < n && !layer.empty(); ++j) {
      next.clear();
      for (const auto& [used, ways] : layer) {
        for (std::size_t v = 0; v < a; ++v) {
          const std::size_t idx = cut[v] + used[v];
          if (idx < cut[v + 1] && s[idx] == e[j]) {
            auto nu = used;
            ++nu[v];
            next[nu] += ways;
          }
        }
      }
      layer.swap(next);
    }
    for (const auto& [used, ways] : layer) total += ways;

    // Next nondecreasing cut vector cut[1..a-1] in [0, n].
    std::size_t v = a;
    while (v > 1 && cut[v - 1] == n) --v;
    if (v <= 1) break;
    ++cut[v - 1];
    for (std::size_t w = v; w < a; ++w) cut[w] = cut[v - 1];
  }
  return total;
}

}  // namespace riffle
