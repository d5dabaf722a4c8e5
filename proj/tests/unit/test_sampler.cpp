#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "riffle/descent_polynomials.hpp"
#include "riffle/sampler.hpp"
#include "riffle/transition.hpp"

using namespace riffle;

namespace {

// |observed - expected| within `z` binomial standard errors.
void expect_frequency(std::uint64_t hits, std::uint64_t trials, double p, double z = 4.0) {
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  EXPECT_NEAR(static_cast<double>(hits) / static_cast<double>(trials), p, z * se + 1e-12);
}

}  // namespace

TEST(Philox, KnownAnswers) {
  using B = std::array<std::uint32_t, 4>;
  EXPECT_EQ(CounterRng::block({0, 0, 0, 0}, {0, 0}), (B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(CounterRng::block({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}), (B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(CounterRng::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, Deterministic) {
  CounterRng a(RngSpec{42, 7}), b(RngSpec{42, 7}), c(RngSpec{42, 8});
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs = differs || x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(CounterRng, BelowIsUnbiased) {
  CounterRng rng(RngSpec{1, 0});
  for (std::uint64_t bound : {3ull, 5ull, 8ull, 1000003ull}) {
    const std::uint64_t trials = 60000;
    std::vector<std::uint64_t> hist(std::min<std::uint64_t>(bound, 8), 0);
    for (std::uint64_t k = 0; k < trials; ++k) {
      auto v = rng.below(bound);
      ASSERT_LT(v, bound);
      if (v < hist.size()) ++hist[v];
    }
    for (auto h : hist) expect_frequency(h, trials, 1.0 / static_cast<double>(bound));
  }
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(DigitsToShuffle, Examples) {
  EXPECT_EQ(digits_to_shuffle({{0, 0, 0, 0}, 1}), Shuffle::identity(4));
  EXPECT_EQ(digits_to_shuffle({{1, 0}, 2}), Shuffle({2, 1}));
  EXPECT_EQ(digits_to_shuffle({{0, 0}, 2}), Shuffle::identity(2));
}

TEST(DigitsToShuffle, AgreesWithOracleOnDecks) {
  oracle::Cards start{1, 2, 3, 4, 5};
  for_each_digit_sequence(5, 3, [&](const DigitSequence& s) {
    Deck got = apply_shuffle(Deck(start), digits_to_shuffle(s));
    ASSERT_EQ(oracle::Cards(got.labels().begin(), got.labels().end()), oracle::shuffle_by_digits(start, s.digits));
  });
}

TEST(DigitsToShuffle, InducesDescentWeights) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::uint64_t a = 1; a <= 3; ++a) {
      auto counts = shuffle_counts(n, a);
      ShuffleWeights w = shuffle_weights(n, a);
      std::vector<std::size_t> p(n);
      std::iota(p.begin(), p.end(), 1);
      do {
        Shuffle s(p);
        auto it = counts.find(s);
        BigInt got = it == counts.end() ? 0 : BigInt(static_cast<unsigned long>(it->second));
        EXPECT_EQ(got, w.weights[s.descents()]);
      } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST(SampleShuffle, OneShuffleIsIdentity) {
  CounterRng rng(RngSpec{3, 0});
  for (int k = 0; k < 100; ++k) EXPECT_EQ(sample_shuffle(7, 1, rng), Shuffle::identity(7));
}

TEST(SampleShuffle, SwapFrequency) {
  CounterRng rng(RngSpec{5, 0});
  const std::uint64_t trials = 200000;
  std::uint64_t swaps = 0;
  for (std::uint64_t k = 0; k < trials; ++k) swaps += sample_shuffle(2, 2, rng) == Shuffle({2, 1});
  expect_frequency(swaps, trials, 0.25);
}

TEST(SampleShuffle, SpecificShuffleOfSix) {
  // Two descents, so probability C(a+3, 6) / a^6.
  Shuffle target({1, 4, 2, 5, 3, 6});
  ASSERT_EQ(target.descents(), 2u);
  CounterRng rng(RngSpec{9, 0});
  const std::uint64_t trials = 300000;
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < trials; ++k) hits += sample_shuffle(6, 3, rng) == target;
  expect_frequency(hits, trials, 1.0 / 729);
}

TEST(RiffleM, ZeroShufflesKeepsDeck) {
  Deck d = parse_deck("3 1 2 2 1");
  EXPECT_EQ(riffle_m(d, 0, RngSpec{1, 1}), d);
}

TEST(RiffleM, OneRiffleSwapsTwoCards) {
  CounterRng rng(RngSpec{17, 0});
  const std::uint64_t trials = 100000;
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < trials; ++k) hits += riffle_m(parse_deck("12"), 1, rng) == parse_deck("21");
  expect_frequency(hits, trials, 0.25);
}

TEST(RiffleM, RepeatedRifflesMatchPowerOfTwoShuffle) {
  SortedSpec spec({2, 1, 2});
  const unsigned m = 2;
  auto exact = oracle::digit_table(oracle::sorted_cards({2, 1, 2}), 4);
  std::map<Deck, std::uint64_t> seen;
  CounterRng rng(RngSpec{23, 0});
  const std::uint64_t trials = 100000;
  for (std::uint64_t k = 0; k < trials; ++k) ++seen[riffle_m(spec.sorted_deck(), m, rng)];
  for (const auto& [cards, count] : exact)
    expect_frequency(seen[Deck(cards)], trials, static_cast<double>(count) / 1024.0);
}

TEST(InverseRiffle, MatchesInverseShuffleDistribution) {
  Deck start = parse_deck("1 2 3 1 2");
  std::map<Deck, double> exact;
  for (const auto& [s, c] : shuffle_counts(5, 4)) exact[apply_inverse_shuffle(start, s)] += static_cast<double>(c) / 1024.0;
  std::map<Deck, std::uint64_t> seen;
  CounterRng rng(RngSpec{29, 0});
  const std::uint64_t trials = 100000;
  for (std::uint64_t k = 0; k < trials; ++k) ++seen[inverse_riffle_m(start, 2, rng)];
  for (const auto& [d, p] : exact) expect_frequency(seen[d], trials, p);
}

TEST(RiffleM, SameSpecSameStream) {
  Deck d = SortedSpec({13, 13, 13, 13}).sorted_deck();
  EXPECT_EQ(riffle_m(d, 7, RngSpec{99, 3}), riffle_m(d, 7, RngSpec{99, 3}));
  EXPECT_NE(riffle_m(d, 7, RngSpec{99, 3}), riffle_m(d, 7, RngSpec{99, 4}));
}

TEST(CountInducing, MatchesDigitOracle) {
  for (const char* from : {"1212", "2112", "12312", "11222"})
    for (std::uint64_t a = 1; a <= 4; ++a) {
      Deck start = parse_deck(from);
      oracle::Cards cards(start.labels().begin(), start.labels().end());
      auto table = oracle::digit_table(cards, a);
      std::sort(cards.begin(), cards.end());
      do {
        auto it = table.find(cards);
        BigInt want = it == table.end() ? 0 : BigInt(static_cast<unsigned long>(it->second));
        EXPECT_EQ(count_inducing_sequences(start, Deck(cards), a), want) << from << " a=" << a;
      } while (std::next_permutation(cards.begin(), cards.end()));
    }
}

TEST(DeckCounts, MatchDescentRoute) {
  SortedSpec spec({2, 2, 1});
  for (std::uint64_t a = 1; a <= 3; ++a) {
    auto counts = deck_counts(spec.sorted_deck(), a);
    ShuffleWeights w = shuffle_weights(spec.cards(), a);
    for (const auto& [d, c] : counts) EXPECT_EQ(c, weighted_count(poly_from_sorted(spec, d), w));
  }
  EXPECT_THROW(deck_counts(SortedSpec({30}).sorted_deck(), 4), std::invalid_argument);
}
