#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "riffle/bignum.hpp"
#include "riffle/deck.hpp"
#include "riffle/sampler.hpp"
#include "riffle/transition.hpp"

namespace riffle {

/// Which distribution over arrangements is compared with uniform.
///  - from_sorted: the label sequence after shuffling the sorted deck,
///    p(D) = P(sorted -> D). The right model when cards are dealt one at a
///    time and only ranks matter (blackjack).
///  - to_sorted: the deal distribution, p(D) = P(D -> sorted): the chance
///    that the cards at the label-c positions of D end up in the c-th block
///    of the shuffled deck. The right model for dealing consecutive blocks
///    to players (bridge).
enum class Orientation { from_sorted, to_sorted };

enum class Metric { separation, tv_exact, tv_mc };

std::string to_string(Orientation o);
std::string to_string(Metric m);

inline constexpr std::uint64_t default_deck_enumeration_bound = 1'000'000;

/// Exact probability numerators (out of a^n) for arrangements of one spec,
/// in one orientation. Picks the narrowest exact coefficient type. Not
/// thread-safe; create one per worker.
class DeckProbability {
 public:
  DeckProbability(const SortedSpec& spec, const BigInt& a, Orientation o);
  ~DeckProbability();
  DeckProbability(DeckProbability&&) noexcept;

  /// Number of inducing digit sequences; the probability is this / a^n.
  BigInt count(const Deck& d);
  ExactProbability probability(const Deck& d);
  const ShuffleWeights& weights() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Separation distance from uniform after m riffle shuffles of the sorted
/// deck (from_sorted orientation): 1 - M p(reversed deck), clamped at 0.
ExactProbability separation_distance(const SortedSpec& spec, unsigned m);

/// Exact separation when `lower == upper`, otherwise rigorous bounds.
struct SeparationBounds {
  Rational lower;
  Rational upper;
  /// Deck attaining `lower`.
  Deck witness;
  bool exact() const { return lower == upper; }
};

/// from_sorted: always exact. to_sorted: exact by enumeration when the deck
/// count is within `bound`; otherwise the lower bound comes from the best of
/// a few high-descent witnesses and the upper bound from the all-distinct
/// deck of the same size (merging labels never increases separation).
SeparationBounds separation_bounds(const SortedSpec& spec, unsigned m, Orientation o,
                                   std::uint64_t bound = default_deck_enumeration_bound);

/// Exact total variation distance from uniform after m riffle shuffles.
/// Collapses over descent classes when all cards are distinct; otherwise
/// enumerates every arrangement and throws std::invalid_argument if there
/// are more than `bound`.
ExactProbability tv_exact(const SortedSpec& spec, unsigned m, Orientation o = Orientation::from_sorted,
                          std::uint64_t bound = default_deck_enumeration_bound);

struct DistanceEstimate {
  double point = 0;
  std::optional<Rational> exact;
  double ci_halfwidth = 0;
  std::uint64_t samples_used = 0;
};

struct MonteCarloOptions {
  std::uint64_t samples = 100'000;
  RngSpec rng;
  double confidence = 0.99;
  /// 0 means std::thread::hardware_concurrency().
  unsigned workers = 0;
  Orientation orientation = Orientation::from_sorted;
  /// Called with (samples done, samples total) after each chunk, from worker threads.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Samples per chunk; chunk c draws from stream (rng.stream << 32) + c, so
/// the estimate does not depend on the worker count.
inline constexpr std::uint64_t mc_chunk_size = 4096;

/// Unbiased TV estimate: mean of (1 - u / p(D))^+ over D drawn from p, with
/// p(D) evaluated exactly per sample and a normal-approximation interval.
DistanceEstimate tv_monte_carlo(const SortedSpec& spec, unsigned m, const MonteCarloOptions& opts);

/// Two-sided standard normal quantile for a confidence level, e.g. 0.99 -> 2.5758.
double normal_quantile_two_sided(double confidence);

struct MixingRow {
  unsigned m = 0;
  Metric metric = Metric::separation;
  DistanceEstimate estimate;
  /// Separation rows only.
  std::optional<SeparationBounds> bounds;
  /// Set on exact rows that rose above the previous row.
  bool monotonicity_violation = false;
};

struct MixingTableOptions {
  Orientation orientation = Orientation::from_sorted;
  MonteCarloOptions monte_carlo;
  std::uint64_t enumeration_bound = default_deck_enumeration_bound;
};

/// One row per m in [lo, hi]. Separation rows use separation_bounds: an
/// inexact to_sorted row reports its lower bound as the point with `exact`
/// unset.
std::vector<MixingRow> mixing_table(const SortedSpec& spec, Metric metric, unsigned lo, unsigned hi,
                                    const MixingTableOptions& opts);

}  // namespace riffle
