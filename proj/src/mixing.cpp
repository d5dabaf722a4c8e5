#include "riffle/mixing.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <variant>

#include <boost/math/distributions/normal.hpp>

#include "riffle/decimal.hpp"
#include "riffle/descent_polynomials.hpp"
#include "riffle/eulerian.hpp"

namespace riffle {

std::string to_string(Orientation o) { return o == Orientation::from_sorted ? "from-sorted" : "to-sorted"; }

std::string to_string(Metric m) {
  switch (m) {
    case Metric::separation: return "separation";
    case Metric::tv_exact: return "tv-exact";
    case Metric::tv_mc: return "tv-mc";
  }
  return "?";
}

struct DeckProbability::Impl {
  SortedSpec spec;
  ShuffleWeights weights;
  Orientation orientation;
  std::variant<std::monostate, FromSortedEngine<std::uint64_t>, FromSortedEngine<unsigned __int128>,
               FromSortedEngine<BigInt>>
      engine;

  Impl(const SortedSpec& s, const BigInt& a, Orientation o)
      : spec(s), weights(shuffle_weights(s.cards(), a)), orientation(o) {
    if (o == Orientation::to_sorted) return;
    if (FromSortedEngine<std::uint64_t>::fits(s)) engine.emplace<1>(s);
    else if (FromSortedEngine<unsigned __int128>::fits(s)) engine.emplace<2>(s);
    else engine.emplace<3>(s);
  }

  BigInt count(const Deck& d) {
    if (orientation == Orientation::to_sorted) return weighted_to_sorted(d, spec, weights.weights);
    BigInt sum = 0;
    if (auto* e64 = std::get_if<1>(&engine)) {
      auto p = e64->polynomial(d);
      for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        mpz_addmul_ui(sum.get_mpz_t(), weights.weights[k].get_mpz_t(), p.coeffs()[k]);
    } else if (auto* e128 = std::get_if<2>(&engine)) {
      auto p = e128->polynomial(d);
      for (std::size_t k = 0; k < p.coeffs().size(); ++k) sum += to_big(p.coeffs()[k]) * weights.weights[k];
    } else {
      auto p = std::get<3>(engine).polynomial(d);
      for (std::size_t k = 0; k < p.coeffs().size(); ++k) sum += p.coeffs()[k] * weights.weights[k];
    }
    return sum;
  }
};

DeckProbability::DeckProbability(const SortedSpec& spec, const BigInt& a, Orientation o)
    : impl_(std::make_unique<Impl>(spec, a, o)) {}
DeckProbability::~DeckProbability() = default;
DeckProbability::DeckProbability(DeckProbability&&) noexcept = default;

BigInt DeckProbability::count(const Deck& d) { return impl_->count(d); }

ExactProbability DeckProbability::probability(const Deck& d) {
  return ExactProbability(make_rational(count(d), impl_->weights.denominator));
}

const ShuffleWeights& DeckProbability::weights() const { return impl_->weights; }

namespace {

// 1 - M count / a^n, clamped below at 0.
Rational separation_from_count(const BigInt& decks, const BigInt& count, const BigInt& denominator) {
  Rational s = 1 - make_rational(decks * count, denominator);
  return s < 0 ? Rational(0) : s;
}

Deck descending_cycles(const SortedSpec& spec) {
  std::vector<std::size_t> left(spec.counts().begin(), spec.counts().end());
  std::vector<Label> out;
  while (out.size() < spec.cards())
    for (std::size_t c = left.size(); c-- > 0;)
      if (left[c] > 0) {
        --left[c];
        out.push_back(static_cast<Label>(c + 1));
      }
  return Deck(std::move(out));
}

bool all_distinct(const SortedSpec& spec) {
  for (auto c : spec.counts())
    if (c != 1) return false;
  return true;
}

}  // namespace

ExactProbability separation_distance(const SortedSpec& spec, unsigned m) {
  DeckProbability prob(spec, riffles_to_a(m), Orientation::from_sorted);
  return ExactProbability(
      separation_from_count(deck_count(spec), prob.count(spec.reversed_deck()), prob.weights().denominator));
}

SeparationBounds separation_bounds(const SortedSpec& spec, unsigned m, Orientation o, std::uint64_t bound) {
  const BigInt decks = deck_count(spec);
  if (o == Orientation::from_sorted) {
    Rational s = separation_distance(spec, m).value();
    return {s, s, spec.reversed_deck()};
  }
  DeckProbability prob(spec, riffles_to_a(m), o);
  const BigInt& denominator = prob.weights().denominator;
  if (decks <= BigInt(static_cast<unsigned long>(bound))) {
    std::optional<BigInt> least;
    Deck argmin;
    for_each_arrangement(spec, [&](const Deck& d) {
      BigInt c = prob.count(d);
      if (!least || c < *least) {
        least = c;
        argmin = d;
      }
    });
    Rational s = separation_from_count(decks, *least, denominator);
    return {s, s, argmin};
  }
  SeparationBounds b;
  b.lower = -1;
  for (const Deck& w : {descending_cycles(spec), spec.reversed_deck()}) {
    Rational s = separation_from_count(decks, prob.count(w), denominator);
    if (s > b.lower) {
      b.lower = s;
      b.witness = w;
    }
  }
  // All-distinct reversal: n! C(a, n) / a^n.
  const std::size_t n = spec.cards();
  b.upper = separation_from_count(factorial(n), binomial(riffles_to_a(m), n), denominator);
  return b;
}

ExactProbability tv_exact(const SortedSpec& spec, unsigned m, Orientation o, std::uint64_t bound) {
  const BigInt a = riffles_to_a(m);
  const std::size_t n = spec.cards();
  if (all_distinct(spec)) {
    // Every permutation with d descents has probability w_d / a^n.
    ShuffleWeights w = shuffle_weights(n, a);
    const BigInt nf = factorial(n);
    BigInt excess = 0;
    for (std::size_t d = 0; d < n; ++d) {
      BigInt diff = nf * w.weights[d] - w.denominator;
      if (diff > 0) excess += eulerian(n, static_cast<long>(d)) * diff;
    }
    return ExactProbability(make_rational(excess, nf * w.denominator));
  }
  const BigInt decks = deck_count(spec);
  if (decks > BigInt(static_cast<unsigned long>(bound)))
    throw std::invalid_argument("tv_exact: deck count " + decks.get_str() + " exceeds the enumeration bound");
  DeckProbability prob(spec, a, o);
  const BigInt& denominator = prob.weights().denominator;
  BigInt excess = 0;
  for_each_arrangement(spec, [&](const Deck& d) {
    BigInt diff = decks * prob.count(d) - denominator;
    if (diff > 0) excess += diff;
  });
  return ExactProbability(make_rational(excess, decks * denominator));
}

double normal_quantile_two_sided(double confidence) {
  if (!(confidence > 0 && confidence < 1)) throw std::invalid_argument("confidence must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal(), 1 - (1 - confidence) / 2);
}

DistanceEstimate tv_monte_carlo(const SortedSpec& spec, unsigned m, const MonteCarloOptions& opts) {
  if (opts.samples == 0) throw std::invalid_argument("tv_monte_carlo needs at least one sample");
  const double z = normal_quantile_two_sided(opts.confidence);
  const BigInt a = riffles_to_a(m);
  const BigInt decks = deck_count(spec);
  const BigInt denominator = power(a, spec.cards());
  const Deck start = spec.sorted_deck();

  const std::uint64_t chunks = (opts.samples + mc_chunk_size - 1) / mc_chunk_size;
  std::vector<double> sums(chunks, 0.0), squares(chunks, 0.0);
  std::atomic<std::uint64_t> next_chunk{0}, done{0};
  std::mutex progress_mutex;

  auto work = [&] {
    DeckProbability prob(spec, a, opts.orientation);
    std::vector<Label> cards, scratch;
    BigInt scaled;
    while (true) {
      const std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= chunks) return;
      CounterRng rng(RngSpec{opts.rng.seed, (opts.rng.stream << 32) + c});
      const std::uint64_t begin = c * mc_chunk_size;
      const std::uint64_t end = std::min(opts.samples, begin + mc_chunk_size);
      double s1 = 0, s2 = 0;
      for (std::uint64_t k = begin; k < end; ++k) {
        cards.assign(start.labels().begin(), start.labels().end());
        for (unsigned r = 0; r < m; ++r) {
          if (opts.orientation == Orientation::from_sorted) riffle_once(cards, rng, scratch);
          else inverse_riffle_once(cards, rng, scratch);
        }
        scaled = decks * prob.count(Deck(cards));
        double stat = 0;
        if (scaled > denominator) {
          // 1 - a^n / (M count), to double precision.
          long e_num = 0, e_den = 0;
          const double m_num = mpz_get_d_2exp(&e_num, denominator.get_mpz_t());
          const double m_den = mpz_get_d_2exp(&e_den, scaled.get_mpz_t());
          stat = 1.0 - std::ldexp(m_num / m_den, static_cast<int>(e_num - e_den));
        }
        s1 += stat;
        s2 += stat * stat;
      }
      sums[c] = s1;
      squares[c] = s2;
      const std::uint64_t now = done.fetch_add(end - begin) + (end - begin);
      if (opts.progress) {
        std::lock_guard lock(progress_mutex);
        opts.progress(now, opts.samples);
      }
    }
  };

  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  double s1 = 0, s2 = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    s1 += sums[c];
    s2 += squares[c];
  }
  const double k = static_cast<double>(opts.samples);
  DistanceEstimate est;
  est.samples_used = opts.samples;
  est.point = s1 / k;
  if (opts.samples > 1) {
    const double var = std::max(0.0, (s2 - k * est.point * est.point) / (k - 1));
    est.ci_halfwidth = z * std::sqrt(var / k);
  }
  return est;
}

std::vector<MixingRow> mixing_table(const SortedSpec& spec, Metric metric, unsigned lo, unsigned hi,
                                    const MixingTableOptions& opts) {
  if (lo > hi) throw std::invalid_argument("empty riffle range");
  std::vector<MixingRow> rows;
  std::optional<Rational> previous;
  for (unsigned m = lo; m <= hi; ++m) {
    MixingRow row;
    row.m = m;
    row.metric = metric;
    switch (metric) {
      case Metric::separation: {
        SeparationBounds b = separation_bounds(spec, m, opts.orientation, opts.enumeration_bound);
        row.estimate.point = to_double(b.lower);
        if (b.exact()) row.estimate.exact = b.lower;
        row.bounds = b;
        break;
      }
      case Metric::tv_exact: {
        Rational v = tv_exact(spec, m, opts.orientation, opts.enumeration_bound).value();
        row.estimate.point = to_double(v);
        row.estimate.exact = v;
        break;
      }
      case Metric::tv_mc: {
        MonteCarloOptions mc = opts.monte_carlo;
        mc.orientation = opts.orientation;
        row.estimate = tv_monte_carlo(spec, m, mc);
        break;
      }
    }
    if (row.estimate.exact) {
      if (previous && *row.estimate.exact > *previous) row.monotonicity_violation = true;
      previous = row.estimate.exact;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace riffle
