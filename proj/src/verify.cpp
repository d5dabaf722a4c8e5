#include "riffle/verify.hpp"

#include <functional>

#include "riffle/descent_polynomials.hpp"
#include "riffle/equivalence.hpp"
#include "riffle/eulerian.hpp"
#include "riffle/mixing.hpp"
#include "riffle/sampler.hpp"
#include "riffle/transition.hpp"

namespace riffle {

namespace {

CheckResult check(std::string name, const std::function<std::string()>& body) {
  CheckResult r{std::move(name), false, {}};
  try {
    r.detail = body();
    r.passed = r.detail.empty();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_self_checks() {
  std::vector<CheckResult> out;

  out.push_back(check("eulerian row sums", [] {
    for (std::size_t n = 1; n <= 12; ++n) {
      BigInt s = 0;
      for (long d = 0; d < static_cast<long>(n); ++d) s += eulerian(n, d);
      if (s != factorial(n)) return "n=" + std::to_string(n);
    }
    return std::string();
  }));

  out.push_back(check("from-sorted recursion vs enumeration", [] {
    for (const auto& counts : std::vector<std::vector<std::size_t>>{{2, 2}, {1, 2, 1}, {3, 2}, {2, 2, 2}, {1, 3, 2}}) {
      SortedSpec spec(counts);
      const Deck sorted = spec.sorted_deck();
      std::string bad;
      for_each_arrangement(spec, [&](const Deck& d) {
        if (bad.empty() && poly_from_sorted(spec, d) != brute_force_poly(sorted, d)) bad = format_deck(d);
      });
      if (!bad.empty()) return bad;
    }
    return std::string();
  }));

  out.push_back(check("to-sorted product vs enumeration", [] {
    for (const auto& counts : std::vector<std::vector<std::size_t>>{{2, 2}, {3, 1, 2}, {2, 2, 2}}) {
      SortedSpec spec(counts);
      const Deck sorted = spec.sorted_deck();
      std::string bad;
      for_each_arrangement(spec, [&](const Deck& d) {
        if (bad.empty() && poly_to_sorted(d, spec) != brute_force_poly(d, sorted)) bad = format_deck(d);
      });
      if (!bad.empty()) return bad;
    }
    return std::string();
  }));

  out.push_back(check("transition probabilities vs digit sequences", [] {
    SortedSpec spec({2, 1, 2});
    for (std::uint64_t a = 1; a <= 4; ++a) {
      auto counts = deck_counts(spec.sorted_deck(), a);
      BigInt total = 0;
      std::string bad;
      for_each_arrangement(spec, [&](const Deck& d) {
        BigInt c = weighted_count(poly_from_sorted(spec, d), shuffle_weights(spec.cards(), a));
        total += c;
        auto it = counts.find(d);
        if (c != (it == counts.end() ? BigInt(0) : it->second) && bad.empty()) bad = format_deck(d);
      });
      if (!bad.empty()) return "a=" + std::to_string(a) + " " + bad;
      if (total != power(BigInt(a), spec.cards())) return "a=" + std::to_string(a) + " total";
    }
    return std::string();
  }));

  out.push_back(check("linear deck closed form", [] {
    for (std::size_t h = 1; h <= 3; ++h)
      for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<std::size_t> counts(h, 1);
        counts.push_back(n);
        SortedSpec spec(counts);
        std::string bad;
        for_each_arrangement(spec, [&](const Deck& d) {
          auto st = linear_deck_stats(d, h);
          for (unsigned a = 1; a <= 4 && bad.empty(); ++a) {
            auto expect = transition_prob(poly_from_sorted(spec, d), spec.cards(), a);
            if (linear_deck_prob(h, n, st.r, st.l, a) != expect) bad = format_deck(d);
          }
        });
        if (!bad.empty()) return bad;
      }
    return std::string();
  }));

  out.push_back(check("centered class counts", [] {
    for (std::size_t n = 1; n <= 6; ++n)
      if (count_classes(n, Relation::centered) != catalan_class_count(n)) return "n=" + std::to_string(n);
    return std::string();
  }));

  out.push_back(check("separation of distinct decks", [] {
    // 1 - n! C(a, n) / a^n
    for (std::size_t n = 2; n <= 8; ++n)
      for (unsigned m = 1; m <= 5; ++m) {
        std::vector<std::size_t> ones(n, 1);
        BigInt a = riffles_to_a(m);
        Rational expect = 1 - make_rational(factorial(n) * binomial(a, n), power(a, n));
        if (separation_distance(SortedSpec(ones), m).value() != expect)
          return "n=" + std::to_string(n) + " m=" + std::to_string(m);
      }
    return std::string();
  }));

  return out;
}

}  // namespace riffle
