#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riffle/bignum.hpp"

namespace riffle {

using Label = std::uint32_t;

/// A finite sequence of positive card labels, top card first.
///
/// Positions are 1-based in every public query. An empty deck is
/// representable (it is the result of an empty restriction) but `parse_deck`
/// never produces one.
class Deck {
 public:
  Deck() = default;
  /// Throws std::invalid_argument if a label is zero.
  explicit Deck(std::vector<Label> labels);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  /// Label at 1-based position `pos`.
  Label at(std::size_t pos) const;
  std::span<const Label> labels() const { return labels_; }
  Label max_label() const;

  friend bool operator==(const Deck&, const Deck&) = default;
  friend auto operator<=>(const Deck&, const Deck&) = default;

 private:
  std::vector<Label> labels_;
};

/// Counts (n_1, ..., n_h) of the sorted deck 1^{n_1} 2^{n_2} ... h^{n_h}.
class SortedSpec {
 public:
  /// Throws std::invalid_argument on an empty list or a zero count.
  explicit SortedSpec(std::vector<std::size_t> counts);

  std::span<const std::size_t> counts() const { return counts_; }
  std::size_t labels() const { return counts_.size(); }
  std::size_t count(Label c) const { return counts_.at(c - 1); }
  std::size_t cards() const { return total_; }

  /// 1^{n_1} ... h^{n_h}
  Deck sorted_deck() const;
  /// h^{n_h} ... 1^{n_1}
  Deck reversed_deck() const;

  friend bool operator==(const SortedSpec&, const SortedSpec&) = default;

 private:
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

/// A permutation of {1..n}; image(i) is the destination of the card at i.
class Shuffle {
 public:
  /// Throws std::invalid_argument unless `mapping` is a bijection on {1..n}.
  explicit Shuffle(std::vector<std::size_t> mapping);
  static Shuffle identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  std::size_t image(std::size_t i) const { return map_.at(i - 1); }
  std::span<const std::size_t> mapping() const { return map_; }
  std::size_t descents() const;
  Shuffle inverse() const;
  /// (this ∘ first): apply `first`, then this.
  Shuffle after(const Shuffle& first) const;

  friend bool operator==(const Shuffle&, const Shuffle&) = default;
  friend auto operator<=>(const Shuffle&, const Shuffle&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// Parses "1^13 2^13", "1 2 2 1", "1,2,2,1" or "1221".
Deck parse_deck(std::string_view text);
/// Run-length canonical form, e.g. "1^2 2 1". parse_deck inverts it.
std::string format_deck(const Deck& d);
/// Comma-separated literal form, e.g. "1,1,2,1".
std::string format_deck_literal(const Deck& d);

/// Label counts of `d`; labels must be exactly 1..h, each present.
SortedSpec spec_of(const Deck& d);
/// True when `d` is a rearrangement of the multiset denoted by `spec`.
bool is_arrangement_of(const Deck& d, const SortedSpec& spec);

/// 1-based position of the i-th card labeled c.
std::size_t position_index(const Deck& d, std::size_t i, Label c);
/// All positions of label c, increasing.
std::vector<std::size_t> positions_of(const Deck& d, Label c);

std::size_t descents_of_deck(const Deck& d);

/// Subsequence of labels within [lo, hi], order kept; may be empty.
Deck restrict_labels(const Deck& d, Label lo, Label hi);

/// Position pi(i) of the result holds the card from position i of d.
Deck apply_shuffle(const Deck& d, const Shuffle& pi);
/// apply_shuffle(d, pi.inverse()) without materializing the inverse.
Deck apply_inverse_shuffle(const Deck& d, const Shuffle& pi);

/// N! / (n_1! ... n_h!)
BigInt deck_count(const SortedSpec& spec);

/// Visits every rearrangement of the spec's multiset in lexicographic order.
template <class Visitor>
void for_each_arrangement(const SortedSpec& spec, Visitor&& visit) {
  Deck d = spec.sorted_deck();
  std::vector<Label> labels(d.labels().begin(), d.labels().end());
  do {
    visit(Deck(labels));
  } while (std::next_permutation(labels.begin(), labels.end()));
}

}  // namespace riffle
