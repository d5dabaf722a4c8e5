#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "riffle/bignum.hpp"
#include "riffle/deck.hpp"

namespace riffle {

/// Which reverse-and-complement move generates the relation on
/// arrangements of {1^n, 2^n}.
///  - centered: the segment must sit in the middle (|alpha| = |gamma|);
///    classes share transition probabilities from 1^n 2^n.
///  - anywhere: any balanced segment; classes share transition
///    probabilities from (1,2)^n.
enum class Relation { centered, anywhere };

inline constexpr std::size_t default_closure_bound = 10;

struct DeckClass {
  /// Sorted lexicographically; representative is members.front().
  std::vector<Deck> members;
  const Deck& representative() const { return members.front(); }
};

enum class CodeSymbol { plus, minus, one, two };

/// Symbol per center-out position pair of a balanced two-label deck.
struct ClassCode {
  std::vector<CodeSymbol> symbols;

  /// Excess of `one` over `two` never negative, scanning left to right.
  bool is_normal() const;
  friend bool operator==(const ClassCode&, const ClassCode&) = default;
  friend auto operator<=>(const ClassCode&, const ClassCode&) = default;
};

std::string to_string(const ClassCode& code);
/// Parses "+,+,2,1,2,1,-" (the minus may also be written as U+2212).
ClassCode parse_code(const std::string& text);

/// Reverse, then swap labels 1 and 2. Throws std::invalid_argument on other labels.
Deck star(const Deck& segment);

/// Decks one move away, including d itself. Throws unless d rearranges {1^n, 2^n}.
std::set<Deck> neighbors_s3(const Deck& d);
std::set<Deck> neighbors_s4(const Deck& d);
std::set<Deck> neighbors(const Deck& d, Relation rel);

/// Breadth-first closure of d. Throws std::invalid_argument when n exceeds `bound`.
DeckClass class_closure(const Deck& d, Relation rel, std::size_t bound = default_closure_bound);

/// Partition of all C(2n, n) decks, classes ordered by representative.
std::vector<DeckClass> all_classes(std::size_t n, Relation rel, std::size_t bound = default_closure_bound);
BigInt count_classes(std::size_t n, Relation rel, std::size_t bound = default_closure_bound);

/// Symbols for positions x = n+1..2n paired with 2n - x + 1, before normalization.
ClassCode raw_code_s3(const Deck& d);
/// Flips every negative excursion of the one/two excess.
ClassCode normalize_code(const ClassCode& code);
/// Normalized code; equal codes exactly when the decks are centered-related.
ClassCode canonical_code_s3(const Deck& d);

/// C(2n+2, n+1) / (n+2)
BigInt catalan_class_count(std::size_t n);
/// (n+3) 2^(n-2), the observed class count for the `anywhere` relation.
BigInt conjectured_s4_count(std::size_t n);

/// The starting deck whose transition probabilities are constant on classes:
/// 1^n 2^n for centered, (1,2)^n for anywhere.
Deck class_start_deck(std::size_t n, Relation rel);

}  // namespace riffle
