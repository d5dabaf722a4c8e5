#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "riffle/deck.hpp"
#include "riffle/polynomial.hpp"

namespace riffle {

/// p_{i,j}: shuffles from the sorted deck whose first card lands on the i-th
/// lowest-label card of the target and whose last card lands on the j-th
/// highest-label card, tallied by descents. Indices are 1-based.
template <class T>
class BoundaryPolyMatrix {
 public:
  BoundaryPolyMatrix() = default;
  BoundaryPolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial<T>& at(std::size_t i, std::size_t j) { return cells_[(i - 1) * cols_ + (j - 1)]; }
  const Polynomial<T>& at(std::size_t i, std::size_t j) const { return cells_[(i - 1) * cols_ + (j - 1)]; }

  Polynomial<T> total() const {
    Polynomial<T> t;
    for (const auto& c : cells_) t += c;
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial<T>> cells_;
};

/// Where the label range [lo, hi] is cut into [lo, e] and [e+1, hi].
enum class SplitStrategy { balanced, leftmost, rightmost };

/// Descent polynomials from the sorted deck of a fixed spec to any of its
/// arrangements, by the two-boundary label-splitting recursion.
///
/// `T` is the coefficient type. Instantiated for BigInt, std::uint64_t and
/// unsigned __int128; the machine types are exact only when
/// `fits<T>(spec)` holds, since every intermediate coefficient is bounded by
/// the final coefficient sum n_1! ... n_h!. An engine caches its base
/// matrices and is not thread-safe; use one per worker.
template <class T>
class FromSortedEngine {
 public:
  explicit FromSortedEngine(SortedSpec spec, SplitStrategy split = SplitStrategy::balanced);
  ~FromSortedEngine();
  FromSortedEngine(FromSortedEngine&&) noexcept;

  const SortedSpec& spec() const { return spec_; }

  /// Throws std::invalid_argument if `target` is not an arrangement of the spec.
  Polynomial<T> polynomial(const Deck& target);
  BoundaryPolyMatrix<T> boundary_matrix(const Deck& target);

  /// True when all coefficients for this spec fit in T.
  static bool fits(const SortedSpec& spec);

 private:
  struct Impl;
  SortedSpec spec_;
  SplitStrategy split_;
  std::unique_ptr<Impl> impl_;
};

extern template class FromSortedEngine<BigInt>;
extern template class FromSortedEngine<std::uint64_t>;
extern template class FromSortedEngine<unsigned __int128>;

/// Descent polynomial of the shuffles from spec's sorted deck to `target`.
DescentPolynomial poly_from_sorted(const SortedSpec& spec, const Deck& target,
                                   SplitStrategy split = SplitStrategy::balanced);

/// The full boundary matrix p_{i,j} for the same shuffle set.
BoundaryPolyMatrix<BigInt> boundary_matrix(const SortedSpec& spec, const Deck& target,
                                           SplitStrategy split = SplitStrategy::balanced);

/// Descent polynomial of the shuffles from `source` to spec's sorted deck:
/// x^{des(source)} times, per label, the multinomial over its block lengths
/// and the product of eta over those blocks.
DescentPolynomial poly_to_sorted(const Deck& source, const SortedSpec& spec);

/// sum_d c_d w[d] for c = poly_to_sorted(source, spec): the number of digit
/// sequences carrying `source` to the sorted deck. Used by the Monte Carlo loop.
BigInt weighted_to_sorted(const Deck& source, const SortedSpec& spec, const std::vector<BigInt>& weights);

inline constexpr std::size_t default_enumeration_bound = 9;

/// Enumerates all n! permutations. This is the independent oracle for the
/// recursions above; throws std::invalid_argument when n exceeds `bound`
/// or the two decks are not rearrangements of one another.
DescentPolynomial brute_force_poly(const Deck& from, const Deck& to,
                                   std::size_t bound = default_enumeration_bound);

/// Conversions between BigInt and the machine coefficient types.
template <class T>
T from_big(const BigInt& v);
template <class T>
BigInt to_big(const T& v);

template <class T>
DescentPolynomial to_big_poly(const Polynomial<T>& p) {
  std::vector<BigInt> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(to_big(v));
  return DescentPolynomial(std::move(c));
}

}  // namespace riffle
