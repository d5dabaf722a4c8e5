#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "riffle/bignum.hpp"
#include "riffle/polynomial.hpp"

namespace riffle {

/// Memoized Eulerian numbers <n,d> and the variants that pin the first
/// value (<n,d>_i) or both the first and last values (<n,d>_{i,j}).
///
/// Rows up to `n_max` of the first two tables are built eagerly; the
/// two-index table grows lazily per (i, j). All queries are safe to call
/// from several threads. Out-of-range d yields 0.
class EulerianTable {
 public:
  explicit EulerianTable(std::size_t n_max = 52);

  EulerianTable(const EulerianTable&) = delete;
  EulerianTable& operator=(const EulerianTable&) = delete;

  /// Number of permutations of S_n with d descents.
  BigInt eulerian(std::size_t n, long d) const;
  /// ... with pi(1) = i. Requires 1 <= i <= n.
  BigInt first(std::size_t n, long d, std::size_t i) const;
  /// ... with pi(1) = i and pi(n) = j. Requires 1 <= i, j <= n.
  BigInt first_last(std::size_t n, long d, std::size_t i, std::size_t j) const;

  /// eta_n(x) = sum_d <n,d> x^d, for n >= 1.
  DescentPolynomial eta(std::size_t n) const;
  DescentPolynomial first_poly(std::size_t n, std::size_t i) const;
  DescentPolynomial first_last_poly(std::size_t n, std::size_t i, std::size_t j) const;

  /// Process-wide instance used by the free functions below.
  static const EulerianTable& shared();

 private:
  using Row = std::vector<BigInt>;

  void ensure(std::size_t n) const;  // caller holds mutex_
  const Row& first_last_row(std::size_t n, std::size_t i, std::size_t j) const;  // caller holds mutex_

  mutable std::mutex mutex_;
  mutable std::vector<Row> eulerian_;            // [n][d]
  mutable std::vector<std::vector<Row>> first_;  // [n][i-1][d]
  // (i, j) -> rows for n = max(i, j), max(i, j) + 1, ...
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<Row>> first_last_;
};

BigInt eulerian(std::size_t n, long d);
BigInt eulerian_first(std::size_t n, long d, std::size_t i);
BigInt eulerian_first_last(std::size_t n, long d, std::size_t i, std::size_t j);
DescentPolynomial eta(std::size_t n);

}  // namespace riffle
