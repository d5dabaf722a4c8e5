#include "riffle/eulerian.hpp"

#include <algorithm>
#include <stdexcept>

namespace riffle {

namespace {

BigInt entry(const std::vector<BigInt>& row, long d) {
  if (d < 0 || static_cast<std::size_t>(d) >= row.size()) return 0;
  return row[static_cast<std::size_t>(d)];
}

}  // namespace

EulerianTable::EulerianTable(std::size_t n_max) {
  eulerian_.push_back(Row{1});
  first_.emplace_back();
  std::lock_guard lock(mutex_);
  ensure(n_max);
}

const EulerianTable& EulerianTable::shared() {
  static const EulerianTable table;
  return table;
}

void EulerianTable::ensure(std::size_t n) const {
  for (std::size_t m = eulerian_.size(); m <= n; ++m) {
    const Row& prev = eulerian_[m - 1];
    Row row(m);
    for (std::size_t d = 0; d < m; ++d) {
      const long ld = static_cast<long>(d);
      row[d] = BigInt(static_cast<unsigned long>(d + 1)) * entry(prev, ld) +
               BigInt(static_cast<unsigned long>(m - d)) * entry(prev, ld - 1);
    }
    eulerian_.push_back(std::move(row));

    std::vector<Row> firsts(m, Row(m));
    for (std::size_t i = 1; i <= m; ++i) {
      Row& r = firsts[i - 1];
      for (std::size_t d = 0; d < m; ++d) {
        const long ld = static_cast<long>(d);
        if (d == 0) {
          r[d] = i == 1 ? 1 : 0;
        } else if (m == i) {
          r[d] = entry(eulerian_[m - 1], ld - 1);
        } else {
          const Row& p = first_[m - 1][i - 1];
          r[d] = BigInt(static_cast<unsigned long>(d + 1)) * entry(p, ld);
          if (m > d + 1) r[d] += BigInt(static_cast<unsigned long>(m - d - 1)) * entry(p, ld - 1);
        }
      }
    }
    first_.push_back(std::move(firsts));
  }
}

const EulerianTable::Row& EulerianTable::first_last_row(std::size_t n, std::size_t i, std::size_t j) const {
  const std::size_t n0 = std::max(i, j);
  auto& rows = first_last_[{i, j}];
  ensure(n);
  while (n0 + rows.size() <= n) {
    const std::size_t m = n0 + rows.size();
    Row r(m, BigInt(0));
    if (m == 1) {
      r[0] = 1;
    } else if (i != j) {
      for (std::size_t d = 0; d < m; ++d) {
        const long ld = static_cast<long>(d);
        if (d == 0) {
          r[d] = (i == 1 && j == m) ? 1 : 0;
        } else if (m > i && m > j) {
          const Row& p = rows.back();
          r[d] = BigInt(static_cast<unsigned long>(d)) * entry(p, ld);
          if (m > d + 1) r[d] += BigInt(static_cast<unsigned long>(m - d - 1)) * entry(p, ld - 1);
        } else if (m == i) {
          r[d] = entry(first_[m - 1][m - j - 1], ld - 1);
        } else {  // m == j
          r[d] = entry(first_[m - 1][i - 1], ld);
        }
      }
    }
    rows.push_back(std::move(r));
  }
  return rows[n - n0];
}

BigInt EulerianTable::eulerian(std::size_t n, long d) const {
  std::lock_guard lock(mutex_);
  ensure(n);
  return entry(eulerian_[n], d);
}

BigInt EulerianTable::first(std::size_t n, long d, std::size_t i) const {
  if (i < 1 || i > n) throw std::invalid_argument("eulerian_first: i out of range");
  std::lock_guard lock(mutex_);
  ensure(n);
  return entry(first_[n][i - 1], d);
}

BigInt EulerianTable::first_last(std::size_t n, long d, std::size_t i, std::size_t j) const {
  if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("eulerian_first_last: i or j out of range");
  std::lock_guard lock(mutex_);
  return entry(first_last_row(n, i, j), d);
}

DescentPolynomial EulerianTable::eta(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("eta: n must be positive");
  std::lock_guard lock(mutex_);
  ensure(n);
  return DescentPolynomial(eulerian_[n]);
}

DescentPolynomial EulerianTable::first_poly(std::size_t n, std::size_t i) const {
  if (i < 1 || i > n) throw std::invalid_argument("eulerian_first: i out of range");
  std::lock_guard lock(mutex_);
  ensure(n);
  return DescentPolynomial(first_[n][i - 1]);
}

DescentPolynomial EulerianTable::first_last_poly(std::size_t n, std::size_t i, std::size_t j) const {
  if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("eulerian_first_last: i or j out of range");
  std::lock_guard lock(mutex_);
  return DescentPolynomial(first_last_row(n, i, j));
}

BigInt eulerian(std::size_t n, long d) { return EulerianTable::shared().eulerian(n, d); }
BigInt eulerian_first(std::size_t n, long d, std::size_t i) { return EulerianTable::shared().first(n, d, i); }
BigInt eulerian_first_last(std::size_t n, long d, std::size_t i, std::size_t j) {
  return EulerianTable::shared().first_last(n, d, i, j);
}
DescentPolynomial eta(std::size_t n) { return EulerianTable::shared().eta(n); }

}  // namespace riffle
