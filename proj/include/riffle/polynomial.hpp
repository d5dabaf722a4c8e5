#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "riffle/bignum.hpp"

namespace riffle {

/// Polynomial with nonnegative coefficients; coeffs()[d] multiplies x^d.
///
/// The canonical form has no trailing zeros; the zero polynomial has an
/// empty coefficient vector. `T` is BigInt for the public API; the Monte Carlo
/// kernel instantiates it with machine integers when the totals provably fit.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> c) : coeffs_(c) { trim(); }
  explicit Polynomial(std::vector<T> c) : coeffs_(std::move(c)) { trim(); }

  static Polynomial monomial(std::size_t degree, T coeff = T(1)) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  const std::vector<T>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for zero.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  T operator[](std::size_t d) const { return d < coeffs_.size() ? coeffs_[d] : T(0); }

  T coefficient_sum() const {
    T s(0);
    for (const auto& c : coeffs_) s += c;
    return s;
  }

  Polynomial& operator+=(const Polynomial& o) {
    add_shifted(o, 0);
    return *this;
  }

  /// this += o * x^shift
  void add_shifted(const Polynomial& o, std::size_t shift) {
    if (o.is_zero()) return;
    if (coeffs_.size() < o.coeffs_.size() + shift) coeffs_.resize(o.coeffs_.size() + shift, T(0));
    for (std::size_t d = 0; d < o.coeffs_.size(); ++d) coeffs_[d + shift] += o.coeffs_[d];
  }

  /// this += a * b, schoolbook.
  void add_product(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return;
    const std::size_t len = a.coeffs_.size() + b.coeffs_.size() - 1;
    if (coeffs_.size() < len) coeffs_.resize(len, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }

  Polynomial shifted(std::size_t shift) const {
    Polynomial r;
    r.add_shifted(*this, shift);
    return r;
  }

  Polynomial& operator*=(const T& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.add_product(a, b);
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

/// Number of shuffles with d descents at coeffs()[d].
using DescentPolynomial = Polynomial<BigInt>;

/// Human-readable form such as "2x + 2x^2".
std::string to_string(const DescentPolynomial& p);

}  // namespace riffle
