#include "riffle/descent_polynomials.hpp"

#include <algorithm>
#include <array>
#include <type_traits>
#include <numeric>
#include <stdexcept>

#include "riffle/eulerian.hpp"

namespace riffle {

template <>
BigInt from_big<BigInt>(const BigInt& v) {
  return v;
}
template <>
std::uint64_t from_big<std::uint64_t>(const BigInt& v) {
  if (!mpz_fits_ulong_p(v.get_mpz_t())) throw std::overflow_error("coefficient exceeds 64 bits");
  return mpz_get_ui(v.get_mpz_t());
}
template <>
unsigned __int128 from_big<unsigned __int128>(const BigInt& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 128 || v < 0) throw std::overflow_error("coefficient exceeds 128 bits");
  BigInt hi = v >> 64;
  BigInt lo = v - (hi << 64);
  return (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) | mpz_get_ui(lo.get_mpz_t());
}

template <>
BigInt to_big<BigInt>(const BigInt& v) {
  return v;
}
template <>
BigInt to_big<std::uint64_t>(const std::uint64_t& v) {
  BigInt r;
  mpz_set_ui(r.get_mpz_t(), v);
  return r;
}
template <>
BigInt to_big<unsigned __int128>(const unsigned __int128& v) {
  BigInt hi = to_big<std::uint64_t>(static_cast<std::uint64_t>(v >> 64));
  return (hi << 64) + to_big<std::uint64_t>(static_cast<std::uint64_t>(v));
}

template <class T>
struct FromSortedEngine<T>::Impl {
  // Base matrices for a single label with n cards, in four reduced shapes:
  // [0] full n x n, [1] summed over i (1 x n), [2] summed over j (n x 1),
  // [3] summed over both (1 x 1, eta_n).
  std::map<std::size_t, std::array<BoundaryPolyMatrix<T>, 4>> base;
  // positions[c - 1]: 1-based positions of label c in the current target.
  std::vector<std::vector<std::size_t>> positions;

  const BoundaryPolyMatrix<T>& base_matrix(std::size_t n, bool sum_first, bool sum_last) {
    auto it = base.find(n);
    if (it == base.end()) {
      const auto& table = EulerianTable::shared();
      std::array<BoundaryPolyMatrix<T>, 4> m{BoundaryPolyMatrix<T>(n, n), BoundaryPolyMatrix<T>(1, n),
                                             BoundaryPolyMatrix<T>(n, 1), BoundaryPolyMatrix<T>(1, 1)};
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
          DescentPolynomial big = table.first_last_poly(n, i, j);
          std::vector<T> c;
          for (const auto& v : big.coeffs()) c.push_back(from_big<T>(v));
          Polynomial<T> p(std::move(c));
          m[0].at(i, j) = p;
          m[1].at(1, j) += p;
          m[2].at(i, 1) += p;
          m[3].at(1, 1) += p;
        }
      }
      it = base.emplace(n, std::move(m)).first;
    }
    return it->second[(sum_first ? 1 : 0) + (sum_last ? 2 : 0)];
  }

  Label split_point(Label lo, Label hi, SplitStrategy s) const {
    switch (s) {
      case SplitStrategy::leftmost: return lo;
      case SplitStrategy::rightmost: return hi - 1;
      case SplitStrategy::balanced: break;
    }
    return lo + (hi - lo) / 2;
  }

  // Boundary matrix for labels [lo, hi]. Rows index the lo-cards (or are
  // summed to one row), columns index the hi-cards (or are summed).
  BoundaryPolyMatrix<T> node(Label lo, Label hi, bool sum_first, bool sum_last, SplitStrategy s) {
    if (lo == hi) return base_matrix(positions[lo - 1].size(), sum_first, sum_last);

    const Label e = split_point(lo, hi, s);
    BoundaryPolyMatrix<T> q = node(lo, e, sum_first, false, s);
    BoundaryPolyMatrix<T> r = node(e + 1, hi, false, sum_last, s);
    const auto& pe = positions[e - 1];
    const auto& pf = positions[e];
    const std::size_t nk = pe.size(), nl = pf.size(), ni = q.rows(), nj = r.cols();

    // prefix[t][j] = sum_{l < t} r(l, j); suffix[t][j] = sum_{l >= t} r(l, j)
    std::vector<std::vector<Polynomial<T>>> prefix(nl + 1, std::vector<Polynomial<T>>(nj));
    std::vector<std::vector<Polynomial<T>>> suffix(nl + 1, std::vector<Polynomial<T>>(nj));
    for (std::size_t l = 0; l < nl; ++l)
      for (std::size_t j = 0; j < nj; ++j) prefix[l + 1][j] = prefix[l][j] + r.at(l + 1, j + 1);
    for (std::size_t l = nl; l-- > 0;)
      for (std::size_t j = 0; j < nj; ++j) suffix[l][j] = suffix[l + 1][j] + r.at(l + 1, j + 1);

    BoundaryPolyMatrix<T> p(ni, nj);
    std::vector<Polynomial<T>> crossing(nj);
    for (std::size_t k = 0; k < nk; ++k) {
      // f-cards above the k-th e-card contribute a descent at the seam.
      const std::size_t t = static_cast<std::size_t>(std::lower_bound(pf.begin(), pf.end(), pe[k]) - pf.begin());
      for (std::size_t j = 0; j < nj; ++j) {
        crossing[j] = suffix[t][j];
        crossing[j].add_shifted(prefix[t][j], 1);
      }
      for (std::size_t i = 1; i <= ni; ++i)
        for (std::size_t j = 1; j <= nj; ++j) p.at(i, j).add_product(q.at(i, k + 1), crossing[j - 1]);
    }
    return p;
  }

  void load(const SortedSpec& spec, const Deck& target) {
    if (!is_arrangement_of(target, spec))
      throw std::invalid_argument("target deck is not an arrangement of the sorted spec");
    positions.assign(spec.labels(), {});
    for (std::size_t pos = 0; pos < target.size(); ++pos) positions[target.labels()[pos] - 1].push_back(pos + 1);
  }
};

template <class T>
FromSortedEngine<T>::FromSortedEngine(SortedSpec spec, SplitStrategy split)
    : spec_(std::move(spec)), split_(split), impl_(std::make_unique<Impl>()) {
  if (!fits(spec_)) throw std::overflow_error("coefficient type too narrow for this spec");
}

template <class T>
FromSortedEngine<T>::~FromSortedEngine() = default;

template <class T>
FromSortedEngine<T>::FromSortedEngine(FromSortedEngine&&) noexcept = default;

template <class T>
Polynomial<T> FromSortedEngine<T>::polynomial(const Deck& target) {
  impl_->load(spec_, target);
  return impl_->node(1, static_cast<Label>(spec_.labels()), true, true, split_).at(1, 1);
}

template <class T>
BoundaryPolyMatrix<T> FromSortedEngine<T>::boundary_matrix(const Deck& target) {
  impl_->load(spec_, target);
  return impl_->node(1, static_cast<Label>(spec_.labels()), false, false, split_);
}

template <class T>
bool FromSortedEngine<T>::fits(const SortedSpec& spec) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return true;
  } else {
    BigInt total = 1;
    for (auto c : spec.counts()) total *= factorial(c);
    return mpz_sizeinbase(total.get_mpz_t(), 2) <= sizeof(T) * 8 - 1;
  }
}

template class FromSortedEngine<BigInt>;
template class FromSortedEngine<std::uint64_t>;
template class FromSortedEngine<unsigned __int128>;

DescentPolynomial poly_from_sorted(const SortedSpec& spec, const Deck& target, SplitStrategy split) {
  return FromSortedEngine<BigInt>(spec, split).polynomial(target);
}

BoundaryPolyMatrix<BigInt> boundary_matrix(const SortedSpec& spec, const Deck& target, SplitStrategy split) {
  return FromSortedEngine<BigInt>(spec, split).boundary_matrix(target);
}

DescentPolynomial poly_to_sorted(const Deck& source, const SortedSpec& spec) {
  if (!is_arrangement_of(source, spec))
    throw std::invalid_argument("source deck is not an arrangement of the sorted spec");
  const auto& table = EulerianTable::shared();
  DescentPolynomial result = DescentPolynomial::monomial(descents_of_deck(source));
  auto labels = source.labels();
  for (Label c = 1; c <= spec.labels(); ++c) {
    BigInt multinomial = factorial(spec.count(c));
    DescentPolynomial block_product{BigInt(1)};
    for (std::size_t k = 0; k < labels.size();) {
      if (labels[k] != c) {
        ++k;
        continue;
      }
      std::size_t run = 0;
      while (k < labels.size() && labels[k] == c) ++run, ++k;
      multinomial /= factorial(run);
      if (run > 1) block_product = block_product * table.eta(run);
    }
    block_product *= multinomial;
    result = result * block_product;
  }
  return result;
}

BigInt weighted_to_sorted(const Deck& source, const SortedSpec& spec, const std::vector<BigInt>& weights) {
  DescentPolynomial p = poly_to_sorted(source, spec);
  BigInt sum = 0;
  for (std::size_t d = 0; d < p.coeffs().size(); ++d) {
    if (d >= weights.size()) throw std::invalid_argument("weight vector shorter than polynomial");
    sum += p.coeffs()[d] * weights[d];
  }
  return sum;
}

DescentPolynomial brute_force_poly(const Deck& from, const Deck& to, std::size_t bound) {
  const std::size_t n = from.size();
  if (to.size() != n) throw std::invalid_argument("decks differ in size");
  if (n > bound) throw std::invalid_argument("deck size exceeds the enumeration bound");
  std::vector<Label> a(from.labels().begin(), from.labels().end());
  std::vector<Label> b(to.labels().begin(), to.labels().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw std::invalid_argument("decks are not rearrangements of one another");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<BigInt> counts(n == 0 ? 1 : n, BigInt(0));
  do {
    bool maps = true;
    for (std::size_t i = 0; i < n && maps; ++i) maps = from.labels()[i] == to.labels()[perm[i]];
    if (!maps) continue;
    std::size_t des = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (perm[i] > perm[i + 1]) ++des;
    ++counts[des];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return DescentPolynomial(std::move(counts));
}

std::string to_string(const DescentPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t d = 0; d < p.coeffs().size(); ++d) {
    const BigInt& c = p.coeffs()[d];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (d == 0 || c != 1) out += c.get_str();
    if (d >= 1) out += "x";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

}  // namespace riffle
