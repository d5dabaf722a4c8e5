#include "riffle/equivalence.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace riffle {

namespace {

using Mask = std::uint32_t;  // bit k set when position k+1 holds a 2

std::size_t half_size(const Deck& d) {
  std::size_t ones = 0, twos = 0;
  for (Label l : d.labels()) {
    if (l == 1) ++ones;
    else if (l == 2) ++twos;
    else throw std::invalid_argument("deck must use labels 1 and 2 only");
  }
  if (ones != twos) throw std::invalid_argument("deck must hold equally many 1s and 2s");
  return ones;
}

Mask to_mask(const Deck& d) {
  Mask m = 0;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d.labels()[k] == 2) m |= Mask{1} << k;
  return m;
}

Deck from_mask(Mask m, std::size_t len) {
  std::vector<Label> l(len);
  for (std::size_t k = 0; k < len; ++k) l[k] = (m >> k) & 1 ? 2 : 1;
  return Deck(std::move(l));
}

// Star of positions [i, j) (0-based).
Mask star_range(Mask m, std::size_t i, std::size_t j) {
  Mask out = m;
  for (std::size_t k = i; k < j; ++k) {
    const std::size_t src = i + j - 1 - k;
    const Mask bit = ((m >> src) & 1) ^ 1;
    out = (out & ~(Mask{1} << k)) | (bit << k);
  }
  return out;
}

int popcount_range(Mask m, std::size_t i, std::size_t j) {
  Mask window = (j - i >= 32 ? ~Mask{0} : ((Mask{1} << (j - i)) - 1)) << i;
  return __builtin_popcount(m & window);
}

template <class Visit>
void for_each_neighbor(Mask m, std::size_t len, Relation rel, Visit&& visit) {
  if (rel == Relation::centered) {
    for (std::size_t s = 0; s + s < len; ++s) {
      const std::size_t i = s, j = len - s;
      if (2 * popcount_range(m, i, j) == static_cast<int>(j - i)) visit(star_range(m, i, j));
    }
  } else {
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = i + 2; j <= len; j += 2)
        if (2 * popcount_range(m, i, j) == static_cast<int>(j - i)) visit(star_range(m, i, j));
  }
}

void check_bound(std::size_t n, std::size_t bound) {
  if (n > bound) throw std::invalid_argument("n exceeds the closure bound");
  if (2 * n > 31) throw std::invalid_argument("closure supports at most 15 cards per label");
}

std::vector<Mask> closure_masks(Mask start, std::size_t len, Relation rel) {
  std::set<Mask> seen{start};
  std::deque<Mask> queue{start};
  while (!queue.empty()) {
    Mask m = queue.front();
    queue.pop_front();
    for_each_neighbor(m, len, rel, [&](Mask nb) {
      if (seen.insert(nb).second) queue.push_back(nb);
    });
  }
  return {seen.begin(), seen.end()};
}

DeckClass to_class(const std::vector<Mask>& masks, std::size_t len) {
  DeckClass c;
  for (Mask m : masks) c.members.push_back(from_mask(m, len));
  std::sort(c.members.begin(), c.members.end());
  return c;
}

}  // namespace

bool ClassCode::is_normal() const {
  long excess = 0;
  for (auto s : symbols) {
    if (s == CodeSymbol::one) ++excess;
    if (s == CodeSymbol::two) --excess;
    if (excess < 0) return false;
  }
  return true;
}

std::string to_string(const ClassCode& code) {
  std::string out;
  for (auto s : code.symbols) {
    if (!out.empty()) out += ',';
    switch (s) {
      case CodeSymbol::plus: out += '+'; break;
      case CodeSymbol::minus: out += '-'; break;
      case CodeSymbol::one: out += '1'; break;
      case CodeSymbol::two: out += '2'; break;
    }
  }
  return out;
}

ClassCode parse_code(const std::string& text) {
  ClassCode code;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == ',' || ch == ' ') continue;
    if (ch == '+') code.symbols.push_back(CodeSymbol::plus);
    else if (ch == '-') code.symbols.push_back(CodeSymbol::minus);
    else if (ch == '1') code.symbols.push_back(CodeSymbol::one);
    else if (ch == '2') code.symbols.push_back(CodeSymbol::two);
    else if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
      code.symbols.push_back(CodeSymbol::minus);
      i += 2;
    } else {
      throw std::invalid_argument("malformed class code: '" + text + "'");
    }
  }
  return code;
}

Deck star(const Deck& segment) {
  std::vector<Label> out(segment.labels().rbegin(), segment.labels().rend());
  for (Label& l : out) {
    if (l != 1 && l != 2) throw std::invalid_argument("star needs labels 1 and 2 only");
    l = 3 - l;
  }
  return Deck(std::move(out));
}

std::set<Deck> neighbors(const Deck& d, Relation rel) {
  half_size(d);
  if (d.size() > 31) throw std::invalid_argument("deck too long for neighbor enumeration");
  std::set<Deck> out{d};
  for_each_neighbor(to_mask(d), d.size(), rel, [&](Mask m) { out.insert(from_mask(m, d.size())); });
  return out;
}

std::set<Deck> neighbors_s3(const Deck& d) { return neighbors(d, Relation::centered); }
std::set<Deck> neighbors_s4(const Deck& d) { return neighbors(d, Relation::anywhere); }

DeckClass class_closure(const Deck& d, Relation rel, std::size_t bound) {
  const std::size_t n = half_size(d);
  check_bound(n, bound);
  return to_class(closure_masks(to_mask(d), d.size(), rel), d.size());
}

std::vector<DeckClass> all_classes(std::size_t n, Relation rel, std::size_t bound) {
  check_bound(n, bound);
  const std::size_t len = 2 * n;
  std::vector<char> seen(std::size_t{1} << len, 0);
  std::vector<DeckClass> out;
  // Masks in increasing order visit every balanced deck once.
  for (Mask m = 0; m < (Mask{1} << len); ++m) {
    if (static_cast<std::size_t>(__builtin_popcount(m)) != n || seen[m]) continue;
    auto members = closure_masks(m, len, rel);
    for (Mask x : members) seen[x] = 1;
    out.push_back(to_class(members, len));
  }
  std::sort(out.begin(), out.end(),
            [](const DeckClass& a, const DeckClass& b) { return a.representative() < b.representative(); });
  return out;
}

BigInt count_classes(std::size_t n, Relation rel, std::size_t bound) {
  return BigInt(static_cast<unsigned long>(all_classes(n, rel, bound).size()));
}

ClassCode raw_code_s3(const Deck& d) {
  const std::size_t n = half_size(d);
  ClassCode code;
  for (std::size_t x = n + 1; x <= 2 * n; ++x) {
    const Label here = d.at(x), mirror = d.at(2 * n - x + 1);
    if (here == 1 && mirror == 2) code.symbols.push_back(CodeSymbol::plus);
    else if (here == 2 && mirror == 1) code.symbols.push_back(CodeSymbol::minus);
    else if (here == 1) code.symbols.push_back(CodeSymbol::one);
    else code.symbols.push_back(CodeSymbol::two);
  }
  return code;
}

ClassCode normalize_code(const ClassCode& code) {
  ClassCode out = code;
  long excess = 0;
  std::size_t start = 0;  // first symbol after the last zero of the excess
  bool negative = false;
  for (std::size_t k = 0; k < out.symbols.size(); ++k) {
    const auto s = out.symbols[k];
    if (s != CodeSymbol::one && s != CodeSymbol::two) continue;
    if (excess == 0) {
      start = k;
      negative = s == CodeSymbol::two;
    }
    excess += s == CodeSymbol::one ? 1 : -1;
    if (excess == 0 && negative) {
      for (std::size_t t = start; t <= k; ++t) {
        if (out.symbols[t] == CodeSymbol::one) out.symbols[t] = CodeSymbol::two;
        else if (out.symbols[t] == CodeSymbol::two) out.symbols[t] = CodeSymbol::one;
      }
    }
  }
  return out;
}

ClassCode canonical_code_s3(const Deck& d) { return normalize_code(raw_code_s3(d)); }

BigInt catalan_class_count(std::size_t n) {
  if (n == 0) throw std::invalid_argument("catalan_class_count needs n >= 1");
  return binomial(2 * n + 2, n + 1) / BigInt(static_cast<unsigned long>(n + 2));
}

BigInt conjectured_s4_count(std::size_t n) {
  if (n == 0) throw std::invalid_argument("conjectured_s4_count needs n >= 1");
  BigInt v = BigInt(static_cast<unsigned long>(n + 3)) << n;
  return v >> 2;
}

Deck class_start_deck(std::size_t n, Relation rel) {
  std::vector<Label> l;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    if (rel == Relation::centered) l.push_back(k < n ? 1 : 2);
    else l.push_back(k % 2 == 0 ? 1 : 2);
  }
  return Deck(std::move(l));
}

}  // namespace riffle
