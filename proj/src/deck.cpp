#include "riffle/deck.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace riffle {

Deck::Deck(std::vector<Label> labels) : labels_(std::move(labels)) {
  for (Label l : labels_)
    if (l == 0) throw std::invalid_argument("deck labels must be positive");
}

Label Deck::at(std::size_t pos) const {
  if (pos == 0 || pos > labels_.size()) throw std::out_of_range("deck position out of range");
  return labels_[pos - 1];
}

Label Deck::max_label() const {
  return labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end());
}

SortedSpec::SortedSpec(std::vector<std::size_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("sorted spec needs at least one label");
  for (auto c : counts_) {
    if (c == 0) throw std::invalid_argument("sorted spec counts must be positive");
    total_ += c;
  }
}

Deck SortedSpec::sorted_deck() const {
  std::vector<Label> out;
  out.reserve(total_);
  for (std::size_t c = 0; c < counts_.size(); ++c) out.insert(out.end(), counts_[c], static_cast<Label>(c + 1));
  return Deck(std::move(out));
}

Deck SortedSpec::reversed_deck() const {
  std::vector<Label> out;
  out.reserve(total_);
  for (std::size_t c = counts_.size(); c-- > 0;) out.insert(out.end(), counts_[c], static_cast<Label>(c + 1));
  return Deck(std::move(out));
}

Shuffle::Shuffle(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
  std::vector<bool> seen(map_.size() + 1, false);
  for (auto v : map_) {
    if (v == 0 || v > map_.size() || seen[v]) throw std::invalid_argument("shuffle is not a permutation");
    seen[v] = true;
  }
}

Shuffle Shuffle::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i + 1;
  return Shuffle(std::move(m));
}

std::size_t Shuffle::descents() const {
  std::size_t d = 0;
  for (std::size_t i = 0; i + 1 < map_.size(); ++i)
    if (map_[i] > map_[i + 1]) ++d;
  return d;
}

Shuffle Shuffle::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i] - 1] = i + 1;
  return Shuffle(std::move(inv));
}

Shuffle Shuffle::after(const Shuffle& first) const {
  if (first.size() != size()) throw std::invalid_argument("shuffle sizes differ");
  std::vector<std::size_t> m(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) m[i] = map_[first.map_[i] - 1];
  return Shuffle(std::move(m));
}

namespace {

std::size_t parse_number(std::string_view tok, std::string_view text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
    throw std::invalid_argument("malformed deck: '" + std::string(text) + "'");
  return v;
}

}  // namespace

Deck parse_deck(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  const auto is_sep = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) || ch == ','; };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  if (tokens.empty()) throw std::invalid_argument("empty deck");

  std::vector<Label> labels;
  // A lone token made only of digits with several characters is the bare form.
  if (tokens.size() == 1 && tokens[0].find('^') == std::string_view::npos && tokens[0].size() > 1 &&
      text.find(',') == std::string_view::npos) {
    for (char ch : tokens[0]) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("malformed deck: '" + std::string(text) + "'");
      labels.push_back(static_cast<Label>(ch - '0'));
    }
  } else {
    for (auto tok : tokens) {
      auto caret = tok.find('^');
      std::size_t label = parse_number(tok.substr(0, caret), text);
      std::size_t reps = caret == std::string_view::npos ? 1 : parse_number(tok.substr(caret + 1), text);
      if (reps == 0) throw std::invalid_argument("zero repetition in deck: '" + std::string(text) + "'");
      labels.insert(labels.end(), reps, static_cast<Label>(label));
    }
  }
  if (labels.empty()) throw std::invalid_argument("empty deck");
  for (Label l : labels)
    if (l == 0) throw std::invalid_argument("deck labels must be positive");
  return Deck(std::move(labels));
}

std::string format_deck(const Deck& d) {
  std::string out;
  auto labels = d.labels();
  for (std::size_t i = 0; i < labels.size();) {
    std::size_t j = i;
    while (j < labels.size() && labels[j] == labels[i]) ++j;
    if (!out.empty()) out += ' ';
    out += std::to_string(labels[i]);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  // A lone multi-digit label would otherwise read back as the bare form.
  if (out.size() > 1 && out.find_first_of(" ^") == std::string::npos) out += "^1";
  return out;
}

std::string format_deck_literal(const Deck& d) {
  std::string out;
  for (Label l : d.labels()) {
    if (!out.empty()) out += ',';
    out += std::to_string(l);
  }
  // A lone multi-digit label would read back as a bare digit string.
  if (d.size() == 1 && d.at(1) > 9) out += "^1";
  return out;
}

SortedSpec spec_of(const Deck& d) {
  std::vector<std::size_t> counts(d.max_label(), 0);
  for (Label l : d.labels()) ++counts[l - 1];
  for (auto c : counts)
    if (c == 0) throw std::invalid_argument("deck labels must be exactly 1..h");
  return SortedSpec(std::move(counts));
}

bool is_arrangement_of(const Deck& d, const SortedSpec& spec) {
  if (d.size() != spec.cards() || d.max_label() != spec.labels()) return false;
  std::vector<std::size_t> counts(spec.labels(), 0);
  for (Label l : d.labels()) ++counts[l - 1];
  return std::equal(counts.begin(), counts.end(), spec.counts().begin());
}

std::size_t position_index(const Deck& d, std::size_t i, Label c) {
  if (i == 0) throw std::invalid_argument("card index is 1-based");
  std::size_t seen = 0;
  for (std::size_t pos = 0; pos < d.size(); ++pos)
    if (d.labels()[pos] == c && ++seen == i) return pos + 1;
  throw std::invalid_argument("deck has fewer than " + std::to_string(i) + " cards labeled " + std::to_string(c));
}

std::vector<std::size_t> positions_of(const Deck& d, Label c) {
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < d.size(); ++pos)
    if (d.labels()[pos] == c) out.push_back(pos + 1);
  return out;
}

std::size_t descents_of_deck(const Deck& d) {
  auto l = d.labels();
  std::size_t n = 0;
  for (std::size_t k = 0; k + 1 < l.size(); ++k)
    if (l[k] > l[k + 1]) ++n;
  return n;
}

Deck restrict_labels(const Deck& d, Label lo, Label hi) {
  if (lo > hi) throw std::invalid_argument("restrict_labels: lo > hi");
  std::vector<Label> out;
  for (Label l : d.labels())
    if (l >= lo && l <= hi) out.push_back(l);
  return Deck(std::move(out));
}

Deck apply_shuffle(const Deck& d, const Shuffle& pi) {
  if (d.size() != pi.size()) throw std::invalid_argument("deck and shuffle sizes differ");
  std::vector<Label> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[pi.mapping()[i] - 1] = d.labels()[i];
  return Deck(std::move(out));
}

Deck apply_inverse_shuffle(const Deck& d, const Shuffle& pi) {
  if (d.size() != pi.size()) throw std::invalid_argument("deck and shuffle sizes differ");
  std::vector<Label> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d.labels()[pi.mapping()[i] - 1];
  return Deck(std::move(out));
}

BigInt deck_count(const SortedSpec& spec) {
  BigInt r = factorial(spec.cards());
  for (auto c : spec.counts()) r /= factorial(c);
  return r;
}

}  // namespace riffle
