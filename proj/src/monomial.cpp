#include "nilalg/monomial.hpp"

#include <algorithm>
#include <unordered_set>

#include "nilalg/errors.hpp"

namespace nilalg {

Monomial::Monomial(std::size_t degree, std::vector<std::uint32_t> y_positions)
    : degree_(degree), ys_(std::move(y_positions)) {
  for (std::size_t k = 0; k < ys_.size(); ++k) {
    if (ys_[k] >= degree_ || (k > 0 && ys_[k] <= ys_[k - 1]))
      throw PreconditionError("monomial y-positions must be strictly increasing and < degree");
  }
}

Monomial Monomial::from_code(std::size_t degree, std::uint64_t code) {
  if (degree > 63) throw PreconditionError("monomial code requires degree <= 63");
  if (degree < 64 && (code >> degree) != 0) throw PreconditionError("monomial code out of range");
  Monomial m;
  m.degree_ = degree;
  for (std::size_t i = 0; i < degree; ++i)
    if ((code >> (degree - 1 - i)) & 1U) m.ys_.push_back(static_cast<std::uint32_t>(i));
  return m;
}

Monomial Monomial::parse(std::string_view word) {
  Monomial m;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    char c = word[i];
    if (c == 'x') {
      ++pos;
    } else if (c == 'y') {
      m.ys_.push_back(static_cast<std::uint32_t>(pos++));
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in word", i);
    }
  }
  m.degree_ = pos;
  return m;
}

std::uint64_t Monomial::code() const {
  if (degree_ > 63) throw PreconditionError("monomial code requires degree <= 63");
  std::uint64_t c = 0;
  for (auto y : ys_) c |= std::uint64_t{1} << (degree_ - 1 - y);
  return c;
}

char Monomial::letter(std::size_t i) const {
  return std::binary_search(ys_.begin(), ys_.end(), static_cast<std::uint32_t>(i)) ? 'y' : 'x';
}

Monomial Monomial::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > degree_) throw PreconditionError("monomial slice out of range");
  Monomial m;
  m.degree_ = length;
  auto lo = std::lower_bound(ys_.begin(), ys_.end(), static_cast<std::uint32_t>(offset));
  for (auto it = lo; it != ys_.end() && *it < offset + length; ++it)
    m.ys_.push_back(static_cast<std::uint32_t>(*it - offset));
  return m;
}

std::string Monomial::str() const {
  std::string s(degree_, 'x');
  for (auto y : ys_) s[y] = 'y';
  return s;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  std::size_t k = 0;
  for (; k < a.ys_.size() && k < b.ys_.size(); ++k) {
    // The word whose y comes first has a y where the other has an x.
    if (a.ys_[k] != b.ys_[k]) return b.ys_[k] <=> a.ys_[k];
  }
  return a.ys_.size() <=> b.ys_.size();
}

Monomial concat(const Monomial& a, const Monomial& b) {
  std::vector<std::uint32_t> ys = a.y_positions();
  ys.reserve(ys.size() + b.y_positions().size());
  for (auto y : b.y_positions()) ys.push_back(static_cast<std::uint32_t>(y + a.degree()));
  return Monomial(a.degree() + b.degree(), std::move(ys));
}

std::vector<Monomial> factors_of_length(const std::vector<Monomial>& words, std::size_t n) {
  std::unordered_set<Monomial, MonomialHash> seen;
  for (const auto& w : words) {
    if (w.degree() < n) continue;
    const std::size_t last = w.degree() - n;  // admissible offsets 0..last
    const auto& ys = w.y_positions();
    // Windows that avoid every y give x^n; only windows touching a y need slicing.
    std::size_t prev_end = 0;  // first offset not yet visited
    bool has_pure_x = false;
    std::size_t gap_start = 0;
    for (auto y : ys) {
      if (y >= gap_start + n) has_pure_x = true;
      gap_start = y + 1;
    }
    if (w.degree() >= gap_start + n) has_pure_x = true;
    if (has_pure_x) seen.insert(Monomial::x_power(n));
    if (n == 0) continue;
    for (auto y : ys) {
      std::size_t lo = y + 1 >= n ? y + 1 - n : 0;
      std::size_t hi = std::min<std::size_t>(y, last);
      lo = std::max(lo, prev_end);
      for (std::size_t o = lo; o <= hi; ++o) seen.insert(w.slice(o, n));
      if (hi + 1 > prev_end) prev_end = hi + 1;
    }
  }
  std::vector<Monomial> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

void normalize_words(std::vector<Monomial>& words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
}

bool contains_sorted(const std::vector<Monomial>& sorted, const Monomial& w) {
  return std::binary_search(sorted.begin(), sorted.end(), w);
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = std::hash<std::size_t>{}(m.degree()) * 0x9E3779B97F4A7C15ULL;
  for (auto y : m.y_positions()) h = (h ^ y) * 0x100000001B3ULL + 0x9E3779B97F4A7C15ULL;
  return h;
}

}  // namespace nilalg
