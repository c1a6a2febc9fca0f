#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace nilalg {

/// A word over {x, y}. Stored as its length plus the sorted positions of
/// the letter y, so the long x-heavy words of the construction stay small.
///
/// Coordinate convention: x = 0, y = 1, leftmost letter most significant.
/// For equal degrees, operator<=> is lex order with x < y, which coincides
/// with the order of code().
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::size_t degree, std::vector<std::uint32_t> y_positions);

  static Monomial from_code(std::size_t degree, std::uint64_t code);
  static Monomial parse(std::string_view word);
  static Monomial x_power(std::size_t n) { return Monomial(n, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<std::uint32_t>& y_positions() const noexcept { return ys_; }

  /// Binary reading of the word; requires degree <= 63.
  std::uint64_t code() const;
  char letter(std::size_t i) const;
  Monomial slice(std::size_t offset, std::size_t length) const;
  std::string str() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::size_t degree_ = 0;
  std::vector<std::uint32_t> ys_;
};

Monomial concat(const Monomial& a, const Monomial& b);
inline Monomial operator*(const Monomial& a, const Monomial& b) { return concat(a, b); }

/// All distinct length-n factors u of the given words (w = a u b), sorted.
std::vector<Monomial> factors_of_length(const std::vector<Monomial>& words, std::size_t n);

/// Sorted-set helpers over monomial lists.
void normalize_words(std::vector<Monomial>& words);
bool contains_sorted(const std::vector<Monomial>& sorted, const Monomial& w);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

}  // namespace nilalg
