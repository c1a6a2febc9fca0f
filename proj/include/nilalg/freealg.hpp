#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilalg/field.hpp"
#include "nilalg/linear.hpp"
#include "nilalg/monomial.hpp"

namespace nilalg {

/// A homogeneous polynomial: nonzero coefficients over words of one degree.
class HomPoly {
 public:
  explicit HomPoly(std::size_t degree = 0, std::uint32_t p = 2);
  static HomPoly monomial(const Monomial& m, std::uint32_t p = 2, Scalar c = 1);
  static HomPoly from_dense(const DenseVector& v);

  std::size_t degree() const noexcept { return degree_; }
  std::uint32_t prime() const noexcept { return p_; }
  const std::map<Monomial, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c·m, dropping the term if it cancels.
  void add_term(const Monomial& m, Scalar c);
  DenseVector to_dense() const;

  friend bool operator==(const HomPoly&, const HomPoly&) = default;

 private:
  std::size_t degree_;
  std::uint32_t p_;
  std::map<Monomial, Scalar> terms_;
};

HomPoly operator+(const HomPoly& a, const HomPoly& b);
/// Graded product; throws BudgetExceeded beyond the configured term limit.
HomPoly mul(const HomPoly& a, const HomPoly& b);
HomPoly power(const HomPoly& a, unsigned e);

/// A polynomial as a map degree -> homogeneous component.
class GeneralPoly {
 public:
  explicit GeneralPoly(std::uint32_t p = 2) : p_(p) {}
  explicit GeneralPoly(const HomPoly& h);

  std::uint32_t prime() const noexcept { return p_; }
  const std::map<std::size_t, HomPoly>& components() const noexcept { return comps_; }
  bool is_zero() const noexcept { return comps_.empty(); }
  /// Largest degree of a nonzero component (0 for the zero polynomial).
  std::size_t degree() const noexcept { return comps_.empty() ? 0 : comps_.rbegin()->first; }
  bool is_homogeneous() const noexcept { return comps_.size() <= 1; }

  void add(const HomPoly& h);

  friend bool operator==(const GeneralPoly&, const GeneralPoly&) = default;

 private:
  std::uint32_t p_;
  std::map<std::size_t, HomPoly> comps_;
};

GeneralPoly operator+(const GeneralPoly& a, const GeneralPoly& b);
GeneralPoly mul(const GeneralPoly& a, const GeneralPoly& b);
GeneralPoly power(const GeneralPoly& a, unsigned e);

/// Grammar: terms joined by '+', each an optional decimal "c:" coefficient
/// (reduced mod p) followed by a word over {x, y} ("1" is the empty word);
/// whitespace is ignored and "0" is the zero polynomial.
GeneralPoly parse_poly(std::string_view text, std::uint32_t p = 2);
/// Canonical text: ascending degree, lex order within a degree, unit
/// coefficients omitted.
std::string format_poly(const GeneralPoly& f);
std::string format_poly(const HomPoly& f);

/// The tensor product X_1 ⊗ ... ⊗ X_k ⊆ H(d_1 + ... + d_k) of subspaces,
/// kept unexpanded so that containment can be decided without materializing it.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<Subspace> factors);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Subspace>& factors() const noexcept { return factors_; }
  bool is_zero() const noexcept { return zero_; }

  /// The product as a subspace (monomial when every factor is monomial).
  Subspace materialize() const;
  /// nullopt when the product lies in target; otherwise a product of factor
  /// elements outside it, written as the factors joined by "·".
  std::optional<std::string> contained_in(const Subspace& target) const;

 private:
  std::vector<Subspace> factors_;
  std::size_t degree_ = 0;
  std::uint32_t p_ = 2;
  bool zero_ = false;
};

Subspace space_mul(const Subspace& a, const Subspace& b);

}  // namespace nilalg
