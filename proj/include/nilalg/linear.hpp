#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilalg/bigint.hpp"
#include "nilalg/field.hpp"
#include "nilalg/monomial.hpp"

namespace nilalg {

/// A coordinate vector over GF(p). Vectors of H(n) have length 2^n and are
/// indexed by monomial code. For p = 2 the coordinates are bit-packed.
class DenseVector {
 public:
  DenseVector() = default;
  static DenseVector with_length(std::uint64_t length, std::uint32_t p);
  static DenseVector zeros(std::size_t degree, std::uint32_t p);
  static DenseVector unit(std::size_t degree, std::uint32_t p, std::uint64_t index);

  std::uint64_t length() const noexcept { return length_; }
  std::uint32_t prime() const noexcept { return p_; }
  /// log2(length); throws unless the length is a power of two.
  std::size_t degree() const;

  Scalar get(std::uint64_t i) const {
    if (p_ == 2) return static_cast<Scalar>((bits_[i >> 6] >> (i & 63)) & 1U);
    return vals_[i];
  }
  void set(std::uint64_t i, Scalar v);

  bool is_zero() const;
  std::optional<std::uint64_t> leading() const;
  std::optional<std::uint64_t> trailing() const;
  /// this += c * other
  void add_scaled(const DenseVector& other, Scalar c);
  void scale(Scalar c);
  Scalar dot(const DenseVector& other) const;
  std::size_t bytes() const noexcept;

  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    if (p_ == 2) {
      for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
          int b = __builtin_ctzll(word);
          fn(static_cast<std::uint64_t>(w * 64 + b), Scalar{1});
          word &= word - 1;
        }
      }
    } else {
      for (std::uint64_t i = 0; i < length_; ++i)
        if (vals_[i]) fn(i, static_cast<Scalar>(vals_[i]));
    }
  }

  /// Copy of coordinates [offset, offset + len).
  DenseVector block(std::uint64_t offset, std::uint64_t len) const;
  /// Writes `src` into coordinates [offset, offset + src.length()).
  void put_block(std::uint64_t offset, const DenseVector& src);

  /// Hex packing: for p = 2 nibble k holds coordinates 4k..4k+3 with 4k as
  /// the most significant bit; for p > 2 each coordinate takes two digits.
  std::string to_hex() const;
  static DenseVector from_hex(std::string_view hex, std::uint64_t length, std::uint32_t p);

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::uint64_t length_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> vals_;
};

/// Tensor (Kronecker) product: coordinate i*len(b)+j holds a_i b_j, which
/// matches concatenation of monomials under the code convention.
DenseVector kron(const DenseVector& a, const DenseVector& b);
DenseVector concat_vectors(const DenseVector& a, const DenseVector& b);

/// Incremental reduced echelon form. Forward mode pivots on the first
/// nonzero coordinate; reverse mode pivots on the last.
class Echelon {
 public:
  Echelon(std::uint64_t length, std::uint32_t p, bool reverse = false);

  void reduce(DenseVector& v) const;
  /// Returns true iff the rank grew.
  bool insert(DenseVector v);
  std::size_t rank() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == length_; }
  /// Rows sorted by ascending pivot, with their pivots.
  std::vector<DenseVector> take_sorted(std::vector<std::uint64_t>* pivots = nullptr) &&;

 private:
  std::uint64_t length_;
  std::uint32_t p_;
  bool reverse_;
  std::vector<DenseVector> rows_;
  std::vector<std::uint64_t> pivots_;
};

/// How a subspace of H(n) is stored.
///  dense:       reduced row-echelon basis (forward pivots)
///  annihilator: reduced echelon basis of the orthogonal complement (trailing pivots)
///  monomials:   spanned by the listed words
///  complement:  spanned by all words except the listed ones
/// Dense subspaces are kept in the smaller of the first two forms (ties: dense),
/// so equal spans have identical representations.
enum class Repr { dense, annihilator, monomials, complement };

const char* repr_name(Repr r);

class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t degree, std::uint32_t p = 2);
  static Subspace whole(std::size_t degree, std::uint32_t p = 2);
  static Subspace span_words(std::size_t degree, std::uint32_t p, std::vector<Monomial> words);
  static Subspace complement_words(std::size_t degree, std::uint32_t p, std::vector<Monomial> words);
  /// Span of arbitrary vectors of H(degree).
  static Subspace from_rows(std::size_t degree, std::uint32_t p, std::vector<DenseVector> rows);
  /// Common kernel of the given functionals.
  static Subspace from_functionals(std::size_t degree, std::uint32_t p,
                                   std::vector<DenseVector> functionals);

  std::size_t degree() const noexcept { return degree_; }
  std::uint32_t prime() const noexcept { return p_; }
  Repr repr() const noexcept { return repr_; }
  bool is_monomial() const noexcept { return repr_ == Repr::monomials || repr_ == Repr::complement; }
  bool is_dense() const noexcept { return !is_monomial(); }

  BigInt dim() const;
  BigInt codim() const;
  BigInt ambient_dim() const { return pow2(degree_); }

  /// Stored rows (dense / annihilator representations).
  const std::vector<DenseVector>& rows() const noexcept { return rows_; }
  /// Pivot coordinates of the stored rows.
  const std::vector<std::uint64_t>& pivots() const noexcept { return pivots_; }
  /// Sorted word list (monomials / complement representations).
  const std::vector<Monomial>& words() const noexcept { return words_; }

  /// Canonical dense form (requires the dense degree budget).
  Subspace to_dense() const;
  /// Monomial form if the space is monomial-spanned.
  std::optional<Subspace> to_monomial() const;

  /// An explicit basis (budget checked).
  std::vector<DenseVector> basis() const;
  /// An explicit basis of the orthogonal complement (budget checked).
  std::vector<DenseVector> annihilator() const;

  bool contains_word(const Monomial& w) const;
  /// True iff coordinate w vanishes on the whole space (e_w is orthogonal to it).
  bool coordinate_null(const Monomial& w) const;
  /// Some element of the space whose w-coordinate is nonzero (requires !coordinate_null(w)).
  DenseVector witness_at(const Monomial& w) const;
  /// Words whose coordinate is null: for the forward-pivot projection these are
  /// exactly the coordinates outside the non-pivot completion.
  Subspace nonpivot_coordinates() const;

 private:
  std::size_t degree_ = 0;
  std::uint32_t p_ = 2;
  Repr repr_ = Repr::monomials;
  std::vector<DenseVector> rows_;
  std::vector<std::uint64_t> pivots_;
  std::vector<Monomial> words_;

  friend Subspace canonical_from_primal(std::size_t, std::uint32_t, Echelon&&);
  friend Subspace canonical_from_dual(std::size_t, std::uint32_t, Echelon&&);
};

Subspace echelonize(const std::vector<DenseVector>& vectors);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& a, const DenseVector& v);
/// True iff b ⊆ a.
bool contains_space(const Subspace& a, const Subspace& b);
/// C with inner ⊕ C = outer, spanned inside the non-pivot coordinates of inner.
Subspace complement_within(const Subspace& inner, const Subspace& outer);
Subspace solve_constraints(std::size_t degree, std::uint32_t p,
                           const std::vector<DenseVector>& functionals);
bool same_space(const Subspace& a, const Subspace& b);

/// Vectors spanning { Σ λ_i x_i : <Σ λ_i x_i, f> = 0 for all f in functionals }.
std::vector<DenseVector> combos_annihilated(const std::vector<DenseVector>& xs,
                                            const std::vector<DenseVector>& functionals);
/// Kernel rows of an echelon matrix (either pivot direction).
std::vector<DenseVector> echelon_kernel(const std::vector<DenseVector>& rows,
                                        const std::vector<std::uint64_t>& pivots,
                                        std::uint64_t length, std::uint32_t p);

/// Text form of a vector as a polynomial over the words of its degree.
std::string format_vector(const DenseVector& v);

}  // namespace nilalg
