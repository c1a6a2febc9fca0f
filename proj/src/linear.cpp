#include "nilalg/linear.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "nilalg/errors.hpp"

namespace nilalg {

// ---------------------------------------------------------------- DenseVector

DenseVector DenseVector::with_length(std::uint64_t length, std::uint32_t p) {
  DenseVector v;
  v.length_ = length;
  v.p_ = p;
  if (p == 2)
    v.bits_.assign((length + 63) / 64, 0);
  else
    v.vals_.assign(length, 0);
  return v;
}

DenseVector DenseVector::zeros(std::size_t degree, std::uint32_t p) {
  require_dense_degree(degree, "dense vector");
  return with_length(std::uint64_t{1} << degree, p);
}

DenseVector DenseVector::unit(std::size_t degree, std::uint32_t p, std::uint64_t index) {
  DenseVector v = zeros(degree, p);
  v.set(index, 1);
  return v;
}

std::size_t DenseVector::degree() const {
  if (length_ == 0 || (length_ & (length_ - 1)) != 0)
    throw PreconditionError("vector length is not a power of two");
  return static_cast<std::size_t>(__builtin_ctzll(length_));
}

void DenseVector::set(std::uint64_t i, Scalar v) {
  if (p_ == 2) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v & 1U)
      bits_[i >> 6] |= mask;
    else
      bits_[i >> 6] &= ~mask;
  } else {
    vals_[i] = static_cast<std::uint8_t>(v % p_);
  }
}

bool DenseVector::is_zero() const {
  if (p_ == 2) return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  return std::all_of(vals_.begin(), vals_.end(), [](std::uint8_t w) { return w == 0; });
}

std::optional<std::uint64_t> DenseVector::leading() const {
  if (p_ == 2) {
    for (std::size_t w = 0; w < bits_.size(); ++w)
      if (bits_[w]) return w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits_[w]));
  } else {
    for (std::uint64_t i = 0; i < length_; ++i)
      if (vals_[i]) return i;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> DenseVector::trailing() const {
  if (p_ == 2) {
    for (std::size_t w = bits_.size(); w-- > 0;)
      if (bits_[w]) return w * 64 + 63 - static_cast<std::uint64_t>(__builtin_clzll(bits_[w]));
  } else {
    for (std::uint64_t i = length_; i-- > 0;)
      if (vals_[i]) return i;
  }
  return std::nullopt;
}

void DenseVector::add_scaled(const DenseVector& other, Scalar c) {
  if (other.length_ != length_ || other.p_ != p_) throw DegreeMismatch("vector length mismatch");
  c %= p_;
  if (c == 0) return;
  if (p_ == 2) {
    for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= other.bits_[w];
  } else {
    for (std::uint64_t i = 0; i < length_; ++i)
      if (other.vals_[i]) vals_[i] = static_cast<std::uint8_t>((vals_[i] + c * other.vals_[i]) % p_);
  }
}

void DenseVector::scale(Scalar c) {
  c %= p_;
  if (p_ == 2) {
    if (c == 0) std::fill(bits_.begin(), bits_.end(), 0);
    return;
  }
  for (auto& x : vals_) x = static_cast<std::uint8_t>((x * c) % p_);
}

Scalar DenseVector::dot(const DenseVector& other) const {
  if (other.length_ != length_ || other.p_ != p_) throw DegreeMismatch("vector length mismatch");
  if (p_ == 2) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) acc ^= bits_[w] & other.bits_[w];
    return static_cast<Scalar>(__builtin_popcountll(acc) & 1);
  }
  std::uint64_t acc = 0;
  for (std::uint64_t i = 0; i < length_; ++i) acc += static_cast<std::uint64_t>(vals_[i]) * other.vals_[i];
  return static_cast<Scalar>(acc % p_);
}

std::size_t DenseVector::bytes() const noexcept {
  return bits_.size() * sizeof(std::uint64_t) + vals_.size() + sizeof(DenseVector);
}

DenseVector DenseVector::block(std::uint64_t offset, std::uint64_t len) const {
  if (offset + len > length_) throw PreconditionError("block out of range");
  DenseVector out = with_length(len, p_);
  if (p_ != 2) {
    std::copy(vals_.begin() + static_cast<std::ptrdiff_t>(offset),
              vals_.begin() + static_cast<std::ptrdiff_t>(offset + len), out.vals_.begin());
    return out;
  }
  const std::uint64_t s = offset & 63, base = offset >> 6;
  for (std::size_t k = 0; k < out.bits_.size(); ++k) {
    std::uint64_t lo = bits_[base + k] >> s;
    std::uint64_t hi = (s && base + k + 1 < bits_.size()) ? bits_[base + k + 1] << (64 - s) : 0;
    out.bits_[k] = lo | hi;
  }
  if (len & 63) out.bits_.back() &= (std::uint64_t{1} << (len & 63)) - 1;
  return out;
}

void DenseVector::put_block(std::uint64_t offset, const DenseVector& src) {
  if (offset + src.length_ > length_ || src.p_ != p_) throw PreconditionError("block out of range");
  if (p_ != 2) {
    std::copy(src.vals_.begin(), src.vals_.end(), vals_.begin() + static_cast<std::ptrdiff_t>(offset));
    return;
  }
  if ((offset & 63) == 0 && (src.length_ & 63) == 0) {
    std::copy(src.bits_.begin(), src.bits_.end(), bits_.begin() + static_cast<std::ptrdiff_t>(offset >> 6));
    return;
  }
  for (std::uint64_t i = 0; i < src.length_; ++i) set(offset + i, src.get(i));
}

std::string DenseVector::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  if (p_ == 2) {
    std::uint64_t nibbles = (length_ + 3) / 4;
    out.reserve(nibbles);
    for (std::uint64_t k = 0; k < nibbles; ++k) {
      unsigned v = 0;
      for (unsigned b = 0; b < 4; ++b) {
        std::uint64_t i = 4 * k + b;
        if (i < length_ && get(i)) v |= 8U >> b;
      }
      out.push_back(digits[v]);
    }
  } else {
    out.reserve(2 * length_);
    for (auto x : vals_) {
      out.push_back(digits[x >> 4]);
      out.push_back(digits[x & 15]);
    }
  }
  return out;
}

DenseVector DenseVector::from_hex(std::string_view hex, std::uint64_t length, std::uint32_t p) {
  auto val = [&](std::size_t pos) -> unsigned {
    char c = hex[pos];
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw ParseError("invalid hex digit", pos);
  };
  DenseVector v = with_length(length, p);
  if (p == 2) {
    if (hex.size() != (length + 3) / 4) throw ParseError("hex row has wrong length", hex.size());
    for (std::size_t k = 0; k < hex.size(); ++k) {
      unsigned d = val(k);
      for (unsigned b = 0; b < 4; ++b) {
        std::uint64_t i = 4 * k + b;
        if (d & (8U >> b)) {
          if (i >= length) throw ParseError("hex row sets padding bits", k);
          v.set(i, 1);
        }
      }
    }
  } else {
    if (hex.size() != 2 * length) throw ParseError("hex row has wrong length", hex.size());
    for (std::uint64_t i = 0; i < length; ++i) {
      unsigned d = val(2 * i) * 16 + val(2 * i + 1);
      if (d >= p) throw ParseError("coordinate not reduced mod p", 2 * i);
      v.vals_[i] = static_cast<std::uint8_t>(d);
    }
  }
  return v;
}

DenseVector kron(const DenseVector& a, const DenseVector& b) {
  if (a.prime() != b.prime()) throw PreconditionError("field mismatch in tensor product");
  DenseVector out = DenseVector::with_length(a.length() * b.length(), a.prime());
  a.for_each_nonzero([&](std::uint64_t i, Scalar c) {
    if (c == 1) {
      out.put_block(i * b.length(), b);
    } else {
      DenseVector s = b;
      s.scale(c);
      out.put_block(i * b.length(), s);
    }
  });
  return out;
}

DenseVector concat_vectors(const DenseVector& a, const DenseVector& b) {
  DenseVector out = DenseVector::with_length(a.length() + b.length(), a.prime());
  out.put_block(0, a);
  out.put_block(a.length(), b);
  return out;
}

// -------------------------------------------------------------------- Echelon

Echelon::Echelon(std::uint64_t length, std::uint32_t p, bool reverse)
    : length_(length), p_(p), reverse_(reverse) {}

void Echelon::reduce(DenseVector& v) const {
  const Field F(p_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = v.get(pivots_[r]);
    if (c) v.add_scaled(rows_[r], F.neg(c));
  }
}

bool Echelon::insert(DenseVector v) {
  if (v.length() != length_ || v.prime() != p_) throw DegreeMismatch("echelon: vector length mismatch");
  if (full()) return false;
  reduce(v);
  auto piv = reverse_ ? v.trailing() : v.leading();
  if (!piv) return false;
  const Field F(p_);
  Scalar lead = v.get(*piv);
  if (lead != 1) v.scale(F.inv(lead));
  for (auto& row : rows_) {
    Scalar c = row.get(*piv);
    if (c) row.add_scaled(v, F.neg(c));
  }
  require_bytes((rows_.size() + 1) * v.bytes(), "echelon basis");
  rows_.push_back(std::move(v));
  pivots_.push_back(*piv);
  return true;
}

std::vector<DenseVector> Echelon::take_sorted(std::vector<std::uint64_t>* pivots) && {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<DenseVector> out;
  out.reserve(rows_.size());
  if (pivots) pivots->clear();
  for (auto i : order) {
    out.push_back(std::move(rows_[i]));
    if (pivots) pivots->push_back(pivots_[i]);
  }
  rows_.clear();
  pivots_.clear();
  return out;
}

// ------------------------------------------------------------------- helpers

const char* repr_name(Repr r) {
  switch (r) {
    case Repr::dense: return "dense";
    case Repr::annihilator: return "annihilator";
    case Repr::monomials: return "monomials";
    case Repr::complement: return "complement";
  }
  return "?";
}

std::vector<DenseVector> echelon_kernel(const std::vector<DenseVector>& rows,
                                        const std::vector<std::uint64_t>& pivots,
                                        std::uint64_t length, std::uint32_t p) {
  // For an echelon matrix with pivots π_i and unit pivot columns, the kernel is
  // spanned by v_c = e_c - Σ_i A_i[c] e_{π_i} over the free columns c.
  // Those vectors are themselves reduced, pivoting on c in the opposite direction.
  const Field F(p);
  std::vector<std::int64_t> free_index(length, -1);
  std::vector<char> is_pivot(length, 0);
  for (auto pv : pivots) is_pivot[pv] = 1;
  std::vector<DenseVector> out;
  const std::uint64_t count = length - pivots.size();
  require_bytes(count * (DenseVector::with_length(0, p).bytes() + (p == 2 ? length / 8 : length)),
                "kernel basis");
  out.reserve(count);
  for (std::uint64_t c = 0; c < length; ++c) {
    if (is_pivot[c]) continue;
    free_index[c] = static_cast<std::int64_t>(out.size());
    DenseVector v = DenseVector::with_length(length, p);
    v.set(c, 1);
    out.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].for_each_nonzero([&](std::uint64_t c, Scalar val) {
      if (c == pivots[i]) return;
      out[static_cast<std::size_t>(free_index[c])].set(pivots[i], F.neg(val));
    });
  }
  return out;
}

namespace {

std::uint64_t ambient_length(std::size_t degree) {
  require_dense_degree(degree, "dense subspace");
  return std::uint64_t{1} << degree;
}

/// Coefficient vectors λ (as vectors of length xs.size()) spanning the left
/// kernel of the matrix whose rows are gs.
std::vector<DenseVector> left_kernel(const std::vector<DenseVector>& gs, std::uint64_t width,
                                     std::uint32_t p) {
  const std::uint64_t r = gs.size();
  Echelon ech(width + r, p, false);
  for (std::uint64_t i = 0; i < r; ++i) {
    DenseVector aug = DenseVector::with_length(r, p);
    aug.set(i, 1);
    ech.insert(concat_vectors(gs[i], aug));
  }
  std::vector<std::uint64_t> piv;
  auto rows = std::move(ech).take_sorted(&piv);
  std::vector<DenseVector> out;
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (piv[k] >= width) out.push_back(rows[k].block(width, r));
  return out;
}

std::vector<DenseVector> apply_combos(const std::vector<DenseVector>& xs,
                                      const std::vector<DenseVector>& combos) {
  std::vector<DenseVector> out;
  for (const auto& lam : combos) {
    DenseVector v = DenseVector::with_length(xs.front().length(), xs.front().prime());
    lam.for_each_nonzero([&](std::uint64_t i, Scalar c) { v.add_scaled(xs[i], c); });
    out.push_back(std::move(v));
  }
  return out;
}

/// Basis of rowspace(xs) ∩ rowspace(ys) via residues modulo ys.
std::vector<DenseVector> intersect_rowspaces(const std::vector<DenseVector>& xs,
                                             const std::vector<DenseVector>& ys, std::uint64_t length,
                                             std::uint32_t p) {
  if (xs.empty() || ys.empty()) return {};
  Echelon ey(length, p, false);
  for (const auto& y : ys) ey.insert(y);
  std::vector<DenseVector> residues;
  residues.reserve(xs.size());
  for (const auto& x : xs) {
    DenseVector r = x;
    ey.reduce(r);
    residues.push_back(std::move(r));
  }
  return apply_combos(xs, left_kernel(residues, length, p));
}

void check_compatible(const Subspace& a, const Subspace& b) {
  if (a.degree() != b.degree())
    throw DegreeMismatch("subspaces of H(" + std::to_string(a.degree()) + ") and H(" +
                         std::to_string(b.degree()) + ")");
  if (a.prime() != b.prime()) throw PreconditionError("subspaces over different fields");
}

std::vector<Monomial> set_union(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  std::vector<Monomial> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
std::vector<Monomial> set_inter(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  std::vector<Monomial> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
std::vector<Monomial> set_minus(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  std::vector<Monomial> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// All words of a small degree not in the sorted list.
std::vector<Monomial> complement_list(std::size_t degree, const std::vector<Monomial>& words) {
  if (degree > 24) throw BudgetExceeded("enumerating the complement of a word set in degree " +
                                        std::to_string(degree));
  std::vector<Monomial> out;
  std::size_t k = 0;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << degree); ++c) {
    Monomial m = Monomial::from_code(degree, c);
    if (k < words.size() && words[k] == m) {
      ++k;
      continue;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

std::vector<DenseVector> combos_annihilated(const std::vector<DenseVector>& xs,
                                            const std::vector<DenseVector>& functionals) {
  if (xs.empty()) return {};
  if (functionals.empty()) return xs;
  const std::uint32_t p = xs.front().prime();
  const std::uint64_t c = functionals.size();
  std::vector<DenseVector> gs;
  gs.reserve(xs.size());
  for (const auto& x : xs) {
    DenseVector g = DenseVector::with_length(c, p);
    for (std::uint64_t k = 0; k < c; ++k) g.set(k, x.dot(functionals[k]));
    gs.push_back(std::move(g));
  }
  return apply_combos(xs, left_kernel(gs, c, p));
}

// ------------------------------------------------------------------- Subspace

Subspace canonical_from_primal(std::size_t degree, std::uint32_t p, Echelon&& ech) {
  const std::uint64_t n = std::uint64_t{1} << degree;
  Subspace s;
  s.degree_ = degree;
  s.p_ = p;
  std::vector<std::uint64_t> piv;
  auto rows = std::move(ech).take_sorted(&piv);
  if (rows.size() <= n - rows.size()) {
    s.repr_ = Repr::dense;
    s.rows_ = std::move(rows);
    s.pivots_ = std::move(piv);
  } else {
    s.repr_ = Repr::annihilator;
    s.rows_ = echelon_kernel(rows, piv, n, p);
    s.pivots_.clear();
    for (const auto& r : s.rows_) s.pivots_.push_back(*r.trailing());
  }
  return s;
}

Subspace canonical_from_dual(std::size_t degree, std::uint32_t p, Echelon&& ech) {
  const std::uint64_t n = std::uint64_t{1} << degree;
  Subspace s;
  s.degree_ = degree;
  s.p_ = p;
  std::vector<std::uint64_t> piv;
  auto rows = std::move(ech).take_sorted(&piv);
  const std::uint64_t dim = n - rows.size();
  if (dim <= rows.size()) {
    s.repr_ = Repr::dense;
    s.rows_ = echelon_kernel(rows, piv, n, p);
    s.pivots_.clear();
    for (const auto& r : s.rows_) s.pivots_.push_back(*r.leading());
  } else {
    s.repr_ = Repr::annihilator;
    s.rows_ = std::move(rows);
    s.pivots_ = std::move(piv);
  }
  return s;
}

namespace {
Subspace primal_space(std::size_t degree, std::uint32_t p, const std::vector<DenseVector>& rows) {
  Echelon e(ambient_length(degree), p, false);
  for (const auto& r : rows) e.insert(r);
  return canonical_from_primal(degree, p, std::move(e));
}
Subspace dual_space(std::size_t degree, std::uint32_t p, const std::vector<DenseVector>& rows) {
  Echelon e(ambient_length(degree), p, true);
  for (const auto& r : rows) e.insert(r);
  return canonical_from_dual(degree, p, std::move(e));
}
}  // namespace

Subspace Subspace::zero(std::size_t degree, std::uint32_t p) { return span_words(degree, p, {}); }
Subspace Subspace::whole(std::size_t degree, std::uint32_t p) { return complement_words(degree, p, {}); }

Subspace Subspace::span_words(std::size_t degree, std::uint32_t p, std::vector<Monomial> words) {
  Field check(p);
  (void)check;
  for (const auto& w : words)
    if (w.degree() != degree) throw DegreeMismatch("word " + w.str() + " not of degree " + std::to_string(degree));
  normalize_words(words);
  Subspace s;
  s.degree_ = degree;
  s.p_ = p;
  s.repr_ = Repr::monomials;
  s.words_ = std::move(words);
  return s;
}

Subspace Subspace::complement_words(std::size_t degree, std::uint32_t p, std::vector<Monomial> words) {
  Subspace s = span_words(degree, p, std::move(words));
  s.repr_ = Repr::complement;
  return s;
}

Subspace Subspace::from_rows(std::size_t degree, std::uint32_t p, std::vector<DenseVector> rows) {
  for (const auto& r : rows)
    if (r.length() != ambient_length(degree) || r.prime() != p) throw DegreeMismatch("row of wrong degree or field");
  return primal_space(degree, p, rows);
}

Subspace Subspace::from_functionals(std::size_t degree, std::uint32_t p, std::vector<DenseVector> functionals) {
  for (const auto& r : functionals)
    if (r.length() != ambient_length(degree) || r.prime() != p)
      throw DegreeMismatch("functional of wrong degree or field");
  return dual_space(degree, p, functionals);
}

BigInt Subspace::dim() const {
  switch (repr_) {
    case Repr::dense: return rows_.size();
    case Repr::annihilator: return ambient_dim() - rows_.size();
    case Repr::monomials: return words_.size();
    case Repr::complement: return ambient_dim() - words_.size();
  }
  return 0;
}

BigInt Subspace::codim() const { return ambient_dim() - dim(); }

Subspace Subspace::to_dense() const {
  if (is_dense()) return *this;
  const std::uint64_t n = ambient_length(degree_);
  const bool span = repr_ == Repr::monomials;
  const std::uint64_t d = span ? words_.size() : n - words_.size();
  // Listed words are the basis (span) or the annihilator (complement); the
  // opposite side consists of the remaining unit vectors.
  const bool want_primal = d <= n - d;
  const bool listed = span == want_primal;
  Subspace s;
  s.degree_ = degree_;
  s.p_ = p_;
  s.repr_ = want_primal ? Repr::dense : Repr::annihilator;
  auto add = [&](std::uint64_t c) {
    s.rows_.push_back(DenseVector::unit(degree_, p_, c));
    s.pivots_.push_back(c);
  };
  if (listed) {
    for (const auto& w : words_) add(w.code());
  } else {
    std::size_t k = 0;
    for (std::uint64_t c = 0; c < n; ++c) {
      if (k < words_.size() && words_[k].code() == c) {
        ++k;
        continue;
      }
      add(c);
    }
  }
  return s;
}

std::optional<Subspace> Subspace::to_monomial() const {
  if (is_monomial()) return *this;
  std::vector<Monomial> ws;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    bool unit = true;
    std::size_t count = 0;
    rows_[k].for_each_nonzero([&](std::uint64_t, Scalar) { ++count; });
    if (count != 1) unit = false;
    if (!unit) return std::nullopt;
    ws.push_back(Monomial::from_code(degree_, pivots_[k]));
  }
  if (repr_ == Repr::dense) return span_words(degree_, p_, std::move(ws));
  return complement_words(degree_, p_, std::move(ws));
}

std::vector<DenseVector> Subspace::basis() const {
  switch (repr_) {
    case Repr::dense: return rows_;
    case Repr::annihilator: return echelon_kernel(rows_, pivots_, ambient_length(degree_), p_);
    default: {
      Subspace d = to_dense();
      return d.basis();
    }
  }
}

std::vector<DenseVector> Subspace::annihilator() const {
  switch (repr_) {
    case Repr::annihilator: return rows_;
    case Repr::dense: return echelon_kernel(rows_, pivots_, ambient_length(degree_), p_);
    default: {
      Subspace d = to_dense();
      return d.annihilator();
    }
  }
}

bool Subspace::contains_word(const Monomial& w) const {
  if (w.degree() != degree_) throw DegreeMismatch("word degree mismatch");
  if (repr_ == Repr::monomials) return contains_sorted(words_, w);
  if (repr_ == Repr::complement) return !contains_sorted(words_, w);
  return contains(*this, DenseVector::unit(degree_, p_, w.code()));
}

bool Subspace::coordinate_null(const Monomial& w) const {
  if (w.degree() != degree_) throw DegreeMismatch("word degree mismatch");
  switch (repr_) {
    case Repr::monomials: return !contains_sorted(words_, w);
    case Repr::complement: return contains_sorted(words_, w);
    case Repr::dense: {
      const std::uint64_t c = w.code();
      return std::all_of(rows_.begin(), rows_.end(), [&](const DenseVector& r) { return r.get(c) == 0; });
    }
    case Repr::annihilator: {
      Echelon e(ambient_length(degree_), p_, true);
      for (const auto& r : rows_) e.insert(r);
      DenseVector u = DenseVector::unit(degree_, p_, w.code());
      e.reduce(u);
      return u.is_zero();
    }
  }
  return true;
}

DenseVector Subspace::witness_at(const Monomial& w) const {
  if (is_monomial()) return DenseVector::unit(degree_, p_, w.code());
  const std::uint64_t c = w.code();
  if (repr_ == Repr::dense) {
    for (const auto& r : rows_)
      if (r.get(c)) return r;
  } else {
    // Kernel vectors v_f = e_f - Σ A_i[f] e_{τ_i}: either c itself is free or
    // some free column's vector touches pivot c.
    for (const auto& v : echelon_kernel(rows_, pivots_, ambient_length(degree_), p_))
      if (v.get(c)) return v;
  }
  throw PreconditionError("coordinate " + w.str() + " vanishes on the subspace");
}

Subspace Subspace::nonpivot_coordinates() const {
  switch (repr_) {
    case Repr::monomials: return complement_words(degree_, p_, words_);
    case Repr::complement: return span_words(degree_, p_, words_);
    case Repr::dense:
    case Repr::annihilator: {
      std::vector<Monomial> ws;
      for (auto pv : pivots_) ws.push_back(Monomial::from_code(degree_, pv));
      // Forward pivots of a primal basis are excluded; the trailing pivots of an
      // annihilator basis are exactly the non-pivot coordinates of the space.
      if (repr_ == Repr::dense) return complement_words(degree_, p_, std::move(ws));
      return span_words(degree_, p_, std::move(ws));
    }
  }
  return *this;
}

// ------------------------------------------------------------ free functions

Subspace echelonize(const std::vector<DenseVector>& vectors) {
  if (vectors.empty()) return Subspace::zero(0, 2);
  const std::size_t degree = vectors.front().degree();
  const std::uint32_t p = vectors.front().prime();
  for (const auto& v : vectors)
    if (v.length() != vectors.front().length() || v.prime() != p)
      throw DegreeMismatch("echelonize: vectors of mixed degrees");
  return primal_space(degree, p, vectors);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  const std::size_t d = a.degree();
  const std::uint32_t p = a.prime();
  if (a.is_monomial() && b.is_monomial()) {
    const bool sa = a.repr() == Repr::monomials, sb = b.repr() == Repr::monomials;
    if (sa && sb) return Subspace::span_words(d, p, set_union(a.words(), b.words()));
    if (!sa && !sb) return Subspace::complement_words(d, p, set_inter(a.words(), b.words()));
    const auto& span = sa ? a.words() : b.words();
    const auto& comp = sa ? b.words() : a.words();
    return Subspace::complement_words(d, p, set_minus(comp, span));
  }
  const Subspace A = a.to_dense(), B = b.to_dense();
  const std::uint64_t n = ambient_length(d);
  if (A.repr() == Repr::dense && B.repr() == Repr::dense) {
    Echelon e(n, p, false);
    for (const auto& r : A.rows()) e.insert(r);
    for (const auto& r : B.rows()) e.insert(r);
    return canonical_from_primal(d, p, std::move(e));
  }
  if (A.repr() == Repr::annihilator && B.repr() == Repr::annihilator)
    return dual_space(d, p, intersect_rowspaces(A.rows(), B.rows(), n, p));
  const Subspace& P = A.repr() == Repr::dense ? A : B;
  const Subspace& D = A.repr() == Repr::dense ? B : A;
  return dual_space(d, p, combos_annihilated(D.rows(), P.rows()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  const std::size_t d = a.degree();
  const std::uint32_t p = a.prime();
  if (a.is_monomial() && b.is_monomial()) {
    const bool sa = a.repr() == Repr::monomials, sb = b.repr() == Repr::monomials;
    if (sa && sb) return Subspace::span_words(d, p, set_inter(a.words(), b.words()));
    if (!sa && !sb) return Subspace::complement_words(d, p, set_union(a.words(), b.words()));
    const auto& span = sa ? a.words() : b.words();
    const auto& comp = sa ? b.words() : a.words();
    return Subspace::span_words(d, p, set_minus(span, comp));
  }
  const Subspace A = a.to_dense(), B = b.to_dense();
  const std::uint64_t n = ambient_length(d);
  if (A.repr() == Repr::dense && B.repr() == Repr::dense)
    return primal_space(d, p, intersect_rowspaces(A.rows(), B.rows(), n, p));
  if (A.repr() == Repr::annihilator && B.repr() == Repr::annihilator) {
    Echelon e(n, p, true);
    for (const auto& r : A.rows()) e.insert(r);
    for (const auto& r : B.rows()) e.insert(r);
    return canonical_from_dual(d, p, std::move(e));
  }
  const Subspace& P = A.repr() == Repr::dense ? A : B;
  const Subspace& D = A.repr() == Repr::dense ? B : A;
  return primal_space(d, p, combos_annihilated(P.rows(), D.rows()));
}

bool contains(const Subspace& a, const DenseVector& v) {
  if (a.degree() > 63 || v.length() != (std::uint64_t{1} << a.degree()) || v.prime() != a.prime())
    throw DegreeMismatch("vector degree mismatch");
  switch (a.repr()) {
    case Repr::monomials: {
      bool ok = true;
      v.for_each_nonzero([&](std::uint64_t c, Scalar) {
        if (ok && !contains_sorted(a.words(), Monomial::from_code(a.degree(), c))) ok = false;
      });
      return ok;
    }
    case Repr::complement:
      return std::all_of(a.words().begin(), a.words().end(),
                         [&](const Monomial& w) { return v.get(w.code()) == 0; });
    case Repr::dense: {
      DenseVector r = v;
      const Field F(a.prime());
      for (std::size_t k = 0; k < a.rows().size(); ++k) {
        Scalar c = r.get(a.pivots()[k]);
        if (c) r.add_scaled(a.rows()[k], F.neg(c));
      }
      return r.is_zero();
    }
    case Repr::annihilator:
      return std::all_of(a.rows().begin(), a.rows().end(), [&](const DenseVector& f) { return f.dot(v) == 0; });
  }
  return false;
}

bool contains_space(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  const std::size_t d = a.degree();
  if (a.is_monomial() && b.is_monomial()) {
    const bool sa = a.repr() == Repr::monomials, sb = b.repr() == Repr::monomials;
    if (sa && sb) return std::includes(a.words().begin(), a.words().end(), b.words().begin(), b.words().end());
    if (!sa && sb) return set_inter(a.words(), b.words()).empty();
    if (!sa && !sb) return std::includes(b.words().begin(), b.words().end(), a.words().begin(), a.words().end());
    if (b.dim() > a.dim()) return false;
    auto ws = complement_list(d, b.words());
    return std::includes(a.words().begin(), a.words().end(), ws.begin(), ws.end());
  }
  if (b.dim() > a.dim()) return false;
  const Subspace B = b.to_dense();
  if (B.repr() == Repr::dense)
    return std::all_of(B.rows().begin(), B.rows().end(), [&](const DenseVector& r) { return contains(a, r); });
  // b ⊆ a iff a^⊥ ⊆ b^⊥.
  const Subspace A = a.to_dense();
  if (A.repr() == Repr::dense) {
    const auto basis = B.basis();
    return std::all_of(basis.begin(), basis.end(), [&](const DenseVector& r) { return contains(A, r); });
  }
  Echelon e(ambient_length(d), a.prime(), true);
  for (const auto& r : B.rows()) e.insert(r);
  for (auto r : A.rows()) {
    e.reduce(r);
    if (!r.is_zero()) return false;
  }
  return true;
}

Subspace complement_within(const Subspace& inner, const Subspace& outer) {
  check_compatible(inner, outer);
  if (!contains_space(outer, inner)) throw PreconditionError("complement_within: inner is not contained in outer");
  return intersect(outer, inner.nonpivot_coordinates());
}

Subspace solve_constraints(std::size_t degree, std::uint32_t p, const std::vector<DenseVector>& functionals) {
  return Subspace::from_functionals(degree, p, functionals);
}

bool same_space(const Subspace& a, const Subspace& b) {
  if (a.degree() != b.degree() || a.prime() != b.prime()) return false;
  if (a.dim() != b.dim()) return false;
  if (a.is_monomial() && b.is_monomial()) {
    if (a.repr() == b.repr()) return a.words() == b.words();
    return contains_space(a, b);
  }
  const Subspace A = a.to_dense(), B = b.to_dense();
  return A.repr() == B.repr() && A.pivots() == B.pivots() && A.rows() == B.rows();
}

std::string format_vector(const DenseVector& v) {
  const std::size_t d = v.degree();
  std::string out;
  v.for_each_nonzero([&](std::uint64_t c, Scalar s) {
    if (!out.empty()) out += "+";
    if (s != 1) out += std::to_string(s) + ":";
    out += d == 0 ? std::string("1") : Monomial::from_code(d, c).str();
  });
  return out.empty() ? "0" : out;
}

}  // namespace nilalg
