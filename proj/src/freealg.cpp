#include "nilalg/freealg.hpp"

#include <algorithm>
#include <functional>

#include "nilalg/errors.hpp"

namespace nilalg {

// ------------------------------------------------------------------- HomPoly

HomPoly::HomPoly(std::size_t degree, std::uint32_t p) : degree_(degree), p_(p) { Field check(p); }

HomPoly HomPoly::monomial(const Monomial& m, std::uint32_t p, Scalar c) {
  HomPoly h(m.degree(), p);
  h.add_term(m, c);
  return h;
}

HomPoly HomPoly::from_dense(const DenseVector& v) {
  HomPoly h(v.degree(), v.prime());
  v.for_each_nonzero([&](std::uint64_t c, Scalar s) { h.terms_.emplace(Monomial::from_code(h.degree_, c), s); });
  return h;
}

void HomPoly::add_term(const Monomial& m, Scalar c) {
  if (m.degree() != degree_) throw DegreeMismatch("term " + m.str() + " in a polynomial of degree " + std::to_string(degree_));
  const Field F(p_);
  c %= p_;
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = F.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

DenseVector HomPoly::to_dense() const {
  DenseVector v = DenseVector::zeros(degree_, p_);
  for (const auto& [m, c] : terms_) v.set(m.code(), c);
  return v;
}

HomPoly operator+(const HomPoly& a, const HomPoly& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("adding polynomials of different degrees");
  HomPoly out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, c);
  return out;
}

HomPoly mul(const HomPoly& a, const HomPoly& b) {
  if (a.prime() != b.prime()) throw PreconditionError("field mismatch");
  const Field F(a.prime());
  if (a.terms().size() * b.terms().size() > limits().max_terms)
    throw BudgetExceeded("polynomial product would exceed the term limit");
  HomPoly out(a.degree() + b.degree(), a.prime());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_term(concat(ma, mb), F.mul(ca, cb));
  return out;
}

HomPoly power(const HomPoly& a, unsigned e) {
  if (e == 0) throw PreconditionError("power exponent must be positive");
  HomPoly out = a;
  for (unsigned k = 1; k < e; ++k) out = mul(out, a);
  return out;
}

// --------------------------------------------------------------- GeneralPoly

GeneralPoly::GeneralPoly(const HomPoly& h) : p_(h.prime()) { add(h); }

void GeneralPoly::add(const HomPoly& h) {
  if (h.prime() != p_) throw PreconditionError("field mismatch");
  if (h.is_zero()) return;
  auto it = comps_.find(h.degree());
  if (it == comps_.end()) {
    comps_.emplace(h.degree(), h);
    return;
  }
  it->second = it->second + h;
  if (it->second.is_zero()) comps_.erase(it);
}

GeneralPoly operator+(const GeneralPoly& a, const GeneralPoly& b) {
  GeneralPoly out = a;
  for (const auto& [d, h] : b.components()) out.add(h);
  return out;
}

GeneralPoly mul(const GeneralPoly& a, const GeneralPoly& b) {
  GeneralPoly out(a.prime());
  for (const auto& [da, ha] : a.components())
    for (const auto& [db, hb] : b.components()) out.add(mul(ha, hb));
  return out;
}

GeneralPoly power(const GeneralPoly& a, unsigned e) {
  if (e == 0) throw PreconditionError("power exponent must be positive");
  GeneralPoly out = a;
  for (unsigned k = 1; k < e; ++k) out = mul(out, a);
  return out;
}

// ------------------------------------------------------------- text format

GeneralPoly parse_poly(std::string_view text, std::uint32_t p) {
  const Field F(p);
  std::string compact;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r') continue;
    compact.push_back(text[i]);
    where.push_back(i);
  }
  auto at = [&](std::size_t k) { return k < where.size() ? where[k] : text.size(); };
  if (compact.empty()) throw ParseError("empty polynomial", 0);
  GeneralPoly out(p);
  if (compact == "0") return out;
  std::size_t k = 0;
  while (true) {
    const std::size_t start = k;
    std::size_t colon = std::string::npos;
    std::size_t end = k;
    while (end < compact.size() && compact[end] != '+') {
      if (compact[end] == ':' && colon == std::string::npos) colon = end;
      ++end;
    }
    if (end == start) throw ParseError("empty term", at(start));
    Scalar coef = 1;
    std::size_t word_start = start;
    if (colon != std::string::npos) {
      if (colon == start) throw ParseError("missing coefficient before ':'", at(start));
      std::uint64_t c = 0;
      for (std::size_t q = start; q < colon; ++q) {
        if (compact[q] < '0' || compact[q] > '9') throw ParseError("coefficient must be decimal", at(q));
        c = (c * 10 + static_cast<std::uint64_t>(compact[q] - '0')) % p;
      }
      coef = static_cast<Scalar>(c);
      word_start = colon + 1;
    }
    if (word_start == end) throw ParseError("missing word", at(word_start));
    Monomial m;
    if (end - word_start == 1 && compact[word_start] == '1') {
      m = Monomial::x_power(0);
    } else {
      for (std::size_t q = word_start; q < end; ++q)
        if (compact[q] != 'x' && compact[q] != 'y')
          throw ParseError(std::string("unexpected character '") + compact[q] + "'", at(q));
      m = Monomial::parse(std::string_view(compact).substr(word_start, end - word_start));
    }
    out.add(HomPoly::monomial(m, p, coef));
    if (end == compact.size()) break;
    k = end + 1;
    if (k == compact.size()) throw ParseError("dangling '+'", at(end));
  }
  return out;
}

std::string format_poly(const HomPoly& f) { return format_poly(GeneralPoly(f)); }

std::string format_poly(const GeneralPoly& f) {
  std::string out;
  for (const auto& [d, h] : f.components()) {
    for (const auto& [m, c] : h.terms()) {
      if (!out.empty()) out += "+";
      if (c != 1) out += std::to_string(c) + ":";
      out += d == 0 ? std::string("1") : m.str();
    }
  }
  return out.empty() ? "0" : out;
}

// -------------------------------------------------------------- ProductSpace

namespace {

std::vector<Monomial> support_words(const Subspace& s) {
  if (s.repr() == Repr::monomials) return s.words();
  if (s.degree() > 24) throw BudgetExceeded("enumerating the support of a complement space in degree " +
                                            std::to_string(s.degree()));
  std::vector<Monomial> out;
  const std::uint64_t n = std::uint64_t{1} << s.degree();
  std::size_t k = 0;
  for (std::uint64_t c = 0; c < n; ++c) {
    Monomial m = Monomial::from_code(s.degree(), c);
    if (k < s.words().size() && s.words()[k] == m) {
      ++k;
      continue;
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string join_path(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += "·";
    out += s;
  }
  return out;
}

/// Contraction of s (indexed by first-factor ⊗ rest) against x on the first factor.
DenseVector contract_first(const DenseVector& s, const DenseVector& x) {
  const std::uint64_t rest = s.length() / x.length();
  DenseVector out = DenseVector::with_length(rest, s.prime());
  x.for_each_nonzero([&](std::uint64_t i, Scalar c) { out.add_scaled(s.block(i * rest, rest), c); });
  return out;
}

struct DenseFactor {
  Subspace space;  // canonical dense form
  mutable std::optional<std::vector<DenseVector>> basis_cache;
  mutable std::optional<Echelon> dual_echelon;

  const std::vector<DenseVector>& basis() const {
    if (!basis_cache) basis_cache = space.basis();
    return *basis_cache;
  }
  /// True iff s annihilates the factor.
  bool annihilates(const DenseVector& s) const {
    if (space.repr() == Repr::dense)
      return std::all_of(space.rows().begin(), space.rows().end(),
                         [&](const DenseVector& r) { return r.dot(s) == 0; });
    if (!dual_echelon) {
      dual_echelon.emplace(s.length(), s.prime(), true);
      for (const auto& r : space.rows()) dual_echelon->insert(r);
    }
    DenseVector t = s;
    dual_echelon->reduce(t);
    return t.is_zero();
  }
};

}  // namespace

ProductSpace::ProductSpace(std::vector<Subspace> factors) {
  if (!factors.empty()) p_ = factors.front().prime();
  for (auto& f : factors) {
    if (f.prime() != p_) throw PreconditionError("product of subspaces over different fields");
    degree_ += f.degree();
    if (f.dim() == 0) zero_ = true;
    if (f.degree() == 0) continue;  // K contributes nothing
    factors_.push_back(std::move(f));
  }
}

Subspace ProductSpace::materialize() const {
  if (zero_) return Subspace::zero(degree_, p_);
  if (factors_.empty()) return Subspace::whole(degree_, p_);
  if (factors_.size() == 1) return factors_.front();
  const BigInt total = pow2(degree_);
  BigInt span_size = 1;
  for (const auto& f : factors_) span_size *= f.dim();
  const bool all_monomial = std::all_of(factors_.begin(), factors_.end(), [](const Subspace& f) { return f.is_monomial(); });

  if (all_monomial) {
    const BigInt comp_size = total - span_size;
    if (span_size <= comp_size || degree_ > 24) {
      if (span_size > limits().max_terms) throw BudgetExceeded("monomial product has too many words");
      std::vector<Monomial> words{Monomial::x_power(0)};
      for (const auto& f : factors_) {
        auto supp = support_words(f);
        std::vector<Monomial> next;
        next.reserve(words.size() * supp.size());
        for (const auto& a : words)
          for (const auto& b : supp) next.push_back(concat(a, b));
        words = std::move(next);
      }
      return Subspace::span_words(degree_, p_, std::move(words));
    }
    if (comp_size > limits().max_terms) throw BudgetExceeded("monomial product complement has too many words");
    std::vector<Monomial> excluded;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << degree_); ++c) {
      Monomial w = Monomial::from_code(degree_, c);
      std::size_t off = 0;
      for (const auto& f : factors_) {
        if (f.coordinate_null(w.slice(off, f.degree()))) {
          excluded.push_back(w);
          break;
        }
        off += f.degree();
      }
    }
    return Subspace::complement_words(degree_, p_, std::move(excluded));
  }

  require_dense_degree(degree_, "product space");
  const std::uint64_t n = std::uint64_t{1} << degree_;
  if (span_size <= total - span_size) {
    std::vector<DenseVector> rows{DenseVector::with_length(1, p_)};
    rows.front().set(0, 1);
    for (const auto& f : factors_) {
      auto basis = f.basis();
      std::vector<DenseVector> next;
      require_bytes(rows.size() * basis.size() * (n / 8 + 64), "product basis");
      for (const auto& a : rows)
        for (const auto& b : basis) next.push_back(kron(a, b));
      rows = std::move(next);
    }
    return Subspace::from_rows(degree_, p_, std::move(rows));
  }
  // (X_1 ⊗ ... ⊗ X_k)^⊥ = Σ_f H ⊗ .. ⊗ X_f^⊥ ⊗ .. ⊗ H
  std::vector<DenseVector> functionals;
  std::size_t left = 0;
  for (const auto& f : factors_) {
    const std::size_t right = degree_ - left - f.degree();
    const auto ann = f.annihilator();
    const std::uint64_t count = ann.size() << (left + right);
    require_bytes(count * (n / 8 + 64), "product annihilator");
    for (const auto& t : ann) {
      for (std::uint64_t l = 0; l < (std::uint64_t{1} << left); ++l) {
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << right); ++r) {
          DenseVector row = DenseVector::with_length(n, p_);
          t.for_each_nonzero([&](std::uint64_t i, Scalar c) {
            row.set(((l << f.degree()) + i) << right | r, c);
          });
          functionals.push_back(std::move(row));
        }
      }
    }
    left += f.degree();
  }
  return Subspace::from_functionals(degree_, p_, std::move(functionals));
}

std::optional<std::string> ProductSpace::contained_in(const Subspace& target) const {
  if (target.degree() != degree_) throw DegreeMismatch("product and target degrees differ");
  if (target.prime() != p_) throw PreconditionError("field mismatch");
  if (zero_) return std::nullopt;
  if (factors_.empty()) return target.dim() == 1 ? std::nullopt : std::optional<std::string>("1");

  auto witness_text = [&](const Subspace& f, const Monomial& slice) {
    if (f.is_monomial()) return slice.str();
    return format_vector(f.witness_at(slice));
  };

  if (target.repr() == Repr::complement) {
    for (const auto& b : target.words()) {
      std::size_t off = 0;
      bool certified = false;
      for (const auto& f : factors_) {
        if (f.coordinate_null(b.slice(off, f.degree()))) {
          certified = true;
          break;
        }
        off += f.degree();
      }
      if (!certified) {
        std::vector<std::string> parts;
        off = 0;
        for (const auto& f : factors_) {
          parts.push_back(witness_text(f, b.slice(off, f.degree())));
          off += f.degree();
        }
        return join_path(parts);
      }
    }
    return std::nullopt;
  }

  const bool all_monomial = std::all_of(factors_.begin(), factors_.end(), [](const Subspace& f) { return f.is_monomial(); });
  if (target.repr() == Repr::monomials && all_monomial) {
    std::vector<std::vector<Monomial>> supports;
    for (const auto& f : factors_) supports.push_back(support_words(f));
    std::vector<std::size_t> idx(factors_.size(), 0);
    // Odometer over the cartesian product; stops at the first word outside target.
    while (true) {
      Monomial w = Monomial::x_power(0);
      for (std::size_t f = 0; f < factors_.size(); ++f) w = concat(w, supports[f][idx[f]]);
      if (!target.contains_word(w)) {
        std::vector<std::string> parts;
        for (std::size_t f = 0; f < factors_.size(); ++f) parts.push_back(supports[f][idx[f]].str());
        return join_path(parts);
      }
      std::size_t f = factors_.size();
      while (f > 0) {
        --f;
        if (++idx[f] < supports[f].size()) break;
        idx[f] = 0;
        if (f == 0) return std::nullopt;
      }
    }
  }

  const Subspace T = target.to_dense();
  std::vector<DenseFactor> dfs;
  for (const auto& f : factors_) dfs.push_back(DenseFactor{f.to_dense(), std::nullopt, std::nullopt});

  if (T.repr() == Repr::dense) {
    // Small target: compare products of basis elements directly.
    std::vector<std::size_t> idx(dfs.size(), 0);
    std::vector<const std::vector<DenseVector>*> bases;
    for (const auto& d : dfs) bases.push_back(&d.basis());
    while (true) {
      DenseVector v = (*bases[0])[idx[0]];
      for (std::size_t f = 1; f < dfs.size(); ++f) v = kron(v, (*bases[f])[idx[f]]);
      if (!contains(T, v)) {
        std::vector<std::string> parts;
        for (std::size_t f = 0; f < dfs.size(); ++f) parts.push_back(format_vector((*bases[f])[idx[f]]));
        return join_path(parts);
      }
      std::size_t f = dfs.size();
      while (f > 0) {
        --f;
        if (++idx[f] < bases[f]->size()) break;
        idx[f] = 0;
        if (f == 0) return std::nullopt;
      }
    }
  }

  // Target given by functionals t: the product lies in T iff every t vanishes on
  // it, decided by contracting t factor by factor against factor bases.
  std::vector<std::string> path;
  std::function<bool(const DenseVector&, std::size_t)> vanishes = [&](const DenseVector& s, std::size_t f) -> bool {
    const DenseFactor& d = dfs[f];
    if (f + 1 == dfs.size()) {
      if (d.annihilates(s)) return true;
      for (const auto& x : d.basis())
        if (x.dot(s) != 0) {
          path.push_back(format_vector(x));
          return false;
        }
      throw InvariantViolation("functional fails to vanish but no basis witness found");
    }
    for (const auto& x : d.basis()) {
      DenseVector s2 = contract_first(s, x);
      if (s2.is_zero()) continue;
      if (!vanishes(s2, f + 1)) {
        path.push_back(format_vector(x));
        return false;
      }
    }
    return true;
  };
  for (const auto& t : T.rows()) {
    if (!vanishes(t, 0)) {
      std::reverse(path.begin(), path.end());
      return join_path(path);
    }
  }
  return std::nullopt;
}

Subspace space_mul(const Subspace& a, const Subspace& b) { return ProductSpace({a, b}).materialize(); }

}  // namespace nilalg
