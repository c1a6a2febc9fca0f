#include "nilalg/quotient.hpp"

#include <algorithm>
#include <unordered_set>

#include "nilalg/bounds.hpp"
#include "nilalg/errors.hpp"
#include "nilalg/freealg.hpp"

namespace nilalg {

namespace {

std::size_t log2_floor(std::size_t n) { return static_cast<std::size_t>(63 - __builtin_clzll(n)); }

std::vector<std::size_t> bits_of(std::size_t j) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < 64; ++p)
    if ((j >> p) & 1U) out.push_back(p);
  return out;
}

/// The zero space of H(d) as the complement of every word (d ≤ 1 only).
Subspace zero_as_complement(std::size_t d, std::uint32_t p) {
  std::vector<Monomial> all;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << d); ++c) all.push_back(Monomial::from_code(d, c));
  return Subspace::complement_words(d, p, std::move(all));
}

Subspace in_path(Subspace s, QPath path) {
  if (path == QPath::dense && s.is_monomial()) return s.to_dense();
  return s;
}

/// The functional r ↦ t(u·r·v) on H(n) for words u, v given by codes; t lives in H(left + n + right).
DenseVector slice(const DenseVector& t, std::size_t n, std::uint64_t u, std::uint64_t v, std::size_t right) {
  DenseVector s = DenseVector::with_length(std::uint64_t{1} << n, t.prime());
  const std::uint64_t len = std::uint64_t{1} << n;
  for (std::uint64_t r = 0; r < len; ++r) {
    const Scalar c = t.get((((u << n) | r) << right) | v);
    if (c) s.set(r, c);
  }
  return s;
}

nlohmann::json jparam(const char* key, std::size_t v) { return nlohmann::json{{key, v}}; }

CheckResult skipped(std::string name, nlohmann::json params, std::string why) {
  CheckResult r;
  r.check = std::move(name);
  r.parameters = std::move(params);
  r.status = Status::not_applicable;
  r.detail = std::move(why);
  return r;
}

std::string le_text(const BigInt& a, const BigInt& b) { return a.str() + " <= " + b.str(); }

}  // namespace

const char* qpath_name(QPath p) {
  switch (p) {
    case QPath::automatic: return "auto";
    case QPath::monomial: return "monomial";
    case QPath::dense: return "dense";
  }
  return "?";
}

std::vector<Monomial> excluded_words(const Subspace& s) {
  if (s.repr() == Repr::complement) return s.words();
  if (s.repr() != Repr::monomials) throw PreconditionError("excluded words need a monomial subspace");
  if (s.degree() > 24) throw BudgetExceeded("too many words to enumerate");
  std::vector<Monomial> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.degree()); ++c) {
    Monomial w = Monomial::from_code(s.degree(), c);
    if (!contains_sorted(s.words(), w)) out.push_back(std::move(w));
  }
  return out;
}

QuotientTable::QuotientTable(Levels& levels, QPath path) : levels_(levels), path_(path) {}

const LevelState& QuotientTable::level(std::size_t n) {
  if (!levels_.has(n)) levels_.build_through(n);
  return levels_.at(n);
}

QPath QuotientTable::path_at(std::size_t n) {
  if (path_ == QPath::dense) return QPath::dense;
  const std::size_t m = n == 0 ? 0 : log2_floor(n);
  const LevelState& lv = level(m + 1);
  const bool monomial = !lv.dense && lv.U.is_monomial();
  if (path_ == QPath::monomial && !monomial)
    throw PreconditionError("monomial path needs a monomial U at level " + std::to_string(m + 1));
  return monomial ? QPath::monomial : QPath::dense;
}

Subspace QuotientTable::compute_E(std::size_t n) {
  const std::uint32_t p = levels_.prime();
  if (n == 0) return in_path(Subspace::zero(0, p), path_);
  const std::size_t m = log2_floor(n);
  const QPath path = path_at(n);
  const LevelState& lv = level(m + 1);
  if (path == QPath::monomial) {
    // The complement of U·H + H·U is V·V; E(n) excludes exactly the length-n factors of those words.
    const auto vw = spanning_words(lv.V);
    std::vector<Monomial> vv;
    for (const auto& a : vw)
      for (const auto& b : vw) vv.push_back(a * b);
    return Subspace::complement_words(n, p, factors_of_length(vv, n));
  }
  const std::size_t D = std::size_t{4} << m;
  require_dense_degree(D, "E(n) dense path");
  const Subspace U = lv.U.is_dense() ? lv.U : lv.U.to_dense();
  const Subspace H = Subspace::whole(D / 2, p);
  const Subspace T = sum(ProductSpace({U, H}).materialize(), ProductSpace({H, U}).materialize());
  Echelon cons(std::uint64_t{1} << n, p);
  for (const auto& t : T.annihilator()) {
    for (std::size_t j = 0; j + n <= D && !cons.full(); ++j) {
      const std::size_t right = D - n - j;
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << j) && !cons.full(); ++u)
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << right) && !cons.full(); ++v)
          cons.insert(slice(t, n, u, v, right));
    }
  }
  return solve_constraints(n, p, std::move(cons).take_sorted());
}

Subspace QuotientTable::compute_RS(std::size_t j, bool right_side) {
  const std::uint32_t p = levels_.prime();
  if (j <= 1) return in_path(zero_as_complement(j, p), path_);
  const std::size_t m = log2_floor(j);
  const std::size_t D = std::size_t{2} << m;
  const QPath path = path_at(j);
  const LevelState& lv = level(m + 1);
  if (path == QPath::monomial) {
    std::vector<Monomial> ends;
    for (const auto& w : spanning_words(lv.V)) ends.push_back(right_side ? w.slice(D - j, j) : w.slice(0, j));
    return Subspace::complement_words(j, p, std::move(ends));
  }
  require_dense_degree(D, "R/S dense path");
  const Subspace U = lv.U.is_dense() ? lv.U : lv.U.to_dense();
  Echelon cons(std::uint64_t{1} << j, p);
  const std::size_t rest = D - j;
  for (const auto& t : U.annihilator())
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << rest) && !cons.full(); ++w)
      cons.insert(right_side ? slice(t, j, w, 0, 0) : slice(t, j, 0, w, rest));
  return solve_constraints(j, p, std::move(cons).take_sorted());
}

const Subspace& QuotientTable::E(std::size_t n) {
  auto it = E_.find(n);
  if (it == E_.end()) it = E_.emplace(n, compute_E(n)).first;
  return it->second;
}

const Subspace& QuotientTable::R(std::size_t j) {
  auto it = R_.find(j);
  if (it == R_.end()) it = R_.emplace(j, compute_RS(j, false)).first;
  return it->second;
}

const Subspace& QuotientTable::S(std::size_t j) {
  auto it = S_.find(j);
  if (it == S_.end()) it = S_.emplace(j, compute_RS(j, true)).first;
  return it->second;
}

Subspace QuotientTable::N_product(std::size_t j) {
  std::vector<Subspace> factors;
  auto bits = bits_of(j);
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) factors.push_back(level(*it).N);
  return in_path(ProductSpace(std::move(factors)).materialize(), path_at(j));
}

Subspace QuotientTable::V_product(std::size_t j) {
  std::vector<Subspace> factors;
  for (auto b : bits_of(j)) factors.push_back(level(b).V);
  return in_path(ProductSpace(std::move(factors)).materialize(), path_at(j));
}

const Subspace& QuotientTable::Q(std::size_t j) {
  auto it = Q_.find(j);
  if (it != Q_.end()) return it->second;
  const std::uint32_t p = levels_.prime();
  Subspace q;
  if (j <= 1) {
    // Q(0) = K and Q(1) = V(1) = H(1).
    q = in_path(Subspace::whole(j, p), path_);
  } else {
    const Subspace outer = N_product(j);
    q = complement_within(intersect(R(j), outer), outer);
  }
  return Q_.emplace(j, std::move(q)).first->second;
}

const Subspace& QuotientTable::W(std::size_t j) {
  auto it = W_.find(j);
  if (it != W_.end()) return it->second;
  const std::uint32_t p = levels_.prime();
  Subspace w;
  if (j <= 1) {
    w = in_path(Subspace::whole(j, p), path_);
  } else {
    const Subspace outer = V_product(j);
    w = complement_within(intersect(S(j), outer), outer);
  }
  return W_.emplace(j, std::move(w)).first->second;
}

BigInt QuotientTable::quotient_dim(std::size_t n) {
  if (auto it = E_.find(n); it != E_.end()) return it->second.codim();
  return compute_E(n).codim();
}

std::vector<CheckResult> verify_complements(std::size_t j, QuotientTable& t) {
  std::vector<CheckResult> out;
  const auto P = jparam("j", j);
  auto direct = [&](const char* name, const Subspace& a, const Subspace& b) {
    const BigInt total = a.ambient_dim();
    if (a.dim() + b.dim() != total)
      return make_result(name, P, false, "", "dimensions add to " + BigInt(a.dim() + b.dim()).str() + ", not " + total.str());
    if (intersect(a, b).dim() != 0) return make_result(name, P, false, "", "nontrivial intersection");
    return make_result(name, P, true);
  };
  out.push_back(direct("R+Q", t.R(j), t.Q(j)));
  out.push_back(direct("S+W", t.S(j), t.W(j)));
  if (j >= 2) {
    out.push_back(make_result("Q_in_N", P, contains_space(t.N_product(j), t.Q(j))));
    out.push_back(make_result("W_in_V", P, contains_space(t.V_product(j), t.W(j))));
  } else {
    out.push_back(skipped("Q_in_N", P, "base case defined directly"));
    out.push_back(skipped("W_in_V", P, "base case defined directly"));
  }
  return out;
}

std::vector<CheckResult> verify_pieces(std::size_t j, QuotientTable& t) {
  std::vector<CheckResult> out;
  if (j < 2) {
    out.push_back(skipped("pieces", jparam("j", j), "base case defined directly"));
    return out;
  }
  const std::uint32_t p = t.levels().prime();
  const auto bits = bits_of(j);
  std::size_t below = 0;
  for (auto b : bits) {
    const std::size_t piece = std::size_t{1} << b;
    const std::size_t above = j - below - piece;
    nlohmann::json P{{"j", j}, {"p", b}};
    if (!t.levels().has(b)) t.levels().build_through(b);
    const LevelState& lv = t.levels().at(b);
    auto bad_t = ProductSpace({Subspace::whole(below, p), lv.U, Subspace::whole(above, p)}).contained_in(t.S(j));
    out.push_back(make_result("T_piece", P, !bad_t, bad_t.value_or("")));
    auto bad_b = ProductSpace({Subspace::whole(above, p), lv.M, Subspace::whole(below, p)}).contained_in(t.R(j));
    out.push_back(make_result("B_piece", P, !bad_b, bad_b.value_or("")));
    below += piece;
  }
  return out;
}

CheckResult verify_defining(std::size_t j, QuotientTable& t) {
  const auto P = jparam("j", j);
  if (j < 2) return skipped("defining", P, "base case defined directly");
  const std::uint32_t p = t.levels().prime();
  const std::size_t m = log2_floor(j);
  const std::size_t D = std::size_t{2} << m;
  if (!t.levels().has(m + 1)) t.levels().build_through(m + 1);
  const Subspace& U = t.levels().at(m + 1).U;
  const Subspace H = Subspace::whole(D - j, p);
  auto bad = ProductSpace({t.R(j), H}).contained_in(U);
  if (!bad) bad = ProductSpace({H, t.S(j)}).contained_in(U);
  return make_result("defining", P, !bad, bad.value_or(""));
}

std::vector<CheckResult> verify_totalsize(std::size_t n, QuotientTable& t) {
  std::vector<CheckResult> out;
  const auto P = jparam("n", n);
  const std::uint32_t p = t.levels().prime();
  const Subspace& En = t.E(n);

  if (En.is_monomial() && t.R(n).is_monomial()) {
    // A word escapes the intersection iff for some k its prefix avoids S(n−k) and its suffix avoids R(k).
    std::vector<std::vector<Monomial>> A(n + 1), B(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      A[k] = excluded_words(t.S(k));
      B[k] = excluded_words(t.R(k));
    }
    std::string bad;
    for (const auto& w : excluded_words(En)) {
      bool escapes = false;
      for (std::size_t k = 0; k <= n && !escapes; ++k)
        escapes = contains_sorted(A[n - k], w.slice(0, n - k)) && contains_sorted(B[k], w.slice(n - k, k));
      if (!escapes) {
        bad = w.str();
        break;
      }
    }
    out.push_back(make_result("totalsize_containment", P, bad.empty(), bad));
  } else {
    Subspace I = Subspace::whole(n, p).to_dense();
    for (std::size_t k = 0; k <= n; ++k) {
      const Subspace left = ProductSpace({t.S(n - k), Subspace::whole(k, p)}).materialize();
      const Subspace right = ProductSpace({Subspace::whole(n - k, p), t.R(k)}).materialize();
      I = intersect(I, sum(left.to_dense(), right.to_dense()));
    }
    const Subspace Ed = En.is_dense() ? En : En.to_dense();
    std::string bad;
    if (!contains_space(Ed, I))
      for (const auto& v : I.basis())
        if (!contains(Ed, v)) {
          bad = format_vector(v);
          break;
        }
    out.push_back(make_result("totalsize_containment", P, bad.empty(), bad));
  }

  BigInt rhs = 0;
  for (std::size_t k = 0; k <= n; ++k) rhs += t.W(n - k).dim() * t.Q(k).dim();
  const BigInt lhs = En.codim();
  out.push_back(make_result("totalsize_dim", P, lhs <= rhs, "", le_text(lhs, rhs)));
  return out;
}

CheckResult verify_qadd(std::size_t j, std::size_t k, QuotientTable& t) {
  nlohmann::json P{{"j", j}, {"k", k}};
  if (j == 0 || k == 0 || static_cast<std::size_t>(__builtin_ctzll(j)) <= log2_floor(k))
    return skipped("qadd", P, "needs the bits of j strictly above the bits of k");
  const BigInt lhs = t.Q(j + k).dim(), rhs = t.Q(j).dim() * t.Q(k).dim();
  return make_result("qadd", P, lhs <= rhs, "", le_text(lhs, rhs));
}

CheckResult verify_wqsmall(std::size_t n, QuotientTable& t) {
  const auto P = jparam("n", n);
  if (n < 3 || (n & (n - 1)) == 0) return skipped("wqsmall", P, "needs 2^m < n < 2^(m+1)");
  const std::size_t m = log2_floor(n);
  const std::size_t top = std::size_t{2} << m;
  if (!t.levels().has(m + 1)) t.levels().build_through(m + 1);
  const BigInt lhs = t.W(n).dim();
  const BigInt rhs = t.Q(top - n).dim() * t.levels().at(m + 1).V.dim();
  return make_result("wqsmall", P, lhs <= rhs, "", le_text(lhs, rhs));
}

CheckResult verify_sdim(std::size_t j, QuotientTable& t) {
  const auto P = jparam("j", j);
  if (j < 2) return skipped("sdim", P, "needs j >= 2");
  const Schedule& s = t.levels().schedule();
  std::optional<BigInt> member;
  for (auto b : bits_of(j)) {
    auto pos = s.in_S(b);
    if (!pos || (member && *member != pos->i)) return skipped("sdim", P, "bits of j not inside one S interval");
    member = pos->i;
  }
  const BigInt d = t.Q(j).dim();
  const BigInt lg = log2_floor(j);
  const BigInt lhs = d * d, rhs = 4 * BigInt(j) * lg * lg;
  return make_result("sdim", P, lhs <= rhs, "", "dim^2 = " + le_text(lhs, rhs));
}

CheckResult verify_tdim(std::size_t j, QuotientTable& t) {
  const auto P = jparam("j", j);
  if (j < 1) return skipped("tdim", P, "needs j >= 1");
  const Schedule& s = t.levels().schedule();
  std::optional<std::optional<BigInt>> region;
  for (auto b : bits_of(j)) {
    auto pos = s.T_of(b);
    if (!pos || (region && *region != pos->m)) return skipped("tdim", P, "bits of j not inside one T interval");
    region = pos->m;
  }
  const BigInt q = t.Q(j).dim(), w = t.W(j).dim();
  return make_result("tdim", P, q <= 2 && w <= 2, "", "dim Q = " + q.str() + ", dim W = " + w.str());
}

CheckResult verify_main_estimate(std::size_t n, QuotientTable& t) {
  const auto P = jparam("n", n);
  if (n < 2) return skipped("estimate", P, "needs n >= 2");
  const BigInt q = t.Q(n).dim(), w = t.W(n).dim();
  const bool ok = compare_log_power(q * q, 64, n, 1, 6) <= 0 && compare_log_power(w * w, 64, n, 1, 6) <= 0;
  return make_result("estimate", P, ok, "", "dim Q = " + q.str() + ", dim W = " + w.str());
}

std::optional<std::string> ideal_counterexample(const Subspace& En, const Subspace& En1) {
  if (En1.degree() != En.degree() + 1) throw DegreeMismatch("ideal check needs consecutive degrees");
  const Subspace H1 = Subspace::whole(1, En.prime());
  if (auto bad = ProductSpace({H1, En}).contained_in(En1)) return bad;
  return ProductSpace({En, H1}).contained_in(En1);
}

std::vector<CheckResult> verify_ideal(std::size_t nmax, QuotientTable& t) {
  std::vector<CheckResult> out;
  for (std::size_t n = 1; n < nmax; ++n) {
    auto bad = ideal_counterexample(t.E(n), t.E(n + 1));
    out.push_back(make_result("ideal", jparam("n", n), !bad, bad.value_or("")));
  }
  return out;
}

CheckResult verify_x_power(std::size_t n, QuotientTable& t) {
  const Subspace En = t.E_uncached(n);
  const bool in = En.contains_word(Monomial::x_power(n));
  return make_result("x_power", jparam("n", n), !in, in ? Monomial::x_power(n).str() : "");
}

}  // namespace nilalg
