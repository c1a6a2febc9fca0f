#include "nilalg/construction.hpp"

#include <algorithm>
#include <set>

#include "nilalg/errors.hpp"
#include "nilalg/field.hpp"

namespace nilalg {

namespace {

constexpr std::size_t kMaxLevel = 30;  // 2^n must stay a representable word length

std::size_t level_degree(std::size_t n) {
  if (n > kMaxLevel) throw BudgetExceeded("level " + std::to_string(n) + " is beyond the representable range");
  return std::size_t{1} << n;
}

/// 2^(2^i) − 2 when it is representable, nullopt when it is astronomically large.
std::optional<BigInt> f_dimension_bound(const BigInt& i) {
  if (i > 24) return std::nullopt;
  return pow2(static_cast<std::size_t>(pow2(static_cast<std::size_t>(i)))) - 2;
}

std::vector<Monomial> all_products(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  std::vector<Monomial> out;
  out.reserve(a.size() * b.size());
  for (const auto& u : a)
    for (const auto& v : b) out.push_back(u * v);
  normalize_words(out);
  return out;
}

/// Inverse of a square matrix over GF(p); throws InvariantViolation if singular.
std::vector<std::vector<Scalar>> invert(std::vector<std::vector<Scalar>> a, const Field& F) {
  const std::size_t n = a.size();
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && a[r][c] == 0) ++r;
    if (r == n) throw InvariantViolation("coordinate matrix of V is singular: V and U are not complementary");
    std::swap(a[r], a[c]);
    std::swap(inv[r], inv[c]);
    const Scalar s = F.inv(a[c][c]);
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] = F.mul(a[c][k], s);
      inv[c][k] = F.mul(inv[c][k], s);
    }
    for (std::size_t r2 = 0; r2 < n; ++r2) {
      if (r2 == c || a[r2][c] == 0) continue;
      const Scalar t = a[r2][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r2][k] = F.sub(a[r2][k], F.mul(t, a[c][k]));
        inv[r2][k] = F.sub(inv[r2][k], F.mul(t, inv[c][k]));
      }
    }
  }
  return inv;
}

Subspace as_dense(const Subspace& s) { return s.is_dense() ? s : s.to_dense(); }

Subspace words_space(std::size_t degree, std::uint32_t p, std::vector<Monomial> words, bool dense) {
  Subspace s = Subspace::span_words(degree, p, std::move(words));
  return dense ? s.to_dense() : s;
}

nlohmann::json level_param(std::size_t n) { return nlohmann::json{{"level", n}}; }

CheckResult pending(std::string name, std::size_t n) {
  CheckResult r;
  r.check = std::move(name);
  r.parameters = level_param(n);
  r.status = Status::pending;
  r.detail = "needs level " + std::to_string(n + 1);
  return r;
}

CheckResult not_applicable(std::string name, std::size_t n, std::string why) {
  CheckResult r;
  r.check = std::move(name);
  r.parameters = level_param(n);
  r.status = Status::not_applicable;
  r.detail = std::move(why);
  return r;
}

std::string complement_failure(const Subspace& a, const Subspace& b, const char* a_name, const char* b_name) {
  const BigInt total = a.ambient_dim();
  const BigInt da = a.dim(), db = b.dim();
  if (da + db != total)
    return "dim " + std::string(a_name) + " + dim " + b_name + " = " + BigInt(da + db).str() + " != " + total.str();
  if (intersect(a, b).dim() != 0) return std::string(a_name) + " and " + b_name + " intersect nontrivially";
  return {};
}

}  // namespace

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::dense: return "dense";
    case Engine::monomial: return "monomial";
    case Engine::automatic: return "auto";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  if (name == "dense") return Engine::dense;
  if (name == "monomial") return Engine::monomial;
  if (name == "auto" || name == "automatic") return Engine::automatic;
  throw PreconditionError("unknown engine '" + name + "' (expected dense, monomial or auto)");
}

Subspace span_of_polys(std::size_t degree, std::uint32_t p, const std::vector<GeneralPoly>& polys) {
  bool monomial = true;
  std::vector<const HomPoly*> homs;
  for (const auto& f : polys) {
    if (f.prime() != p) throw PreconditionError("polynomial over a different field");
    if (f.is_zero()) continue;
    if (!f.is_homogeneous() || f.degree() != degree)
      throw DegreeMismatch("polynomial " + format_poly(f) + " is not homogeneous of degree " + std::to_string(degree));
    const HomPoly& h = f.components().begin()->second;
    if (h.terms().size() != 1) monomial = false;
    homs.push_back(&h);
  }
  if (monomial) {
    std::vector<Monomial> words;
    for (const auto* h : homs) words.push_back(h->terms().begin()->first);
    return Subspace::span_words(degree, p, std::move(words));
  }
  require_dense_degree(degree, "polynomial span");
  std::vector<DenseVector> rows;
  for (const auto* h : homs) rows.push_back(h->to_dense());
  return Subspace::from_rows(degree, p, std::move(rows));
}

std::vector<Monomial> spanning_words(const Subspace& s) {
  auto m = s.to_monomial();
  if (!m) throw PreconditionError("subspace is not spanned by monomials");
  if (m->repr() == Repr::monomials) return m->words();
  if (s.degree() > 24) throw BudgetExceeded("too many spanning words to enumerate");
  std::vector<Monomial> out;
  const std::uint64_t total = std::uint64_t{1} << s.degree();
  for (std::uint64_t c = 0; c < total; ++c) {
    Monomial w = Monomial::from_code(s.degree(), c);
    if (!contains_sorted(m->words(), w)) out.push_back(std::move(w));
  }
  return out;
}

FOracle FOracle::from_schedule(const Schedule& schedule, std::uint32_t p) {
  FOracle o;
  for (const auto& e : schedule.entries()) {
    if (!e.F_basis) continue;
    const BoundExpr lv = Schedule::r_log2(e.i);
    if (!lv.expandable() || lv.value() > kMaxLevel) throw BudgetExceeded("F_i lives in an unreachable degree");
    const std::size_t degree = level_degree(static_cast<std::size_t>(lv.value()));
    o.bind(e.i, span_of_polys(degree, p, *e.F_basis));
  }
  return o;
}

void FOracle::bind(const BigInt& i, Subspace F) {
  if (auto bound = f_dimension_bound(i); bound && F.dim() >= *bound)
    throw PreconditionError("dim F_" + i.str() + " = " + F.dim().str() + " must be below " + bound->str());
  const BoundExpr level = Schedule::r_log2(i);
  if (!level.expandable() || level.value() >= 64 || pow2(static_cast<std::size_t>(level.value())) != F.degree())
    throw DegreeMismatch("F_" + i.str() + " must lie in H(2^(2^i - floor(log i)))");
  bound_[i] = std::move(F);
}

Subspace FOracle::F(const BigInt& i, std::size_t degree, std::uint32_t p) const {
  auto it = bound_.find(i);
  if (it == bound_.end()) return Subspace::zero(degree, p);
  if (it->second.degree() != degree) throw DegreeMismatch("F_" + i.str() + " has the wrong degree");
  return it->second;
}

LevelState initial_level(std::uint32_t p, bool dense) {
  LevelState s;
  s.n = 0;
  const Monomial x = Monomial::parse("x"), y = Monomial::parse("y");
  s.V = words_space(1, p, {x, y}, dense);
  s.U = dense ? Subspace::zero(1, p).to_dense() : Subspace::complement_words(1, p, {x, y});
  s.m1 = x;
  s.m2 = y;
  s.build_case = 0;
  s.dense = dense;
  build_NM(s);
  return s;
}

Case3Choice case3_select(const Subspace& P, const std::vector<Monomial>& VV) {
  if (VV.empty()) throw PreconditionError("V·V is empty");
  const std::size_t degree = VV.front().degree();
  if (P.degree() != degree) throw DegreeMismatch("P and V·V differ in degree");
  if (P.dim() + 2 >= BigInt(VV.size()))
    throw PreconditionError("dim P = " + P.dim().str() + " leaves fewer than two free words in V·V (size " +
                            std::to_string(VV.size()) + ")");
  std::vector<Monomial> pivots;
  if (P.repr() == Repr::monomials) {
    pivots = P.words();
  } else {
    Echelon e(std::uint64_t{1} << degree, P.prime());
    for (auto& b : P.basis()) e.insert(std::move(b));
    std::vector<std::uint64_t> codes;
    (void)std::move(e).take_sorted(&codes);
    for (auto c : codes) pivots.push_back(Monomial::from_code(degree, c));
  }
  std::sort(pivots.begin(), pivots.end());
  std::vector<Monomial> sorted_vv = VV;
  normalize_words(sorted_vv);
  std::vector<Monomial> free;
  for (const auto& p : pivots)
    if (!contains_sorted(sorted_vv, p)) throw PreconditionError("P is not contained in span V·V");
  for (const auto& w : sorted_vv)
    if (!contains_sorted(pivots, w)) free.push_back(w);
  Case3Choice out{free[0], free[1], Subspace{}};
  std::vector<Monomial> rest(free.begin() + 2, free.end());
  if (P.repr() == Repr::monomials) {
    rest.insert(rest.end(), P.words().begin(), P.words().end());
    out.Q = Subspace::span_words(degree, P.prime(), std::move(rest));
  } else {
    out.Q = sum(as_dense(P), Subspace::span_words(degree, P.prime(), std::move(rest)).to_dense());
  }
  return out;
}

Subspace project_onto_VV(const Subspace& F, const LevelState& level) {
  const std::size_t d = level.V.degree();
  const std::uint32_t p = level.V.prime();
  if (F.degree() != 2 * d) throw DegreeMismatch("F must live in degree 2^(n+1)");
  const std::vector<Monomial> vw = spanning_words(level.V);

  if (F.is_monomial() && level.U.is_monomial()) {
    // Word ab projects to itself when a, b ∈ V and to 0 otherwise.
    std::vector<Monomial> kept;
    for (const auto& w : all_products(vw, vw))
      if (F.contains_word(w)) kept.push_back(w);
    return Subspace::span_words(2 * d, p, std::move(kept));
  }

  require_dense_degree(2 * d, "projection onto V·V");
  const Field field(p);
  const auto t = level.U.annihilator();
  const std::size_t c = vw.size();
  if (t.size() != c) throw InvariantViolation("codim U differs from dim V");
  std::vector<std::vector<Scalar>> G(c, std::vector<Scalar>(c));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t k = 0; k < c; ++k) G[i][k] = t[i].get(vw[k].code());
  const auto Ginv = invert(G, field);
  // φ_k: the coordinate of m_k along V, vanishing on U.
  std::vector<DenseVector> phi;
  for (std::size_t k = 0; k < c; ++k) {
    DenseVector v = DenseVector::with_length(t.front().length(), p);
    for (std::size_t i = 0; i < c; ++i)
      if (Ginv[k][i]) v.add_scaled(t[i], Ginv[k][i]);
    phi.push_back(std::move(v));
  }
  const std::uint64_t L = std::uint64_t{1} << d;
  std::vector<DenseVector> rows;
  for (const auto& f : F.basis()) {
    // g_k[b] = Σ_a φ_k[a] f[a, b]; the coefficient of m_k m_l is g_k · φ_l.
    DenseVector out = DenseVector::with_length(f.length(), p);
    for (std::size_t k = 0; k < c; ++k) {
      DenseVector g = DenseVector::with_length(L, p);
      phi[k].for_each_nonzero([&](std::uint64_t a, Scalar s) { g.add_scaled(f.block(a * L, L), s); });
      for (std::size_t l = 0; l < c; ++l) {
        const Scalar coef = g.dot(phi[l]);
        if (coef) out.set((vw[k] * vw[l]).code(), coef);
      }
    }
    rows.push_back(std::move(out));
  }
  return Subspace::from_rows(2 * d, p, std::move(rows));
}

void build_NM(LevelState& s) {
  const std::uint32_t p = s.V.prime();
  if (s.m1 && s.m2) {
    s.N = words_space(s.V.degree(), p, {*s.m1}, s.dense);
    s.M = sum(s.U, words_space(s.V.degree(), p, {*s.m2}, s.dense));
  } else {
    s.N = s.V;
    s.M = s.U;
  }
}

LevelState build_level(const LevelState& prev, const Schedule& schedule, const FOracle& oracle, Engine engine) {
  const std::size_t n = prev.n;
  const std::size_t d = level_degree(n);
  const std::size_t d2 = level_degree(n + 1);
  const std::uint32_t p = prev.V.prime();
  const auto sn = schedule.in_S(n);
  const auto sn1 = schedule.in_S(n + 1);
  const int kase = !sn ? 2 : (sn1 ? 1 : 3);

  std::optional<Subspace> F;
  if (kase == 3) {
    F = oracle.F(sn->i, d2, p);
    if (auto bound = f_dimension_bound(sn->i); bound && F->dim() >= *bound)
      throw PreconditionError("dim F_" + sn->i.str() + " must be below " + bound->str());
    if (F->is_dense())
      if (auto m = F->to_monomial()) F = *m;
  }
  const bool f_monomial = !F || F->is_monomial();

  bool dense = false;
  switch (engine) {
    case Engine::dense: dense = true; break;
    case Engine::monomial:
      if (prev.dense || !f_monomial)
        throw PreconditionError("the monomial engine cannot represent level " + std::to_string(n + 1) +
                                ": F is not spanned by monomials");
      break;
    case Engine::automatic: dense = prev.dense || !f_monomial; break;
  }
  if (dense) require_dense_degree(d2, "dense level");

  LevelState next;
  next.n = n + 1;
  next.build_case = kase;
  next.dense = dense;
  const std::vector<Monomial> vw = spanning_words(prev.V);

  std::vector<Monomial> v_next;
  std::optional<Case3Choice> choice;
  if (kase == 1) {
    v_next = all_products(vw, vw);
  } else if (kase == 2) {
    v_next = {*prev.m1 * *prev.m1, *prev.m1 * *prev.m2};
    normalize_words(v_next);
    if (!sn1) {
      next.m1 = *prev.m1 * *prev.m1;
      next.m2 = *prev.m1 * *prev.m2;
    }
  } else {
    LevelState base = prev;
    if (dense && !base.dense) {
      base.U = base.U.to_dense();
      base.V = base.V.to_dense();
    }
    const Subspace P = project_onto_VV(*F, base);
    choice = case3_select(P, all_products(vw, vw));
    v_next = {choice->m1, choice->m2};
    normalize_words(v_next);
    next.m1 = choice->m1;
    next.m2 = choice->m2;
  }

  if (!dense) {
    // With U = complement of the V words, every case leaves U' = complement of the V' words.
    next.V = Subspace::span_words(d2, p, v_next);
    next.U = Subspace::complement_words(d2, p, std::move(v_next));
  } else {
    const Subspace U = as_dense(prev.U), V = as_dense(prev.V);
    const Subspace H = Subspace::whole(d, p);
    if (kase == 1 || kase == 2) {
      next.U = sum(ProductSpace({H, U}).materialize(), ProductSpace({U, H}).materialize());
      if (kase == 2)
        next.U = sum(next.U, ProductSpace({Subspace::span_words(d, p, {*prev.m2}).to_dense(), V}).materialize());
    } else {
      next.U = sum(sum(ProductSpace({U, U}).materialize(), ProductSpace({U, V}).materialize()),
                   sum(ProductSpace({V, U}).materialize(), as_dense(choice->Q)));
    }
    next.V = Subspace::span_words(d2, p, std::move(v_next)).to_dense();
  }
  build_NM(next);
  return next;
}

Levels::Levels(Schedule schedule, std::uint32_t p, Engine engine)
    : schedule_(std::move(schedule)), p_(p), engine_(engine) {
  Field check(p);
  (void)check;
  oracle_ = FOracle::from_schedule(schedule_, p_);
}

Levels::Levels(Schedule schedule, FOracle oracle, std::uint32_t p, Engine engine)
    : schedule_(std::move(schedule)), oracle_(std::move(oracle)), p_(p), engine_(engine) {
  Field check(p);
  (void)check;
}

void Levels::build_through(std::size_t n) {
  if (n > kMaxLevel) throw BudgetExceeded("level " + std::to_string(n) + " is beyond the representable range");
  if (engine_ == Engine::dense) require_dense_degree(std::size_t{1} << n, "dense level");
  if (states_.empty()) states_.push_back(initial_level(p_, engine_ == Engine::dense));
  while (states_.size() <= n) states_.push_back(build_level(states_.back(), schedule_, oracle_, engine_));
}

const LevelState& Levels::at(std::size_t n) const {
  if (n >= states_.size()) throw PreconditionError("level " + std::to_string(n) + " has not been built");
  return states_[n];
}

void Levels::adopt(std::vector<LevelState> states) {
  for (std::size_t k = 0; k < states.size(); ++k)
    if (states[k].n != k) throw PreconditionError("level store is not contiguous from level 0");
  states_ = std::move(states);
}

std::optional<std::vector<std::pair<DenseVector, DenseVector>>> case2_successor_annihilator(const LevelState& s) {
  if (!s.m1 || !s.m2 || !s.U.is_dense() || s.U.repr() != Repr::annihilator) return std::nullopt;
  const std::size_t d = s.U.degree();
  const std::uint32_t p = s.U.prime();
  const auto& a = s.U.rows();
  if (a.size() != 2) return std::nullopt;
  const Field F(p);
  const std::uint64_t c1 = s.m1->code(), c2 = s.m2->code();
  // G_ij = a_i(m_j); φ = G⁻¹ a gives φ_k(m_j) = δ_kj and φ_k(U) = 0.
  const Scalar g00 = a[0].get(c1), g01 = a[0].get(c2), g10 = a[1].get(c1), g11 = a[1].get(c2);
  const Scalar det = F.sub(F.mul(g00, g11), F.mul(g01, g10));
  if (det == 0) return std::nullopt;
  const Scalar di = F.inv(det);
  auto combo = [&](Scalar x, Scalar y) {
    DenseVector v = DenseVector::zeros(d, p);
    v.add_scaled(a[0], F.mul(di, x));
    v.add_scaled(a[1], F.mul(di, y));
    return v;
  };
  const DenseVector phi1 = combo(g11, F.neg(g01));
  const DenseVector phi2 = combo(F.neg(g10), g00);
  return std::vector<std::pair<DenseVector, DenseVector>>{{phi1, phi1}, {phi1, phi2}};
}

namespace {

/// True iff the functional vanishes on the subspace.
bool vanishes_on(const DenseVector& f, const Subspace& X) {
  if (X.dim() == 0) return true;
  const auto ann = X.annihilator();
  if (ann.empty()) return f.is_zero();
  return contains(Subspace::from_rows(X.degree(), X.prime(), ann), f);
}

/// nullopt iff X ⊗ Y lies in the common kernel of the rank-one functionals.
std::optional<std::string> product_in_factored(const Subspace& X, const Subspace& Y,
                                               const std::vector<std::pair<DenseVector, DenseVector>>& ann) {
  for (std::size_t k = 0; k < ann.size(); ++k)
    if (!vanishes_on(ann[k].first, X) && !vanishes_on(ann[k].second, Y))
      return "annihilator functional " + std::to_string(k) + " of the next U is nonzero on the product";
  return std::nullopt;
}

}  // namespace

std::vector<CheckResult> check_conditions(const Levels& levels, std::size_t n) {
  const LevelState& s = levels.at(n);
  const Schedule& sched = levels.schedule();
  const std::uint32_t p = levels.prime();
  const auto pos = sched.in_S(n);
  std::vector<CheckResult> out;
  const auto P = level_param(n);

  if (!pos) {
    const BigInt dv = s.V.dim();
    out.push_back(make_result("cond1", P, dv == 2, dv == 2 ? "" : "dim V = " + dv.str()));
  } else {
    out.push_back(not_applicable("cond1", n, "level lies in S"));
  }

  if (pos) {
    const BigInt want = pow2(static_cast<std::size_t>(pow2(static_cast<std::size_t>(pos->j))));
    const BigInt dv = s.V.dim();
    out.push_back(make_result("cond2", P, dv == want, dv == want ? "" : "dim V = " + dv.str() + ", expected " + want.str()));
  } else {
    out.push_back(not_applicable("cond2", n, "level lies outside S"));
  }

  out.push_back(make_result("cond3", P, s.V.to_monomial().has_value(), "", "V spanned by monomials"));

  if (const ScheduleEntry* e = sched.entry_for_F_level(n)) {
    const Subspace F = levels.oracle().F(e->i, s.U.degree(), p);
    out.push_back(make_result("cond4", P, contains_space(s.U, F), "", "F_" + e->i.str() + " inside U"));
  } else {
    out.push_back(not_applicable("cond4", n, "no F lives at this level"));
  }

  {
    std::string why = complement_failure(s.V, s.U, "V", "U");
    out.push_back(make_result("cond5", P, why.empty(), why));
  }

  const auto factored = levels.has(n + 1) || pos ? std::nullopt : case2_successor_annihilator(s);
  if (!levels.has(n + 1) && factored) {
    // The next level is a Case 2 level; decide 6–8 through its factored annihilator.
    const Subspace H = Subspace::whole(s.U.degree(), p);
    const char* how = "next level checked through the rank-one annihilator of its U";
    auto left = product_in_factored(H, s.U, *factored);
    auto right = left ? left : product_in_factored(s.U, H, *factored);
    out.push_back(make_result("cond6", P, !right, right.value_or(""), how));
    const bool v_ok = s.V.contains_word(*s.m1) && s.V.contains_word(*s.m2);
    out.push_back(make_result("cond7", P, v_ok, v_ok ? "" : "m1 or m2 outside V", how));
    const Subspace span12 = Subspace::span_words(s.V.degree(), p, {*s.m1, *s.m2});
    if (!same_space(s.V, span12)) {
      out.push_back(make_result("cond8", P, false, "", "V differs from span{m1, m2}"));
    } else {
      auto bad = product_in_factored(Subspace::span_words(s.V.degree(), p, {*s.m2}), H, *factored);
      out.push_back(make_result("cond8", P, !bad, bad.value_or(""), how));
    }
  } else if (!levels.has(n + 1)) {
    out.push_back(pending("cond6", n));
    out.push_back(pending("cond7", n));
    out.push_back(pending("cond8", n));
  } else {
    const LevelState& t = levels.at(n + 1);
    const Subspace H = Subspace::whole(s.U.degree(), p);
    auto left = ProductSpace({H, s.U}).contained_in(t.U);
    auto right = left ? left : ProductSpace({s.U, H}).contained_in(t.U);
    out.push_back(make_result("cond6", P, !right, right.value_or("")));

    const Subspace VV = space_mul(s.V, s.V);
    out.push_back(make_result("cond7", P, contains_space(VV, t.V), "", "V(2^(n+1)) inside V·V"));

    if (pos) {
      out.push_back(not_applicable("cond8", n, "level lies in S"));
    } else if (!s.m1 || !s.m2) {
      out.push_back(make_result("cond8", P, false, "", "labels m1, m2 missing"));
    } else {
      const Subspace span12 = Subspace::span_words(s.V.degree(), p, {*s.m1, *s.m2});
      if (!same_space(s.V, span12)) {
        out.push_back(make_result("cond8", P, false, "", "V differs from span{m1, m2}"));
      } else {
        auto bad = ProductSpace({Subspace::span_words(s.V.degree(), p, {*s.m2}), H}).contained_in(t.U);
        out.push_back(make_result("cond8", P, !bad, bad.value_or("")));
      }
    }
  }

  {
    std::string why = complement_failure(s.N, s.M, "N", "M");
    out.push_back(make_result("NM", P, why.empty(), why));
  }
  return out;
}

std::optional<std::string> ustack_counterexample(std::size_t n, std::size_t m, std::uint64_t k, const Levels& levels) {
  if (m < n) throw PreconditionError("ustack needs m >= n");
  if (m - n > 62 || k >= (std::uint64_t{1} << (m - n))) throw PreconditionError("ustack needs k < 2^(m-n)");
  const LevelState& low = levels.at(n);
  const LevelState& high = levels.at(m);
  const std::size_t d = low.U.degree();
  const std::uint64_t blocks = std::uint64_t{1} << (m - n);
  const std::uint32_t p = levels.prime();
  ProductSpace prod({Subspace::whole(k * d, p), low.U, Subspace::whole((blocks - k - 1) * d, p)});
  return prod.contained_in(high.U);
}

bool check_ustack(std::size_t n, std::size_t m, std::uint64_t k, const Levels& levels) {
  return !ustack_counterexample(n, m, k, levels);
}

CoverResult verify_F_covers(const GeneralPoly& f, unsigned exponent, std::size_t r, const Subspace& F, std::size_t D) {
  if (F.degree() != r) throw DegreeMismatch("F must live in degree r");
  if (r == 0) throw PreconditionError("r must be positive");
  const std::uint32_t p = F.prime();
  if (f.prime() != p) throw PreconditionError("polynomial and F over different fields");
  const GeneralPoly g = power(f, exponent);

  std::map<std::size_t, Subspace> pieces;
  for (const auto& [c, h] : g.components())
    if (c <= D) pieces.emplace(c, span_of_polys(c, p, {GeneralPoly(h)}));

  CoverResult res;
  for (std::size_t d = 0; d <= D; ++d) {
    std::optional<Subspace> J;
    for (const auto& [c, piece] : pieces) {
      if (c > d) break;
      if (!J) {
        J = Subspace::zero(d, p);
        for (std::size_t k = 0; k * r + r <= d; ++k)
          J = sum(*J, ProductSpace({Subspace::whole(k * r, p), F, Subspace::whole(d - k * r - r, p)}).materialize());
      }
      for (std::size_t a = 0; a + c <= d; ++a) {
        ProductSpace prod({Subspace::whole(a, p), piece, Subspace::whole(d - c - a, p)});
        if (auto bad = prod.contained_in(*J)) {
          res.ok = false;
          res.degree = d;
          res.counterexample = *bad;
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace nilalg
