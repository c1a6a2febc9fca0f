#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilalg/construction.hpp"
#include "nilalg/linear.hpp"
#include "nilalg/report.hpp"

namespace nilalg {

/// How E, R, S are computed: by word combinatorics (needs monomial U) or by dense linear algebra.
enum class QPath { automatic, monomial, dense };

const char* qpath_name(QPath p);

/// Words of the given degree not in a monomial-represented subspace.
std::vector<Monomial> excluded_words(const Subspace& s);

/// The graded ideal E and the complement systems R, S, Q, W, computed on
/// demand from a level store (levels are built as needed).
class QuotientTable {
 public:
  explicit QuotientTable(Levels& levels, QPath path = QPath::automatic);

  Levels& levels() noexcept { return levels_; }
  QPath requested_path() const noexcept { return path_; }
  /// The path used at degree n (level ⌊log n⌋ + 1 decides).
  QPath path_at(std::size_t n);

  const Subspace& E(std::size_t n);
  const Subspace& R(std::size_t j);
  const Subspace& S(std::size_t j);
  const Subspace& Q(std::size_t j);
  const Subspace& W(std::size_t j);
  /// E(n) computed afresh and not cached (for sweeps over many degrees).
  Subspace E_uncached(std::size_t n) { return compute_E(n); }
  /// dim H(n)/E(n) without caching E(n).
  BigInt quotient_dim(std::size_t n);

  /// N(2^{p_n}) ⋯ N(2^{p_0}) over the binary digits of j, highest first.
  Subspace N_product(std::size_t j);
  /// V(2^{p_0}) ⋯ V(2^{p_n}), lowest first.
  Subspace V_product(std::size_t j);

 private:
  Subspace compute_E(std::size_t n);
  Subspace compute_RS(std::size_t j, bool right);
  const LevelState& level(std::size_t n);

  Levels& levels_;
  QPath path_;
  std::map<std::size_t, Subspace> E_, R_, S_, Q_, W_;
};

/// R ⊕ Q = H, S ⊕ W = H, Q ⊆ ΠN (descending), W ⊆ ΠV (ascending).
std::vector<CheckResult> verify_complements(std::size_t j, QuotientTable& table);
/// Every T piece lies in S(j) and every B piece lies in R(j).
std::vector<CheckResult> verify_pieces(std::size_t j, QuotientTable& table);
/// R(j)·H(2^(m+1) − j) ⊆ U(2^(m+1)) and H(2^(m+1) − j)·S(j) ⊆ U(2^(m+1)).
CheckResult verify_defining(std::size_t j, QuotientTable& table);
/// Intersection containment in E(n) and dim H(n)/E(n) ≤ Σ_k dim W(n−k) dim Q(k).
std::vector<CheckResult> verify_totalsize(std::size_t n, QuotientTable& table);
CheckResult verify_qadd(std::size_t j, std::size_t k, QuotientTable& table);
CheckResult verify_wqsmall(std::size_t n, QuotientTable& table);
CheckResult verify_sdim(std::size_t j, QuotientTable& table);
CheckResult verify_tdim(std::size_t j, QuotientTable& table);
CheckResult verify_main_estimate(std::size_t n, QuotientTable& table);
/// nullopt iff H(1)·En + En·H(1) ⊆ En1.
std::optional<std::string> ideal_counterexample(const Subspace& En, const Subspace& En1);
std::vector<CheckResult> verify_ideal(std::size_t nmax, QuotientTable& table);
/// x^n ∉ E(n).
CheckResult verify_x_power(std::size_t n, QuotientTable& table);

}  // namespace nilalg
