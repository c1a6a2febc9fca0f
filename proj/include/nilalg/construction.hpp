#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilalg/freealg.hpp"
#include "nilalg/linear.hpp"
#include "nilalg/report.hpp"
#include "nilalg/schedule.hpp"

namespace nilalg {

enum class Engine { dense, monomial, automatic };

const char* engine_name(Engine e);
/// Accepts "dense", "monomial", "auto"; throws PreconditionError otherwise.
Engine parse_engine(const std::string& name);

/// U(2^n), V(2^n) and the derived split N(2^n) ⊕ M(2^n) at one level.
struct LevelState {
  std::size_t n = 0;
  Subspace U, V, N, M;
  /// The two distinguished monomials; present iff n ∉ S.
  std::optional<Monomial> m1, m2;
  /// 1, 2 or 3 for the case that produced this level; 0 for level 0.
  int build_case = 0;
  /// True when U, V are stored densely.
  bool dense = false;
};

/// The spaces F_i per member i of Z: explicit subspaces, or the zero space.
class FOracle {
 public:
  FOracle() = default;
  /// Binds every entry carrying an explicit basis; checks degree and dim F_i < 2^(2^i) − 2.
  static FOracle from_schedule(const Schedule& schedule, std::uint32_t p);

  void bind(const BigInt& i, Subspace F);
  bool is_explicit(const BigInt& i) const { return bound_.count(i) != 0; }
  /// F_i, or the zero space of the given degree when unbound.
  Subspace F(const BigInt& i, std::size_t degree, std::uint32_t p) const;

 private:
  std::map<BigInt, Subspace> bound_;
};

/// The span of homogeneous polynomials of one degree; monomial when every
/// polynomial is a single word.
Subspace span_of_polys(std::size_t degree, std::uint32_t p, const std::vector<GeneralPoly>& polys);
/// The words spanning a monomial-spanned subspace, ascending.
std::vector<Monomial> spanning_words(const Subspace& s);

LevelState initial_level(std::uint32_t p, bool dense);

struct Case3Choice {
  Monomial m1, m2;
  Subspace Q;
};

/// m1, m2: the two lex-least words of VV that are not pivots of P's forward
/// echelon basis; Q = P + span(remaining non-pivot words), so VV = Q ⊕ span{m1, m2}.
Case3Choice case3_select(const Subspace& P, const std::vector<Monomial>& VV);

/// The projection of F onto V·V along U·U + U·V + V·U.
Subspace project_onto_VV(const Subspace& F, const LevelState& level);

/// Sets N and M from U, V and the labels.
void build_NM(LevelState& state);

LevelState build_level(const LevelState& prev, const Schedule& schedule, const FOracle& oracle, Engine engine);

class Levels {
 public:
  explicit Levels(Schedule schedule, std::uint32_t p = 2, Engine engine = Engine::automatic);
  Levels(Schedule schedule, FOracle oracle, std::uint32_t p, Engine engine);

  const Schedule& schedule() const noexcept { return schedule_; }
  const FOracle& oracle() const noexcept { return oracle_; }
  std::uint32_t prime() const noexcept { return p_; }
  Engine engine() const noexcept { return engine_; }

  void build_through(std::size_t n);
  std::size_t count() const noexcept { return states_.size(); }
  bool has(std::size_t n) const noexcept { return n < states_.size(); }
  /// Level n, which must already be built.
  const LevelState& at(std::size_t n) const;
  const std::vector<LevelState>& states() const noexcept { return states_; }
  /// Replaces the store (used when loading persisted levels).
  void adopt(std::vector<LevelState> states);

 private:
  Schedule schedule_;
  FOracle oracle_;
  std::uint32_t p_;
  Engine engine_;
  std::vector<LevelState> states_;
};

/// For a level outside S stored densely: rank-one functionals f ⊗ g on H(2^(n+1))
/// whose common kernel is the next level's U = H·U + U·H + m2·V. They are
/// φ1 ⊗ φ1 and φ1 ⊗ φ2 with φ the dual basis of (m1, m2) vanishing on U.
/// nullopt when the level does not have that shape.
std::optional<std::vector<std::pair<DenseVector, DenseVector>>> case2_successor_annihilator(const LevelState& s);

/// Conditions 1–8 and N ⊕ M = H at level n. Checks needing level n+1 use the
/// stored level, or the factored annihilator of its U when it is not built and
/// n lies outside S; otherwise they are reported as pending.
std::vector<CheckResult> check_conditions(const Levels& levels, std::size_t n);

/// nullopt iff H(k 2^n)·U(2^n)·H((2^(m−n) − k − 1) 2^n) ⊆ U(2^m); otherwise a witness.
std::optional<std::string> ustack_counterexample(std::size_t n, std::size_t m, std::uint64_t k, const Levels& levels);
bool check_ustack(std::size_t n, std::size_t m, std::uint64_t k, const Levels& levels);

struct CoverResult {
  bool ok = true;
  std::size_t degree = 0;      // degree of the first failure
  std::string counterexample;  // failing element
};

/// Checks that every homogeneous element of the two-sided ideal generated by
/// f^exponent, up to degree D, lies in Σ_k H(k r)·F·H(d − k r − r).
CoverResult verify_F_covers(const GeneralPoly& f, unsigned exponent, std::size_t r, const Subspace& F, std::size_t D);

}  // namespace nilalg
