#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilalg/bigint.hpp"
#include "nilalg/freealg.hpp"

namespace nilalg {

/// The integer 2^i − a·i − b·⌊log i⌋ − c for a possibly astronomical index i.
/// Compared exactly; expanded only when i is small enough to materialize.
struct BoundExpr {
  BigInt i;
  long a = 0;
  long b = 0;
  long c = 0;

  static constexpr std::size_t kExpandBits = 1u << 16;

  bool expandable() const { return i <= kExpandBits; }
  /// The exact value; throws BudgetExceeded when i is too large to expand.
  BigInt value() const;
  std::string str() const;
};

/// sign(e − n) as -1, 0, +1.
int compare(const BoundExpr& e, const BigInt& n);
int compare(const BoundExpr& e, const BoundExpr& f);

/// Parses a big integer written in decimal or as "2^K", "2^K+C", "2^K-C".
BigInt parse_index(const std::string& text);

enum class Mode { real, toy };

struct ScheduleEntry {
  BigInt i;
  std::optional<GeneralPoly> f;
  /// Basis of an explicitly supplied F_i; nullopt means the null oracle (F_i = 0).
  std::optional<std::vector<GeneralPoly>> F_basis;
};

struct SPosition {
  BigInt i;       // member of Z
  std::uint64_t j;  // offset inside S_i
};

struct TPosition {
  /// The member m whose T_m contains the point; nullopt for the region above the last member.
  std::optional<BigInt> m;
};

struct PartitionTerms {
  std::vector<std::pair<BigInt, std::uint64_t>> s_terms;                 // (m, j_m)
  std::vector<std::pair<std::optional<BigInt>, std::uint64_t>> t_terms;  // (m, k_m)
};

/// One violated clause of the index conditions, with both sides printed.
struct IndexViolation {
  std::size_t index;   // position in the entry list
  std::string clause;  // "order", "i>=5", "log-degree", "gap"
  std::string lhs;
  std::string rhs;
};

/// Checks i ≥ 5, ⌊log i⌋ > 6^(6·deg f) and, for consecutive members j < i,
/// i > 2^(2^(2^(2j))). Returns the first violation, or nullopt.
std::optional<IndexViolation> validate_real(const std::vector<std::pair<BigInt, GeneralPoly>>& entries);

/// Ascending exponents of the binary expansion of j ≥ 1.
std::vector<std::size_t> binary_decomposition(std::uint64_t j);

class Schedule {
 public:
  /// Real mode with no explicit members: every reachable index lies in one T region.
  static Schedule default_real();
  Schedule(Mode mode, std::vector<ScheduleEntry> entries);

  Mode mode() const noexcept { return mode_; }
  const std::vector<ScheduleEntry>& entries() const noexcept { return entries_; }
  /// True for a real-mode schedule that passes the index conditions.
  bool conformant() const noexcept { return conformant_; }
  const std::optional<IndexViolation>& violation() const noexcept { return violation_; }

  static BoundExpr S_lo(const BigInt& i) { return BoundExpr{i, 1, 1, 0}; }
  static BoundExpr S_hi(const BigInt& i) { return BoundExpr{i, 0, 1, 1}; }
  /// log2 of r_i = 2^(2^i − ⌊log i⌋); w_i = 4 r_i.
  static BoundExpr r_log2(const BigInt& i) { return BoundExpr{i, 0, 1, 0}; }
  static BigInt r(const BigInt& i);
  static BigInt w(const BigInt& i) { return 4 * r(i); }

  std::optional<SPosition> in_S(std::uint64_t n) const;
  /// The T region containing n, or nullopt when n lies in S.
  std::optional<TPosition> T_of(std::uint64_t n) const;
  PartitionTerms partition_terms(std::uint64_t n) const;
  /// The member i whose F_i lives in degree 2^level, if any (i.e. level = 2^i − ⌊log i⌋).
  const ScheduleEntry* entry_for_F_level(std::uint64_t level) const;

 private:
  Mode mode_;
  std::vector<ScheduleEntry> entries_;
  bool conformant_ = false;
  std::optional<IndexViolation> violation_;
};

}  // namespace nilalg
