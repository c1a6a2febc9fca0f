#include "nilalg/schedule.hpp"

#include <algorithm>
#include <cctype>

#include "nilalg/errors.hpp"

namespace nilalg {

namespace {

std::string big_str(const BigInt& v) {
  if (v > 0 && (v & (v - 1)) == 0 && v > BigInt(1) << 64) return "2^" + std::to_string(floor_log2(v));
  std::string s = v.str();
  if (s.size() > 60) return "<" + std::to_string(floor_log2(v) + 1) + "-bit integer>";
  return s;
}

BigInt linear_part(const BoundExpr& e) {
  return BigInt(e.a) * e.i + BigInt(e.b) * BigInt(floor_log2(e.i)) + BigInt(e.c);
}

}  // namespace

BigInt BoundExpr::value() const {
  if (i < 1) throw PreconditionError("bound index must be positive");
  if (!expandable()) throw BudgetExceeded("bound 2^i with i = " + big_str(i) + " cannot be expanded");
  return pow2(static_cast<std::size_t>(i)) - linear_part(*this);
}

std::string BoundExpr::str() const {
  std::string s = "2^" + (i.str().size() > 60 ? "(" + big_str(i) + ")" : i.str());
  auto term = [&](long k, const std::string& what) {
    if (k == 0) return;
    s += (k > 0 ? " - " : " + ");
    long ak = k > 0 ? k : -k;
    if (what.empty()) {
      s += std::to_string(ak);
    } else {
      if (ak != 1) s += std::to_string(ak) + "*";
      s += what;
    }
  };
  term(a, "i");
  term(b, "floor(log i)");
  term(c, "");
  if (expandable() && i <= 64) s += " = " + value().str();
  return s;
}

int compare(const BoundExpr& e, const BigInt& n) {
  const std::size_t nbits = n > 0 ? floor_log2(n) + 2 : 2;
  if (e.expandable() || e.i <= nbits) {
    BigInt v = e.value();
    return v < n ? -1 : (v > n ? 1 : 0);
  }
  // 2^i dwarfs both n and the linear correction.
  return 1;
}

int compare(const BoundExpr& e, const BoundExpr& f) {
  if (e.expandable() && f.expandable()) {
    BigInt a = e.value(), b = f.value();
    return a < b ? -1 : (a > b ? 1 : 0);
  }
  if (e.i == f.i) {
    BigInt d = linear_part(f) - linear_part(e);
    return d < 0 ? -1 : (d > 0 ? 1 : 0);
  }
  return e.i < f.i ? -1 : 1;
}

BigInt parse_index(const std::string& raw) {
  std::string t;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  auto parse_dec = [&](const std::string& s, std::size_t base) {
    if (s.empty()) throw ParseError("expected a decimal integer", base);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw ParseError("expected a decimal digit", base + k);
    return BigInt(s);
  };
  if (t.rfind("2^", 0) == 0) {
    std::size_t k = 2;
    while (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k]))) ++k;
    BigInt e = parse_dec(t.substr(2, k - 2), 2);
    if (e > 100000000) throw BudgetExceeded("index exponent too large to materialize");
    BigInt v = pow2(static_cast<std::size_t>(e));
    if (k == t.size()) return v;
    if (t[k] != '+' && t[k] != '-') throw ParseError("expected '+' or '-'", k);
    BigInt c = parse_dec(t.substr(k + 1), k + 1);
    return t[k] == '+' ? BigInt(v + c) : BigInt(v - c);
  }
  return parse_dec(t, 0);
}

std::optional<IndexViolation> validate_real(const std::vector<std::pair<BigInt, GeneralPoly>>& entries) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const BigInt& i = entries[k].first;
    if (k > 0 && i <= entries[k - 1].first)
      return IndexViolation{k, "order", big_str(i), big_str(entries[k - 1].first)};
    if (i < 5) return IndexViolation{k, "i>=5", big_str(i), "5"};
    const std::size_t log_i = floor_log2(i);
    const std::size_t deg = entries[k].second.degree();
    // For deg > 10, 6^(6 deg) > 2^155 exceeds every materializable ⌊log i⌋.
    if (deg > 10)
      return IndexViolation{k, "log-degree", "floor(log i) = " + std::to_string(log_i),
                             "6^(6*" + std::to_string(deg) + ")"};
    BigInt rhs = boost::multiprecision::pow(BigInt(6), static_cast<unsigned>(6 * deg));
    if (BigInt(log_i) <= rhs)
      return IndexViolation{k, "log-degree", "floor(log i) = " + std::to_string(log_i),
                             "6^(6*" + std::to_string(deg) + ") = " + rhs.str()};
    if (k > 0) {
      const BigInt& j = entries[k - 1].first;
      // Need i > 2^E with E = 2^(2^(2j)); decided on bit lengths.
      const std::string rhs_text = "2^(2^(2^(2*" + big_str(j) + ")))";
      bool ok = false;
      if (j < 3) {
        const std::size_t e = std::size_t{1} << (std::size_t{1} << (2 * static_cast<std::size_t>(j)));
        ok = i > pow2(e);
      } else {
        // E ≥ 2^64 exceeds the bit length of every materialized integer.
        ok = false;
      }
      if (!ok) return IndexViolation{k, "gap", big_str(i), rhs_text};
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> binary_decomposition(std::uint64_t j) {
  if (j == 0) throw PreconditionError("binary decomposition needs j >= 1");
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < 64; ++p)
    if ((j >> p) & 1U) out.push_back(p);
  return out;
}

Schedule Schedule::default_real() { return Schedule(Mode::real, {}); }

Schedule::Schedule(Mode mode, std::vector<ScheduleEntry> entries) : mode_(mode), entries_(std::move(entries)) {
  for (std::size_t k = 1; k < entries_.size(); ++k)
    if (entries_[k].i <= entries_[k - 1].i) throw PreconditionError("schedule indices must be strictly increasing");
  if (mode_ == Mode::toy) {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (entries_[k].i < 2) throw PreconditionError("toy schedule indices must be >= 2");
      if (k > 0 && compare(S_hi(entries_[k - 1].i), S_lo(entries_[k].i)) >= 0)
        throw PreconditionError("toy schedule intervals overlap");
    }
    conformant_ = false;
    return;
  }
  std::vector<std::pair<BigInt, GeneralPoly>> pairs;
  for (const auto& e : entries_) {
    if (!e.f) throw PreconditionError("real-mode entries need a polynomial f");
    if (e.F_basis) throw PreconditionError("real-mode F spaces live in unreachable degrees; use the null oracle");
    pairs.emplace_back(e.i, *e.f);
  }
  violation_ = validate_real(pairs);
  if (violation_)
    throw PreconditionError("real-mode schedule violates the index conditions (" + violation_->clause + ": " +
                            violation_->lhs + " vs " + violation_->rhs + ")");
  conformant_ = true;
}

BigInt Schedule::r(const BigInt& i) {
  BoundExpr e = r_log2(i);
  if (!e.expandable() || e.value() > 1000000) throw BudgetExceeded("r_i too large to materialize");
  return pow2(static_cast<std::size_t>(e.value()));
}

std::optional<SPosition> Schedule::in_S(std::uint64_t n) const {
  const BigInt N = n;
  for (const auto& e : entries_) {
    if (compare(S_lo(e.i), N) <= 0 && compare(S_hi(e.i), N) >= 0) {
      BigInt lo = S_lo(e.i).value();
      return SPosition{e.i, static_cast<std::uint64_t>(N - lo)};
    }
  }
  return std::nullopt;
}

std::optional<TPosition> Schedule::T_of(std::uint64_t n) const {
  if (in_S(n)) return std::nullopt;
  const BigInt N = n;
  for (const auto& e : entries_)
    if (compare(S_lo(e.i), N) > 0) return TPosition{e.i};
  return TPosition{std::nullopt};
}

PartitionTerms Schedule::partition_terms(std::uint64_t n) const {
  PartitionTerms out;
  for (auto p : binary_decomposition(n)) {
    const std::uint64_t bit = std::uint64_t{1} << p;
    if (auto s = in_S(p)) {
      auto it = std::find_if(out.s_terms.begin(), out.s_terms.end(), [&](const auto& t) { return t.first == s->i; });
      if (it == out.s_terms.end())
        out.s_terms.emplace_back(s->i, bit);
      else
        it->second += bit;
    } else {
      auto t = T_of(p);
      auto it = std::find_if(out.t_terms.begin(), out.t_terms.end(), [&](const auto& q) { return q.first == t->m; });
      if (it == out.t_terms.end())
        out.t_terms.emplace_back(t->m, bit);
      else
        it->second += bit;
    }
  }
  return out;
}

const ScheduleEntry* Schedule::entry_for_F_level(std::uint64_t level) const {
  for (const auto& e : entries_)
    if (compare(r_log2(e.i), BigInt(level)) == 0) return &e;
  return nullptr;
}

}  // namespace nilalg
