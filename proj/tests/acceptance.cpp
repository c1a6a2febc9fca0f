// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nilalg/bounds.hpp"
#include "nilalg/construction.hpp"
#include "nilalg/growth.hpp"
#include "nilalg/quotient.hpp"
#include "nilalg/schedule.hpp"
#include "support.hpp"

using namespace nilalg;
using namespace testsupport;

namespace {

/// Collects the first few failure messages of one criterion.
struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  void result(const CheckResult& r, const std::string& where, bool allow_na = false) {
    const bool ok = r.status == Status::pass || (allow_na && r.status == Status::not_applicable);
    expect(ok, r.check + " " + where + " is " + status_name(r.status) +
                   (r.counterexample.empty() ? "" : " (" + r.counterexample + ")"));
  }
};

Status status_of(const std::vector<CheckResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.check == name) return r.status;
  return Status::fail;
}

std::string level_where(std::size_t n) { return "at level " + std::to_string(n); }

oracle::WordSet set_of(const Subspace& s) { return word_set(s.is_monomial() ? s : *s.to_monomial()); }

// ---- criteria ----

void construction_invariants(Tally& t) {
  Levels L(Schedule::default_real());
  L.build_through(11);
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto rs = check_conditions(L, n);
    for (const auto& r : rs) {
      if (r.check == "cond2" || r.check == "cond4") {
        t.expect(r.status == Status::not_applicable, r.check + " should be vacuous " + level_where(n));
      } else {
        t.result(r, level_where(n));
      }
    }
  }
  auto T = toy_levels(true, Engine::dense);
  T.build_through(4);
  t.expect(T.at(3).build_case == 3, "toy level 3 is not a Case 3 level");
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& r : check_conditions(T, n)) t.result(r, "(toy) " + level_where(n), true);
  // Each of the eight conditions is exercised (not vacuous) at some toy level.
  for (int c = 1; c <= 8; ++c) {
    bool exercised = false;
    for (std::size_t n = 0; n <= 4; ++n)
      exercised = exercised || status_of(check_conditions(T, n), "cond" + std::to_string(c)) == Status::pass;
    t.expect(exercised, "toy condition " + std::to_string(c) + " is never exercised");
  }
  t.note = "default levels 0..10; toy Z={2} with a 13-dimensional non-monomial F through level 4";
}

void engine_equivalence(Tally& t) {
  Levels M(Schedule::default_real(), 2, Engine::monomial);
  Levels D(Schedule::default_real(), 2, Engine::dense);
  M.build_through(4);
  D.build_through(4);
  for (std::size_t n = 0; n <= 4; ++n) {
    t.expect(M.at(n).U.to_dense().rows() == D.at(n).U.rows(), "U differs at level " + std::to_string(n));
    t.expect(M.at(n).V.to_dense().rows() == D.at(n).V.to_dense().rows(), "V differs at level " + std::to_string(n));
  }
  QuotientTable TM(M, QPath::monomial), TD(D, QPath::dense);
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::string at = " at n=" + std::to_string(n);
    t.expect(TM.E(n).to_dense().rows() == TD.E(n).rows(), "E differs" + at);
    t.expect(TM.R(n).to_dense().rows() == TD.R(n).rows(), "R differs" + at);
    t.expect(TM.S(n).to_dense().rows() == TD.S(n).rows(), "S differs" + at);
    t.expect(TM.Q(n).to_dense().rows() == TD.Q(n).rows(), "Q differs" + at);
    t.expect(TM.W(n).to_dense().rows() == TD.W(n).rows(), "W differs" + at);
  }
  t.note = "canonical echelon bases compared byte for byte";
}

void oracle_numbers(Tally& t) {
  // Brute force first.
  const auto ref = oracle::default_levels(4);
  std::vector<oracle::WordSet> E_ref;
  for (std::size_t n = 1; n <= 4; ++n) E_ref.push_back(oracle::E_words(ref, n));
  t.expect(E_ref[0].empty(), "oracle: E(1) is not 0");
  t.expect(E_ref[1] == oracle::WordSet{"yy"}, "oracle: E(2) is not span{yy}");
  t.expect(E_ref[2].size() == 4, "oracle: dim E(3) is not 4");
  std::vector<std::size_t> dims_ref;
  for (std::size_t n = 1; n <= 4; ++n) dims_ref.push_back((std::size_t{1} << n) - E_ref[n - 1].size());
  t.expect(dims_ref == std::vector<std::size_t>{2, 3, 4, 5}, "oracle: quotient dims are not [2,3,4,5]");
  t.expect(ref[2].U.size() == 14, "oracle: dim U(4) is not 14");
  t.expect(oracle::Q_words(ref, 3) == oracle::WordSet{"xxx"}, "oracle: Q(3) is not span{xxx}");
  t.expect(oracle::W_words(ref, 3) == oracle::WordSet{"xxx", "xxy"}, "oracle: W(3) is not span{xxx,xxy}");
  // Engine must match.
  Levels L(Schedule::default_real());
  QuotientTable T(L);
  for (std::size_t n = 1; n <= 4; ++n) {
    t.expect(set_of(T.E(n)) == E_ref[n - 1], "engine E(" + std::to_string(n) + ") differs from brute force");
    t.expect(T.quotient_dim(n) == dims_ref[n - 1], "engine dim H/E(" + std::to_string(n) + ") differs");
  }
  L.build_through(2);
  t.expect(L.at(2).U.dim() == 14, "engine dim U(4) is not 14");
  t.expect(set_of(T.Q(3)) == oracle::WordSet{"xxx"}, "engine Q(3) is not span{xxx}");
  t.expect(set_of(T.W(3)) == oracle::WordSet{"xxx", "xxy"}, "engine W(3) is not span{xxx,xxy}");
  t.note = "E(1)=0, E(2)=span{yy}, dim E(3)=4, dims [2,3,4,5], dim U(4)=14, Q(3), W(3)";
}

void ustack(Tally& t) {
  Levels D(Schedule::default_real(), 2, Engine::dense);
  D.build_through(4);
  std::size_t dense_count = 0, mono_count = 0;
  for (std::size_t m = 0; m <= 4; ++m)
    for (std::size_t n = 0; n <= m; ++n)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << (m - n)); ++k, ++dense_count)
        t.expect(check_ustack(n, m, k, D), "dense (n,m,k)=(" + std::to_string(n) + "," + std::to_string(m) + "," +
                                               std::to_string(k) + ")");
  Levels M(Schedule::default_real(), 2, Engine::monomial);
  M.build_through(10);
  for (std::size_t m = 0; m <= 10; ++m)
    for (std::size_t n = 0; n <= m; ++n)
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << (m - n)); ++k, ++mono_count)
        if (auto w = ustack_counterexample(n, m, k, M))
          t.expect(false, "monomial (n,m,k)=(" + std::to_string(n) + "," + std::to_string(m) + "," +
                              std::to_string(k) + "): " + *w);
        else
          t.expect(true, "");
  t.note = std::to_string(dense_count) + " dense and " + std::to_string(mono_count) + " monomial triples";
}

void inequalities(Tally& t) {
  Levels L(Schedule::default_real());
  QuotientTable T(L);
  std::size_t pairs = 0;
  for (std::size_t j = 1; j < 512; ++j)
    for (std::size_t k = 1; j + k <= 512; ++k) {
      const std::size_t low_j = static_cast<std::size_t>(__builtin_ctzll(j));
      const std::size_t high_k = static_cast<std::size_t>(63 - __builtin_clzll(k));
      if (low_j <= high_k) continue;  // bits of j must lie strictly above those of k
      ++pairs;
      t.result(verify_qadd(j, k, T), "(j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")");
    }
  std::size_t wq = 0;
  for (std::size_t n = 3; n < 512; ++n) {
    if ((n & (n - 1)) == 0) continue;
    ++wq;
    t.result(verify_wqsmall(n, T), "n=" + std::to_string(n));
  }
  for (std::size_t j = 1; j <= 512; ++j) t.result(verify_tdim(j, T), "j=" + std::to_string(j));
  for (std::size_t n = 2; n <= 512; ++n) t.result(verify_main_estimate(n, T), "n=" + std::to_string(n));
  t.note = std::to_string(pairs) + " Qadd pairs, " + std::to_string(wq) + " WQsmall degrees, Tdim j<=512, estimate n<=512";
}

void totalsize(Tally& t) {
  Levels L(Schedule::default_real());
  QuotientTable T(L, QPath::monomial);
  for (std::size_t n = 1; n <= 12; ++n)
    for (const auto& r : verify_totalsize(n, T)) t.result(r, "n=" + std::to_string(n));
  Levels D(Schedule::default_real(), 2, Engine::dense);
  QuotientTable TD(D, QPath::dense);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : verify_totalsize(n, TD)) t.result(r, "(dense) n=" + std::to_string(n));
  t.note = "monomial path n<=12, dense cross-check n<=4";
}

void ideal(Tally& t) {
  Levels L(Schedule::default_real());
  QuotientTable T(L);
  const auto rs = verify_ideal(257, T);
  for (const auto& r : rs) t.result(r, r.parameters.dump());
  t.expect(rs.size() == 256, "expected 256 ideal checks, got " + std::to_string(rs.size()));
  t.note = "H(1)E(n)+E(n)H(1) inside E(n+1) for n=1..256";
}

void witness(Tally& t) {
  Levels L(Schedule::default_real());
  QuotientTable T(L);
  for (std::size_t n = 1; n <= 4096; ++n) t.result(verify_x_power(n, T), "n=" + std::to_string(n));
  t.note = "x^n outside E(n) for n=1..4096";
}

void growth(Tally& t) {
  Levels L(Schedule::default_real());
  QuotientTable T(L);
  const auto prof = hilbert(4096, T);
  for (const auto& r : check_growth_bound(prof)) t.result(r, "n<=4096");
  const Rational slope = gk_slope(prof, 256, 4096);
  t.expect(slope <= 3, "slope over [256,4096] exceeds 3");
  std::ostringstream s;
  s.precision(6);
  s << "dim H(4096)/E(4096) = " << prof.dim(4096) << ", cumulative = " << prof.cum(4096)
    << ", fitted slope over [256,4096] = " << to_double(slope);
  t.note = s.str();
}

void index_condition(Tally& t) {
  const GeneralPoly x = parse_poly("x");
  const BigInt i = pow2(46657);
  t.expect(!validate_real({{i, x}}).has_value(), "witness (i=2^46657, f=x) rejected");
  auto small = validate_real({{pow2(46656), x}});
  t.expect(small && small->clause == "log-degree", "i=2^46656 (too small) not rejected by the log/degree clause");
  auto tiny = validate_real({{BigInt(4), x}});
  t.expect(tiny && tiny->clause == "i>=5", "i=4 not rejected by the i>=5 clause");
  auto degree = validate_real({{i, parse_poly("xx")}});
  t.expect(degree && degree->clause == "log-degree", "deg f = 2 not rejected");
  auto gap = validate_real({{i, x}, {i + 1, x}});
  t.expect(gap && gap->clause == "gap", "two-entry list with a broken gap not rejected");
  t.note = "witness accepted; i too small, degree too large, gap broken rejected";
}

void f_covers(Tally& t) {
  const GeneralPoly x = parse_poly("x");
  const auto ok = verify_F_covers(x, 2, 1, Subspace::span_words(1, 2, {Monomial::parse("x")}), 3);
  t.expect(ok.ok, "F=span{x}, D=3 should pass");
  const auto bad = verify_F_covers(x, 2, 1, Subspace::span_words(1, 2, {Monomial::parse("y")}), 2);
  t.expect(!bad.ok, "F=span{y}, D=2 should fail");
  t.expect(bad.counterexample == "xx", "counterexample is '" + bad.counterexample + "', expected xx");
  t.note = "pass with F=span{x}; fail with F=span{y}, counterexample " + bad.counterexample;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Tally&)>>> criteria{
      {"construction invariants", construction_invariants},
      {"engine equivalence", engine_equivalence},
      {"desk-scale oracle numbers", oracle_numbers},
      {"U stacking", ustack},
      {"inequality suites", inequalities},
      {"total-size estimate", totalsize},
      {"ideal property", ideal},
      {"infinite-dimensionality witness", witness},
      {"growth bounds", growth},
      {"index-condition validator", index_condition},
      {"F covers", f_covers},
  };
  bool all = true;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[c].second(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = t.failures.empty();
    all = all && ok;
    std::printf("%s criterion %zu: %s — %zu checks, %.2f s%s%s\n", ok ? "PASS" : "FAIL", c + 1, criteria[c].first,
                t.checks, secs, t.note.empty() ? "" : "; ", t.note.c_str());
    for (const auto& f : t.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
