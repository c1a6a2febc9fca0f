#pragma once

#include <cstddef>
#include <vector>

#include "nilalg/bigint.hpp"
#include "nilalg/quotient.hpp"
#include "nilalg/report.hpp"

namespace nilalg {

/// dim H(n)/E(n) and its running sum for n = 1..nmax (index n − 1).
struct HilbertProfile {
  std::vector<BigInt> dims;
  std::vector<BigInt> cumulative;

  std::size_t nmax() const noexcept { return dims.size(); }
  const BigInt& dim(std::size_t n) const { return dims.at(n - 1); }
  const BigInt& cum(std::size_t n) const { return cumulative.at(n - 1); }
};

HilbertProfile profile_from_dims(std::vector<BigInt> dims);
HilbertProfile hilbert(std::size_t nmax, QuotientTable& table);

/// dim < 64 n^2 (log n)^6 and cumulative ≤ 64 n^3 (log n)^6 for every n ≥ 2;
/// each result names the first offending n.
std::vector<CheckResult> check_growth_bound(const HilbertProfile& profile);

/// Bits of precision for logarithms of non-powers of two (values are truncated to this grid).
inline constexpr unsigned kSlopePrecision = 40;

/// Least-squares slope of log2(cumulative) against log2(n) over [n1, n2],
/// sampled at the powers of two in the window (every n if there are fewer than two).
Rational gk_slope(const HilbertProfile& profile, std::size_t n1, std::size_t n2);

double to_double(const Rational& r);

}  // namespace nilalg
