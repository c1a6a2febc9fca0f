#include "nilalg/growth.hpp"

#include "nilalg/bounds.hpp"
#include "nilalg/errors.hpp"

namespace nilalg {

HilbertProfile profile_from_dims(std::vector<BigInt> dims) {
  HilbertProfile p;
  BigInt run = 0;
  for (const auto& d : dims) {
    run += d;
    p.cumulative.push_back(run);
  }
  p.dims = std::move(dims);
  return p;
}

HilbertProfile hilbert(std::size_t nmax, QuotientTable& table) {
  if (nmax < 1) throw PreconditionError("hilbert needs nmax >= 1");
  std::vector<BigInt> dims;
  dims.reserve(nmax);
  for (std::size_t n = 1; n <= nmax; ++n) dims.push_back(table.quotient_dim(n));
  return profile_from_dims(std::move(dims));
}

std::vector<CheckResult> check_growth_bound(const HilbertProfile& profile) {
  std::vector<CheckResult> out;
  const nlohmann::json P{{"nmax", profile.nmax()}};
  std::string bad_dim, bad_cum;
  for (std::size_t n = 2; n <= profile.nmax(); ++n) {
    if (bad_dim.empty() && compare_log_power(profile.dim(n), 64, n, 2, 6) >= 0)
      bad_dim = "n=" + std::to_string(n) + ": dim " + profile.dim(n).str();
    if (bad_cum.empty() && compare_log_power(profile.cum(n), 64, n, 3, 6) > 0)
      bad_cum = "n=" + std::to_string(n) + ": cumulative " + profile.cum(n).str();
    if (!bad_dim.empty() && !bad_cum.empty()) break;
  }
  out.push_back(make_result("growth_dim", P, bad_dim.empty(), bad_dim, "dim < 64 n^2 (log n)^6"));
  out.push_back(make_result("growth_cumulative", P, bad_cum.empty(), bad_cum, "cumulative <= 64 n^3 (log n)^6"));
  return out;
}

Rational gk_slope(const HilbertProfile& profile, std::size_t n1, std::size_t n2) {
  if (n1 < 2 || n1 >= n2 || n2 > profile.nmax()) throw PreconditionError("slope window must satisfy 2 <= n1 < n2 <= nmax");
  std::vector<std::size_t> points;
  for (std::size_t n = 1; n <= n2; n <<= 1)
    if (n >= n1) points.push_back(n);
  if (points.size() < 2) {
    points.clear();
    for (std::size_t n = n1; n <= n2; ++n) points.push_back(n);
  }
  Rational sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto n : points) {
    const Rational x = log2_bracket(n, kSlopePrecision).lo;
    const Rational y = log2_bracket(profile.cum(n), kSlopePrecision).lo;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const Rational N(points.size());
  const Rational den = N * sxx - sx * sx;
  if (den == 0) throw PreconditionError("degenerate slope window");
  return (N * sxy - sx * sy) / den;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace nilalg
