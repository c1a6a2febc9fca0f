#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nilalg/bounds.hpp"
#include "nilalg/growth.hpp"
#include "support.hpp"

using namespace nilalg;
using namespace testsupport;

namespace {

HilbertProfile cubic_profile(std::size_t nmax) {
  std::vector<BigInt> dims;
  for (std::size_t n = 1; n <= nmax; ++n) dims.push_back(BigInt(n) * n * n - BigInt(n - 1) * (n - 1) * (n - 1));
  return profile_from_dims(dims);
}

// Exact sign of L − c n^a k^b when n = 2^k.
int pow2_sign(const BigInt& L, const BigInt& c, unsigned k, unsigned a, unsigned b) {
  BigInt rhs = c * pow2(std::size_t{k} * a);
  for (unsigned t = 0; t < b; ++t) rhs *= k;
  return L < rhs ? -1 : (L > rhs ? 1 : 0);
}

}  // namespace

TEST_CASE("log brackets") {
  for (std::uint64_t n = 1; n <= 5000; n += 7) {
    auto br = log2_bracket(n, 40);
    CHECK(br.lo <= br.hi);
    CHECK(br.hi - br.lo <= Rational(1, BigInt(1) << 40));
    const double l = std::log2(static_cast<double>(n));
    CHECK(to_double(br.lo) <= l + 1e-9);
    CHECK(to_double(br.hi) >= l - 1e-9);
  }
  auto exact = log2_bracket(1024);
  CHECK(exact.lo == 10);
  CHECK(exact.hi == 10);
  auto big = log2_bracket(pow2(300) + 1);
  CHECK(big.lo >= 300);
  CHECK(big.hi <= 301);
}

TEST_CASE("exact comparison against n^a (log n)^b") {
  // Powers of two: both sides are integers.
  for (unsigned k = 1; k <= 20; ++k)
    for (unsigned a : {1u, 2u, 3u})
      for (unsigned b : {0u, 3u, 6u}) {
        BigInt rhs = 64 * pow2(std::size_t{k} * a);
        for (unsigned t = 0; t < b; ++t) rhs *= k;
        for (const BigInt& L : std::vector<BigInt>{BigInt(rhs - 1), rhs, BigInt(rhs + 1)})
          CHECK(compare_log_power(L, 64, pow2(k), a, b) == pow2_sign(L, 64, k, a, b));
      }
  // Other n: compare 8 (log n)^3 with floating point where the margin is wide.
  for (std::uint64_t n = 3; n <= 3000; n += 37) {
    const double r0 = 8 * std::pow(std::log2(static_cast<double>(n)), 3);
    CHECK(compare_log_power(BigInt(static_cast<long long>(r0 * 0.99)), 8, n, 0, 3) == -1);
    CHECK(compare_log_power(BigInt(static_cast<long long>(r0 * 1.01) + 1), 8, n, 0, 3) == 1);
  }
  CHECK(compare_log_power(0, 1, 1, 2, 6) == 0);  // log 1 = 0
}

TEST_CASE("growth bound checks") {
  Levels L(Schedule::default_real());
  QuotientTable T(L);
  auto prof = hilbert(256, T);
  CHECK(prof.dim(1) == 2);
  CHECK(prof.dim(4) == 5);
  CHECK(prof.cum(4) == 14);
  for (std::size_t n = 1; n <= 7; ++n)
    CHECK(prof.dim(n) == BigInt((std::size_t{1} << n) - oracle::E_words(oracle::default_levels(3), n).size()));
  for (std::size_t n = 1; n <= 256; ++n) {
    CHECK(prof.dim(n) >= 1);
    if (n > 1) CHECK(prof.cum(n) == prof.cum(n - 1) + prof.dim(n));
  }
  for (const auto& r : check_growth_bound(prof)) CHECK(r.status == Status::pass);

  // A synthetic profile meeting the dimension bound at n = 4: 64·16·2^6 = 65536 (strict bound).
  std::vector<BigInt> dims{2, 3, 4, 65536};
  auto bad = check_growth_bound(profile_from_dims(dims));
  REQUIRE(bad.size() == 2);
  CHECK(bad[0].check == "growth_dim");
  CHECK(bad[0].status == Status::fail);
  CHECK(bad[0].counterexample.rfind("n=4:", 0) == 0);
  CHECK(bad[1].status == Status::pass);  // 65545 ≤ 64·64·2^6
  // Cumulative bound at n = 2 is 64·8 = 512 (inclusive).
  CHECK(check_growth_bound(profile_from_dims({2, 510}))[1].status == Status::pass);
  auto cum_bad = check_growth_bound(profile_from_dims({2, 511}));
  CHECK(cum_bad[1].status == Status::fail);
  CHECK(cum_bad[0].status == Status::fail);  // 511 is not < 64·4
  std::vector<BigInt> just_below{2, 3, 4, 65535};
  CHECK(check_growth_bound(profile_from_dims(just_below))[0].status == Status::pass);
}

TEST_CASE("fitted slope") {
  auto cubic = cubic_profile(1024);
  CHECK(cubic.cum(10) == 1000);
  CHECK(gk_slope(cubic, 2, 1024) == 3);
  CHECK(gk_slope(cubic, 256, 1024) == 3);
  std::vector<BigInt> flat(100, 0);
  flat[0] = 5;
  CHECK(gk_slope(profile_from_dims(flat), 4, 64) == 0);
  // Few powers of two in the window: every n is sampled.
  auto s = to_double(gk_slope(cubic, 5, 7));
  CHECK(s == doctest::Approx(3.0).epsilon(1e-6));
  CHECK_THROWS(gk_slope(cubic, 7, 5));
  CHECK_THROWS(gk_slope(cubic, 2, 2000));

  Levels L(Schedule::default_real());
  QuotientTable T(L);
  auto prof = hilbert(1024, T);
  const double slope = to_double(gk_slope(prof, 64, 1024));
  CHECK(slope > 1.8);
  CHECK(slope < 2.2);
}
