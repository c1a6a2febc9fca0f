#include "nilalg/bounds.hpp"

#include "nilalg/errors.hpp"

namespace nilalg {

Log2Bracket log2_bracket(const BigInt& n, unsigned precision) {
  if (n < 1) throw PreconditionError("log2 needs n >= 1");
  const std::size_t k = floor_log2(n);
  if (n == pow2(k)) return {Rational(k), Rational(k)};
  // y = n / 2^k ∈ (1, 2) as fixed point with F fraction bits, bracketed by [ylo, yhi].
  const std::size_t F = 2 * precision + 64 + k;
  const BigInt one = pow2(F), two = pow2(F + 1);
  BigInt ylo = n << (F - k), yhi = ylo;
  BigInt bits = 0;
  unsigned done = 0;
  for (; done < precision; ++done) {
    ylo = (ylo * ylo) >> F;
    yhi = (yhi * yhi + one - 1) >> F;
    if (ylo >= two) {
      bits = (bits << 1) | 1;
      ylo >>= 1;
      yhi = (yhi + 1) >> 1;
    } else if (yhi < two) {
      bits <<= 1;
    } else {
      break;
    }
  }
  Rational lo = Rational(k) + Rational(bits, pow2(done));
  Rational hi = lo + Rational(BigInt(1), pow2(done));
  return {lo, hi};
}

namespace {

Rational rpow(const Rational& x, unsigned e) {
  return Rational(boost::multiprecision::pow(numerator(x), e), boost::multiprecision::pow(denominator(x), e));
}

}  // namespace

int compare_log_power(const BigInt& L, const BigInt& c, const BigInt& n, unsigned a, unsigned b) {
  const Rational base = Rational(c * boost::multiprecision::pow(n, a));
  for (unsigned precision : {16u, 64u, 256u}) {
    const auto br = log2_bracket(n, precision);
    const Rational lo = base * rpow(br.lo, b);
    const Rational hi = base * rpow(br.hi, b);
    const Rational l(L);
    if (l < lo) return -1;
    if (l > hi) return 1;
    if (br.lo == br.hi) return 0;
  }
  throw InvariantViolation("log-power comparison is too close to decide");
}

}  // namespace nilalg
