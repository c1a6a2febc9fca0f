#pragma once

#include "nilalg/bigint.hpp"

namespace nilalg {

/// A rational bracket lo ≤ log2 n ≤ hi of width at most 2^-precision (lo = hi when n is a power of two).
struct Log2Bracket {
  Rational lo, hi;
};

Log2Bracket log2_bracket(const BigInt& n, unsigned precision = 64);

/// sign(L − c · n^a · (log2 n)^b), decided exactly; n ≥ 1.
/// Throws InvariantViolation if the bracket cannot separate the two sides.
int compare_log_power(const BigInt& L, const BigInt& c, const BigInt& n, unsigned a, unsigned b);

}  // namespace nilalg
