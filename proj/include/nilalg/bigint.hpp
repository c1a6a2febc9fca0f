#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace nilalg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^e as an exact integer.
inline BigInt pow2(std::size_t e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

/// Index of the most significant set bit, i.e. floor(log2 v) for v >= 1.
inline std::size_t floor_log2(const BigInt& v) {
  return static_cast<std::size_t>(boost::multiprecision::msb(v));
}

}  // namespace nilalg
