#include "nilalg/field.hpp"

#include "nilalg/errors.hpp"

namespace nilalg {

namespace {
bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace

Field::Field(std::uint32_t p) : p_(p) {
  if (p >= 256 || !is_prime(p))
    throw PreconditionError("field characteristic must be a prime below 256, got " +
                            std::to_string(p));
}

Scalar Field::inv(Scalar a) const {
  if (a % p_ == 0) throw PreconditionError("inverse of zero");
  // Fermat: a^(p-2)
  Scalar result = 1, base = a % p_;
  for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

}  // namespace nilalg
