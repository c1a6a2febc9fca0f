#pragma once

#include <cstdint>

namespace nilalg {

using Scalar = std::uint32_t;

/// Arithmetic in GF(p) for a small prime p (2 <= p < 256).
class Field {
 public:
  explicit Field(std::uint32_t p = 2);

  std::uint32_t prime() const noexcept { return p_; }

  Scalar reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const noexcept { return (a + b) % p_; }
  Scalar sub(Scalar a, Scalar b) const noexcept { return (a + p_ - b) % p_; }
  Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const noexcept { return (a * b) % p_; }
  Scalar inv(Scalar a) const;

 private:
  std::uint32_t p_;
};

}  // namespace nilalg
