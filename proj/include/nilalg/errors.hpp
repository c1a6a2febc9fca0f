#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilalg {

/// An operation would exceed the dense-engine degree budget, the memory
/// budget or the polynomial term limit. Never silently truncated.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-side contract was broken (e.g. inner not contained in outer).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal construction invariant failed. Signals a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct Limits {
  std::size_t max_dense_degree = 16;
  std::size_t max_bytes = std::size_t{2048} << 20;
  std::size_t max_terms = std::size_t{1} << 22;
};

const Limits& limits();
void set_limits(const Limits& l);

void require_dense_degree(std::size_t degree, const char* what);
void require_bytes(std::size_t bytes, const char* what);

}  // namespace nilalg
