#include "nilalg/errors.hpp"

namespace nilalg {

namespace {
Limits& mutable_limits() {
  static Limits l;
  return l;
}
}  // namespace

const Limits& limits() { return mutable_limits(); }
void set_limits(const Limits& l) { mutable_limits() = l; }

void require_dense_degree(std::size_t degree, const char* what) {
  if (degree > limits().max_dense_degree)
    throw BudgetExceeded(std::string(what) + ": dense degree " + std::to_string(degree) +
                         " exceeds budget " + std::to_string(limits().max_dense_degree));
}

void require_bytes(std::size_t bytes, const char* what) {
  if (bytes > limits().max_bytes)
    throw BudgetExceeded(std::string(what) + ": needs " + std::to_string(bytes >> 20) +
                         " MiB, budget " + std::to_string(limits().max_bytes >> 20) + " MiB");
}

}  // namespace nilalg
