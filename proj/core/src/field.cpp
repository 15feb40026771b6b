#include "persilat/field.hpp"

#include <string>

#include "persilat/error.hpp"

namespace persilat {

bool Field::is_prime(std::uint64_t p) noexcept {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw FieldError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
}

Residue Field::inv(Residue a) const {
  if (a % p_ == 0) throw FieldError("zero has no inverse");
  // Extended Euclid on (a, p).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce(t);
}

}  // namespace persilat
