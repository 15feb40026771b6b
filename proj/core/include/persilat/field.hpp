#pragma once

#include <cstdint>

namespace persilat {

using Residue = std::uint32_t;

// The prime field GF(p). Every matrix in a diagram lives over one Field.
class Field {
 public:
  // Throws FieldError unless p is a prime below 2^31.
  explicit Field(std::uint64_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  Residue reduce(std::int64_t value) const noexcept {
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(std::uint64_t{a} * b % p_);
  }
  // a must be nonzero.
  Residue inv(Residue a) const;

  friend bool operator==(const Field&, const Field&) = default;

  static bool is_prime(std::uint64_t p) noexcept;

 private:
  std::uint32_t p_;
};

}  // namespace persilat
