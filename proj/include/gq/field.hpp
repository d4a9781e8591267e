#pragma once

#include <cstdint>
#include <string>

#include "gq/error.hpp"

namespace gq {

// Ground field descriptor: the rationals or a prime field F_p.
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  Field() : kind_(Kind::Rationals), p_(0) {}

  static Field rationals() { return Field(Kind::Rationals, 0); }

  static Field prime(std::int64_t p) {
    if (!is_prime(p)) fail(ErrorCode::BadArgument, "PrimeField modulus " + std::to_string(p) + " is not prime");
    return Field(Kind::PrimeField, p);
  }

  Kind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == Kind::Rationals; }
  std::int64_t modulus() const { return p_; }

  // 0 for the rationals, p for F_p.
  std::int64_t characteristic() const { return p_; }

  bool divides_characteristic(std::int64_t n) const { return p_ != 0 && n % p_ == 0; }

  std::string str() const { return is_rationals() ? "Q" : "F_" + std::to_string(p_); }

  friend bool operator==(const Field& a, const Field& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

  static bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  Field(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::int64_t p_;
};

}  // namespace gq
