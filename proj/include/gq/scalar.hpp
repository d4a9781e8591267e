#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <type_traits>

#include "gq/error.hpp"
#include "gq/field.hpp"

namespace gq {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

// Exact rational scalar: an int64 numerator/denominator fast path, always reduced
// with positive denominator, escalating to an arbitrary-precision backend the moment
// a reduced value leaves the 64-bit range. Arithmetic never overflows: fast-path
// intermediates live in 128 bits, and anything wider moves to the big representation.
// A thin class (not a boost typedef) so Eigen's scalar machinery sees a type with
// non-template constructors only.
class Rat {
 public:
  Rat() = default;
  Rat(int n) : n_(n) {}
  Rat(long n) : n_(static_cast<long long>(n)) {}
  Rat(long long n) : n_(n) {}
  Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
    *this = from_big(BigRational(num) / BigRational(den));
  }
  explicit Rat(const BigRational& v) { *this = from_big(v); }

  BigInt numerator() const { return big_ ? BigInt(boost::multiprecision::numerator(*big_)) : BigInt(n_); }
  BigInt denominator() const { return big_ ? BigInt(boost::multiprecision::denominator(*big_)) : BigInt(d_); }
  bool is_zero() const { return big_ ? *big_ == 0 : n_ == 0; }
  bool is_small() const { return !big_; }
  long long small_num() const { return n_; }
  long long small_den() const { return d_; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    if (a.big_ || b.big_) return from_big(a.to_big() + b.to_big());
    if (a.n_ == 0) return b;
    if (b.n_ == 0) return a;
    if (a.d_ == 1 && b.d_ == 1) {
      long long sum;
      if (!__builtin_add_overflow(a.n_, b.n_, &sum) && sum != std::numeric_limits<long long>::min())
        return Rat(sum);
    }
    return from_i128(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                     static_cast<__int128>(a.d_) * b.d_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    if (a.big_ || b.big_) return from_big(a.to_big() - b.to_big());
    if (b.n_ == 0) return a;
    if (a.d_ == 1 && b.d_ == 1) {
      long long diff;
      if (!__builtin_sub_overflow(a.n_, b.n_, &diff) && diff != std::numeric_limits<long long>::min())
        return Rat(diff);
    }
    return from_i128(static_cast<__int128>(a.n_) * b.d_ - static_cast<__int128>(b.n_) * a.d_,
                     static_cast<__int128>(a.d_) * b.d_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    if (a.big_ || b.big_) return from_big(a.to_big() * b.to_big());
    if (a.n_ == 0 || b.n_ == 0) return Rat();
    if (a.d_ == 1 && b.d_ == 1) {
      long long prod;
      if (!__builtin_mul_overflow(a.n_, b.n_, &prod) && prod != std::numeric_limits<long long>::min())
        return Rat(prod);
    }
    return from_i128(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZero, "rational division by zero");
    if (a.big_ || b.big_) return from_big(a.to_big() / b.to_big());
    return from_i128(static_cast<__int128>(a.n_) * b.d_, static_cast<__int128>(a.d_) * b.n_);
  }
  Rat operator-() const {
    if (big_) return from_big(BigRational(-*big_));
    Rat r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }
  Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
  Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
  Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    return a.to_big() == b.to_big();
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    if (!a.big_ && !b.big_)
      return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
    return a.to_big() < b.to_big();
  }

  // "a" when the denominator is 1, otherwise "a/b".
  std::string str() const {
    if (big_) return big_->str();
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
  }

 private:
  static __int128 igcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static BigInt big_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<std::uint64_t>(u >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-out) : out;
  }

  static Rat from_i128(__int128 num, __int128 den) {
    if (num == 0) return Rat();
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (den != 1) {
      __int128 g = igcd(num, den);
      if (g > 1) {
        num /= g;
        den /= g;
      }
    }
    constexpr __int128 lo = -static_cast<__int128>(std::numeric_limits<long long>::max());
    constexpr __int128 hi = static_cast<__int128>(std::numeric_limits<long long>::max());
    Rat r;
    if (num >= lo && num <= hi && den <= hi) {
      r.n_ = static_cast<long long>(num);
      r.d_ = static_cast<long long>(den);
      return r;
    }
    r.big_ = std::make_shared<const BigRational>(BigRational(big_from_i128(num)) /
                                                 BigRational(big_from_i128(den)));
    return r;
  }

  static Rat from_big(const BigRational& v) {
    BigInt num = boost::multiprecision::numerator(v);
    BigInt den = boost::multiprecision::denominator(v);
    constexpr long long hi = std::numeric_limits<long long>::max();
    Rat r;
    if (num >= -BigInt(hi) && num <= BigInt(hi) && den <= BigInt(hi)) {
      r.n_ = static_cast<long long>(num);
      r.d_ = static_cast<long long>(den);
      return r;
    }
    r.big_ = std::make_shared<const BigRational>(v);
    return r;
  }

  BigRational to_big() const { return big_ ? *big_ : BigRational(n_) / d_; }

  long long n_ = 0;
  long long d_ = 1;
  std::shared_ptr<const BigRational> big_;
};

// Element of F_p. The modulus travels with the value; 0 means "integer not yet
// attached to a field", the state Eigen's Scalar(0)/Scalar(1) literals start in.
// Any arithmetic contact with an attached value reduces into that field.
class Fp {
 public:
  Fp() = default;
  Fp(int n) : v_(n) {}
  Fp(long n) : v_(static_cast<long long>(n)) {}
  Fp(long long n) : v_(n) {}
  Fp(long long n, std::int64_t p) : v_(n), p_(p) { reduce(); }

  std::int64_t modulus() const { return p_; }
  std::int64_t residue() const { return v_; }
  bool attached() const { return p_ != 0; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) { return Fp(a.v_ + b.v_, join(a, b)); }
  friend Fp operator-(const Fp& a, const Fp& b) { return Fp(a.v_ - b.v_, join(a, b)); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::int64_t p = join(a, b);
    if (p == 0) return Fp(a.v_ * b.v_, 0);
    __int128 prod = static_cast<__int128>(a.v_) * b.v_;
    return Fp(static_cast<std::int64_t>(prod % p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * field_inverse(b); }
  Fp operator-() const { return Fp(-v_, p_); }
  Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
  Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
  Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }
  Fp& operator/=(const Fp& o) { *this = *this / o; return *this; }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::int64_t p = join(a, b);
    if (p == 0) return a.v_ == b.v_;
    return Fp(a.v_, p).v_ == Fp(b.v_, p).v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend Fp field_inverse(const Fp& s) {
    if (s.p_ == 0) {
      if (s.v_ == 1 || s.v_ == -1) return s;
      if (s.v_ == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
      fail(ErrorCode::DivisionByZero, "inverse of unattached F_p value " + std::to_string(s.v_));
    }
    if (s.v_ == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_" + std::to_string(s.p_));
    // extended Euclid
    std::int64_t a = s.v_, m = s.p_, x0 = 0, x1 = 1;
    while (a > 1) {
      std::int64_t q = a / m;
      std::int64_t t = m; m = a % m; a = t;
      t = x0; x0 = x1 - q * x0; x1 = t;
    }
    return Fp(x1, s.p_);
  }

  std::string str() const { return std::to_string(v_); }

 private:
  void reduce() {
    if (p_) {
      v_ %= p_;
      if (v_ < 0) v_ += p_;
    }
  }

  static std::int64_t join(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_)
      fail(ErrorCode::FieldMismatch, "F_" + std::to_string(a.p_) + " vs F_" + std::to_string(b.p_));
    return a.p_ ? a.p_ : b.p_;
  }

  std::int64_t v_ = 0;
  std::int64_t p_ = 0;
};

inline Rat field_inverse(const Rat& s) {
  if (s.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero rational");
  return Rat(1) / s;
}

// Cheap structural hashes used by the Kan-extension memo table; collisions are
// resolved by full equality, so taking residues is enough.
inline std::uint64_t scalar_hash(const Rat& s) {
  const std::int64_t p = 1000003;
  std::int64_t num, den;
  if (s.is_small()) {
    num = s.small_num() % p;
    den = s.small_den() % p;
  } else {
    num = static_cast<std::int64_t>(s.numerator() % p);
    den = static_cast<std::int64_t>(s.denominator() % p);
  }
  return static_cast<std::uint64_t>(num + p) * 2654435761u + static_cast<std::uint64_t>(den);
}

inline std::uint64_t scalar_hash(const Fp& s) {
  return static_cast<std::uint64_t>(s.residue()) * 2654435761u + static_cast<std::uint64_t>(s.modulus());
}

// Multiplicative inverse in the scalar's field; DivisionByZero on 0.
template <class K>
K scalar_inverse(const K& s) {
  return field_inverse(s);
}

template <class K>
K make_scalar(const Field& field, long long n) {
  if constexpr (std::is_same_v<K, Fp>) {
    return Fp(n, field.modulus());
  } else {
    (void)field;
    return Rat(n);
  }
}

template <class K>
K make_fraction(const Field& field, long long num, long long den) {
  return make_scalar<K>(field, num) / make_scalar<K>(field, den);
}

template <class K>
constexpr Field::Kind expected_field_kind() {
  return std::is_same_v<K, Fp> ? Field::Kind::PrimeField : Field::Kind::Rationals;
}

template <class K>
void check_field_kind(const Field& field) {
  if (field.kind() != expected_field_kind<K>()) fail(ErrorCode::FieldMismatch, "scalar type does not match field " + field.str());
}

}  // namespace gq

namespace Eigen {

template <>
struct NumTraits<gq::Rat> {
  using Real = gq::Rat;
  using NonInteger = gq::Rat;
  using Literal = gq::Rat;
  using Nested = gq::Rat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 30,
  };
  static inline gq::Rat epsilon() { return gq::Rat(0); }
  static inline gq::Rat dummy_precision() { return gq::Rat(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<gq::Fp> {
  using Real = gq::Fp;
  using NonInteger = gq::Fp;
  using Literal = gq::Fp;
  using Nested = gq::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 6,
    MulCost = 8,
  };
  static inline gq::Fp epsilon() { return gq::Fp(0); }
  static inline gq::Fp dummy_precision() { return gq::Fp(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
