#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace quivermod {

/// Exact scalar. Over a prime field the value is kept as an integer in [0, p).
using Scalar = mpq_class;

/// The ground field: the rationals or a prime field F_p with p < 2^31.
///
/// All arithmetic on Scalars goes through a Field so that prime-field values
/// stay reduced. Rational arithmetic is plain mpq arithmetic.
class Field {
 public:
  static Field rationals() { return Field(0); }
  /// Throws ValidationError unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return p_ == 0; }
  bool is_prime() const noexcept { return p_ != 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const noexcept { return p_; }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  /// Throws std::domain_error on zero.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, long long exponent) const;

  /// Maps an arbitrary rational into this field. Throws ValidationError when
  /// the denominator is divisible by p.
  Scalar from_rational(const Scalar& q) const;
  Scalar from_integer(long long v) const { return from_rational(Scalar(static_cast<long>(v))); }
  /// True when the value is a canonical element of this field.
  bool contains(const Scalar& a) const;

  static bool is_zero(const Scalar& a) { return sgn(a) == 0; }

  /// "Q" or "F_p".
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

bool is_prime_number(std::uint64_t n);

/// Parses "7", "-3/4" or " 5 " into a canonical rational. Throws ValidationError.
Scalar parse_rational(std::string_view text);
/// Canonical "num/den" text, or "num" when the denominator is 1.
std::string format_scalar(const Scalar& a);

}  // namespace quivermod
