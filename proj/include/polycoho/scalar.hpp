#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace polycoho {

/// The coloring field: either the rationals or a prime field F_q with q odd.
class Field {
 public:
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

  constexpr Field() = default;

  static constexpr Field rationals() { return Field{}; }
  /// Throws Error(InvalidArgument) unless q is an odd prime <= kMaxModulus.
  static Field prime(std::uint64_t q);
  /// Accepts "Q" or "Fq:<q>".
  static Field parse(std::string_view text);

  bool is_rational() const noexcept { return modulus_ == 0; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::string to_string() const;

  friend bool operator==(Field, Field) = default;

 private:
  std::uint64_t modulus_ = 0;
};

bool is_prime(std::uint64_t q) noexcept;

/// Exact field element. Over F_q the value is kept as the canonical residue in [0, q).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(Field field) : field_(field) {}
  Scalar(Field field, long value);
  Scalar(Field field, const mpz_class& value);
  /// Over F_q the denominator must be invertible mod q.
  Scalar(Field field, const mpq_class& value);

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1L); }
  /// Parses "num/den" or "num". Over F_q the result is reduced.
  static Scalar parse(Field field, std::string_view text);

  Field field() const noexcept { return field_; }
  const mpq_class& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// "num/den" over Q, the residue over F_q.
  std::string to_string() const;

  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
  }

 private:
  void check_same_field(const Scalar& o) const;
  void reduce();

  Field field_;
  mpq_class value_;
};

}  // namespace polycoho
