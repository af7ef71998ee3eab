#include "polycoho/scalar.hpp"

#include <charconv>

#include "polycoho/error.hpp"

namespace polycoho {

bool is_prime(std::uint64_t q) noexcept {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::uint64_t d = 3; d * d <= q; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t q) {
  if (q == 2) {
    throw Error(ErrorCode::InvalidArgument,
                "quadratic cohomology needs characteristic != 2");
  }
  if (q > kMaxModulus || !is_prime(q)) {
    throw Error(ErrorCode::InvalidArgument,
                "field modulus " + std::to_string(q) + " is not a supported odd prime");
  }
  Field f;
  f.modulus_ = q;
  return f;
}

Field Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  constexpr std::string_view prefix = "Fq:";
  if (text.substr(0, prefix.size()) == prefix) {
    auto digits = text.substr(prefix.size());
    std::uint64_t q = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
      return prime(q);
    }
  }
  throw Error(ErrorCode::Parse, "bad field '" + std::string(text) +
                                    "' (expected Q or Fq:<prime>)");
}

std::string Field::to_string() const {
  return is_rational() ? std::string("Q") : "Fq:" + std::to_string(modulus_);
}

Scalar::Scalar(Field field, long value) : field_(field), value_(value) { reduce(); }

Scalar::Scalar(Field field, const mpz_class& value) : field_(field), value_(value) {
  reduce();
}

Scalar::Scalar(Field field, const mpq_class& value) : field_(field), value_(value) {
  value_.canonicalize();
  reduce();
}

Scalar Scalar::parse(Field field, std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw Error(ErrorCode::Parse, "bad scalar literal '" + s + "'");
  }
  if (q.get_den() == 0) {
    throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
  }
  q.canonicalize();
  return Scalar(field, q);
}

void Scalar::reduce() {
  if (field_.is_rational()) return;
  const mpz_class q(static_cast<unsigned long>(field_.modulus()));
  mpz_class num = value_.get_num();
  mpz_class den = value_.get_den();
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t()) == 0) {
      throw Error(ErrorCode::DivisionByZero,
                  "denominator not invertible in " + field_.to_string());
    }
    num *= inv;
  }
  mpz_class r;
  mpz_mod(r.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
  value_ = mpq_class(r);
}

std::string Scalar::to_string() const {
  if (!field_.is_rational()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorCode::FieldMismatch,
                "mixed fields " + field_.to_string() + " and " + o.field_.to_string());
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  value_ += o.value_;
  if (!field_.is_rational()) {
    mpz_class& n = value_.get_num();
    if (n >= static_cast<unsigned long>(field_.modulus())) n -= static_cast<unsigned long>(field_.modulus());
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  value_ -= o.value_;
  if (!field_.is_rational()) {
    mpz_class& n = value_.get_num();
    if (n < 0) n += static_cast<unsigned long>(field_.modulus());
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_rational()) {
    value_ *= o.value_;
  } else {
    mpz_class n = value_.get_num() * o.value_.get_num();
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(field_.modulus()));
    value_ = mpq_class(r);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (field_.is_rational()) {
    Scalar r(field_);
    r.value_ = 1 / value_;
    return r;
  }
  const mpz_class q(static_cast<unsigned long>(field_.modulus()));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), value_.get_num_mpz_t(), q.get_mpz_t());
  return Scalar(field_, inv);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  if (field_.is_rational()) {
    value_ /= o.value_;
    return *this;
  }
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
  Scalar r(field_);
  r -= *this;
  return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result = one(field_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

}  // namespace polycoho
