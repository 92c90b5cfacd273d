#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lrm {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a" or "a/b" (optional sign, surrounding blanks allowed) into a
/// canonical rational. Throws Errc::Parse on malformed input and
/// Errc::DivisionByZero on a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Ground field: Q when characteristic() == 0, otherwise the prime field F_p.
class FieldSpec {
 public:
  FieldSpec() = default;
  explicit FieldSpec(std::uint64_t characteristic);

  std::uint64_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  std::uint64_t p_ = 0;
};

/// Exact element of a FieldSpec. Over Q the value is a reduced fraction;
/// over F_p it is the representative in [0, p).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(FieldSpec field, long value = 0);
  Scalar(FieldSpec field, const Rational& value);

  FieldSpec field() const noexcept { return field_; }
  const Rational& value() const noexcept { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar inverse() const;
  Scalar pow(std::uint64_t k) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.v_ == b.v_;
  }

  /// Canonical text: "5/6", "-1", or the F_p representative.
  std::string str() const;

 private:
  void check_field(const Scalar& o) const;
  void reduce();

  FieldSpec field_;
  Rational v_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace lrm
