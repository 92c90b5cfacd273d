#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lrm/scalar.hpp"

namespace lrm {

/// Truncation order of a series; std::nullopt means the series is exact.
using Truncation = std::optional<Rational>;

struct SeriesOrder {
  enum class Kind {
    Finite,  // q is the order
    Above,   // no term below the truncation q
    Zero,    // exact zero series
  };
  Kind kind;
  Rational q;

  bool finite() const { return kind == Kind::Finite; }
  friend bool operator==(const SeriesOrder&, const SeriesOrder&) = default;
};

/// Truncated Puiseux series in one parameter t. Terms with exponent >= the
/// truncation are unknown and never stored; zero coefficients are never
/// stored. The ramification index is the lcm of all exponent and truncation
/// denominators, so it is always normalized.
class PuiseuxSeries {
 public:
  using Terms = std::map<Rational, Scalar>;

  explicit PuiseuxSeries(FieldSpec field, Truncation trunc = std::nullopt);
  PuiseuxSeries(FieldSpec field, const Terms& terms, Truncation trunc);

  static PuiseuxSeries term(const Scalar& c, const Rational& exponent, Truncation trunc = std::nullopt);
  static PuiseuxSeries constant(const Scalar& c, Truncation trunc = std::nullopt);

  FieldSpec field() const noexcept { return field_; }
  const Terms& terms() const noexcept { return terms_; }
  const Truncation& truncation() const noexcept { return trunc_; }
  bool is_exact() const noexcept { return !trunc_.has_value(); }

  Integer ramification() const;
  SeriesOrder order() const;
  /// Coefficient of the lowest term; requires a finite order.
  Scalar leading_coefficient() const;
  Scalar coefficient(const Rational& exponent) const;

  /// Lowers the truncation to `t` (no-op if already lower).
  PuiseuxSeries truncated(const Rational& t) const;

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  PuiseuxSeries scaled(const Scalar& c) const;
  PuiseuxSeries pow(std::uint64_t k) const;

  /// Multiplicative inverse. Needs a finite order. If the series is exact
  /// with more than one term the expansion is infinite, so `cap` bounds its
  /// relative precision (exponents below order + cap are kept).
  PuiseuxSeries inverse(Truncation cap = std::nullopt) const;

  /// `t^(3/2)*1 + t^2*-1 | trunc 5 | N 2` (truncation and N only when
  /// relevant); the zero series prints as `0`.
  std::string str() const;

  friend bool operator==(const PuiseuxSeries&, const PuiseuxSeries&) = default;

 private:
  void normalize();

  FieldSpec field_;
  Terms terms_;
  Truncation trunc_;
};

Truncation min_truncation(const Truncation& a, const Truncation& b);

/// Parses the series literal grammar. `default_trunc` applies when the
/// literal carries neither `| trunc T` nor `| exact`.
PuiseuxSeries parse_series(std::string_view text, FieldSpec field, Truncation default_trunc = std::nullopt);

}  // namespace lrm
