#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrm/scalar.hpp"

namespace lrm {

/// Real generators of the ambient Q-space of values: {1} or {1, sqrt(d)}.
class GeneratorContext {
 public:
  enum class Kind { Rational, Quadratic };

  GeneratorContext() = default;
  static GeneratorContext rational() { return {}; }
  /// d must be a positive non-square integer.
  static GeneratorContext quadratic(const Integer& d);

  Kind kind() const noexcept { return kind_; }
  const Integer& d() const noexcept { return d_; }
  int dimension() const noexcept { return kind_ == Kind::Rational ? 1 : 2; }
  std::string str() const;

  friend bool operator==(const GeneratorContext&, const GeneratorContext&) = default;

 private:
  Kind kind_ = Kind::Rational;
  Integer d_{0};
};

/// Joins two contexts: rational embeds into any quadratic one; two distinct
/// quadratic contexts raise CONTEXT-MISMATCH.
GeneratorContext join(const GeneratorContext& a, const GeneratorContext& b);

enum class Cmp { LT, EQ, GT };

/// a + b*sqrt(d), an element of (value group) (x) Q embedded in R.
class Value {
 public:
  Value() = default;
  Value(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Value(long a) : a_(a) {}             // NOLINT(google-explicit-constructor)
  Value(const GeneratorContext& ctx, const Rational& a, const Rational& b);

  const GeneratorContext& context() const noexcept { return ctx_; }
  const Rational& rational_part() const noexcept { return a_; }
  const Rational& sqrt_part() const noexcept { return b_; }
  /// Coordinates over the generators of `ctx` (which must contain ours).
  std::vector<Rational> coordinates(const GeneratorContext& ctx) const;
  Value in_context(const GeneratorContext& ctx) const;

  int sign() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  /// True when the value is a rational number (no sqrt part).
  bool is_rational() const { return b_ == 0; }

  Value operator-() const;
  Value& operator+=(const Value& o);
  Value& operator-=(const Value& o);
  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  Value scaled(const Rational& q) const;
  friend Value operator*(const Rational& q, const Value& v) { return v.scaled(q); }

  /// "3/2", "sqrt(2)", "1 - 2*sqrt(3)".
  std::string str() const;

 private:
  GeneratorContext ctx_;
  Rational a_{0};
  Rational b_{0};
};

/// Exact sign of v - w in R.
Cmp cmp(const Value& v, const Value& w);
bool operator==(const Value& v, const Value& w);
bool operator<(const Value& v, const Value& w);
inline bool operator>(const Value& v, const Value& w) { return w < v; }
inline bool operator<=(const Value& v, const Value& w) { return !(w < v); }
inline bool operator>=(const Value& v, const Value& w) { return !(v < w); }
std::ostream& operator<<(std::ostream& os, const Value& v);

/// Parses `a`, `a + b*sqrt(d)`, `sqrt(d)`, `b*sqrt(d)`.
Value parse_value(std::string_view text);

/// Subgroup of values generated by a nonempty finite list.
struct ValueLattice {
  std::vector<Value> generators;
};

/// Integer coordinates c with sum c_i * generators_i = v, or nullopt.
std::optional<std::vector<Integer>> member(const Value& v, const ValueLattice& lattice);

/// Group index [big : small]; nullopt when the ranks differ (infinite index).
/// Throws NOT-A-SUBGROUP unless every generator of small lies in big.
std::optional<Integer> lattice_index(const ValueLattice& big, const ValueLattice& small);

/// Rank of the lattice (dimension of its Q-span).
int lattice_rank(const ValueLattice& lattice);

/// Primitive (q_1, ..., q_n, -q), q > 0, with q * last = sum q_i * values_i.
std::vector<Integer> rational_relation(const std::vector<Value>& values);

}  // namespace lrm
