#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrm/scalar.hpp"
#include "lrm/series.hpp"
#include "lrm/transform.hpp"

namespace lrm {

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order, larger first, with x_1 > x_2 > ... > x_m.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial in x_1..x_m over a FieldSpec. The last variable x_m is
/// the distinguished one of the reduction algorithm.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Scalar, GradedLex>;

  Polynomial() : Polynomial(FieldSpec{}, 1) {}
  Polynomial(FieldSpec field, int m);

  static Polynomial constant(FieldSpec field, int m, const Scalar& c);
  static Polynomial variable(FieldSpec field, int m, int index);
  static Polynomial monomial(FieldSpec field, const Exponents& e, const Scalar& c);

  FieldSpec field() const noexcept { return field_; }
  int nvars() const noexcept { return m_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coefficient(const Exponents& e) const;
  Scalar constant_term() const;
  std::uint32_t degree_in(int var) const;

  /// Adds c * x^e.
  void add_term(const Exponents& e, const Scalar& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Scalar& c) const;
  Polynomial pow(std::uint32_t k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.m_ == b.m_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  /// Canonical text, e.g. "-x1^3 + x2^2", "1/2*x1*x2^3", "0".
  std::string str() const;

 private:
  void check_compatible(const Polynomial& o) const;

  FieldSpec field_;
  int m_;
  Terms terms_;
};

struct Ring {
  int m = 0;
  FieldSpec field;
};

/// Parses "ring m=<m> char=<p>".
Ring parse_ring_header(std::string_view line);
Polynomial parse_polynomial(std::string_view text, const Ring& ring);
/// Parses a single monomial such as "x1^2*x3" (coefficient must be 1).
Exponents parse_monomial(std::string_view text, int m);
std::string monomial_str(const Exponents& e);

/// Smallest i with x_m^i present in f(0, ..., 0, x_m); nullopt when
/// f(0, ..., 0, x_m) = 0.
std::optional<std::uint32_t> ord_last(const Polynomial& f);

struct CoefficientExpansion {
  std::uint32_t e = 0;
  std::vector<Polynomial> a;  // a[i] in x_1..x_{m-1}, size e + 1
  bool monic = false;

  Polynomial reconstruct() const;
};

CoefficientExpansion expand_last(const Polynomial& f);

/// f(images[0], ..., images[m-1]); all images must share a ring.
Polynomial compose(const Polynomial& f, std::span<const Polynomial> images);

/// f with x_m replaced by x_m + h.
Polynomial translate_last(const Polynomial& f, const Polynomial& h);

Polynomial substitute(const Polynomial& f, const PerronTransform& tau);

struct StrictTransform {
  Exponents monomial;       // c_1..c_m
  std::uint32_t lambda = 0; // power of (x_m + c) removed
  Polynomial f1;
};

/// g = x^monomial * (x_m + c)^lambda * f1 with every exponent maximal.
/// Only the first `exceptional` variables are divided out (all of them when
/// negative); the (x_m + c) factor is only extracted when c != 0.
StrictTransform strict_transform(const Polynomial& g, const Scalar& c, int exceptional = -1);

struct Division {
  Polynomial quotient;
  Polynomial remainder;
};

/// Division by a polynomial monic in x_m, with respect to x_m.
Division divide_monic_last(const Polynomial& g, const Polynomial& f);

/// Exact division by x_m + c; nullopt if it does not divide.
std::optional<Polynomial> divide_linear_last(const Polynomial& g, const Scalar& c);

Polynomial derivative(const Polynomial& f, int var);

bool divides(const Exponents& a, const Exponents& b);

PuiseuxSeries evaluate_at_arc(const Polynomial& f, std::span<const PuiseuxSeries> arc);

}  // namespace lrm
