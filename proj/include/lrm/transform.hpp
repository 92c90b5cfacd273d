#pragma once

#include <cstdint>
#include <vector>

#include "lrm/scalar.hpp"

namespace lrm {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Monomial Cremona substitution with a nonnegative determinant-1 matrix.
///
/// Rows index the old variables being replaced, columns the new ones. For
/// kind A6 both run over x_1..x_n and
///     x_i = prod_j x_j(1)^{a_ij}.
/// For kind A1 rows and columns run over x_1..x_n, x_m, the last column
/// standing for the unit (x_m(1) + c):
///     x_i = prod_{j<=n} x_j(1)^{a_ij} * (x_m(1) + c)^{a_{i,n+1}}.
/// Variables outside the acted set are unchanged.
struct PerronTransform {
  enum class Kind { A6, A1 };

  Kind kind = Kind::A6;
  int m = 0;
  int n = 0;
  IntMatrix matrix;
  Scalar c;  // A1 only, nonzero

  int size() const { return kind == Kind::A6 ? n : n + 1; }
  /// Frame index of the variable behind row/column `k`.
  int variable(int k) const { return (kind == Kind::A1 && k == n) ? m - 1 : k; }

  static PerronTransform identity_a6(FieldSpec field, int m, int n);

  /// Throws Errc::Precondition unless det = 1, all entries >= 0, the shape
  /// matches (m, n), and c != 0 for A1.
  void validate() const;
};

std::int64_t determinant(const IntMatrix& a);
/// Integer inverse of a determinant +-1 matrix.
IntMatrix inverse_unimodular(const IntMatrix& a);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix identity_matrix(int size);
/// Minor: delete row r and column c.
IntMatrix minor_matrix(const IntMatrix& a, int r, int c);

}  // namespace lrm
