#include "lrm/transform.hpp"

#include <string>

#include "lrm/error.hpp"

namespace lrm {

namespace {

Integer det_exact(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(a[i][j]);
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::int64_t narrow(const Integer& v) {
  if (!v.fits_slong_p()) throw Error(Errc::StepBoundExceeded, "matrix entry overflows 64 bits");
  return v.get_si();
}

}  // namespace

std::int64_t determinant(const IntMatrix& a) { return narrow(det_exact(a)); }

IntMatrix identity_matrix(int size) {
  IntMatrix id(size, std::vector<std::int64_t>(size, 0));
  for (int i = 0; i < size; ++i) id[i][i] = 1;
  return id;
}

IntMatrix minor_matrix(const IntMatrix& a, int r, int c) {
  IntMatrix out;
  for (int i = 0; i < static_cast<int>(a.size()); ++i) {
    if (i == r) continue;
    std::vector<std::int64_t> row;
    for (int j = 0; j < static_cast<int>(a[i].size()); ++j)
      if (j != c) row.push_back(a[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  Integer d = det_exact(a);
  if (d != 1 && d != -1) throw Error(Errc::Precondition, "matrix is not unimodular (det " + d.get_str() + ")");
  IntMatrix inv(n, std::vector<std::int64_t>(n, 0));
  if (n == 1) {
    inv[0][0] = narrow(d);
    return inv;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Integer cof = det_exact(minor_matrix(a, j, i));
      if ((i + j) % 2 == 1) cof = -cof;
      inv[i][j] = narrow(cof * d);
    }
  return inv;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, std::vector<std::int64_t>(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      Integer s = 0;
      for (std::size_t l = 0; l < k; ++l) s += Integer(static_cast<long>(a[i][l])) * static_cast<long>(b[l][j]);
      out[i][j] = narrow(s);
    }
  return out;
}

PerronTransform PerronTransform::identity_a6(FieldSpec field, int m, int n) {
  PerronTransform t;
  t.kind = Kind::A6;
  t.m = m;
  t.n = n;
  t.matrix = identity_matrix(n);
  t.c = Scalar(field);
  return t;
}

void PerronTransform::validate() const {
  const int s = size();
  if (n < 0 || (kind == Kind::A1 && (n < 1 || n > m - 1)) || (kind == Kind::A6 && n > m))
    throw Error(Errc::Precondition, "transform size n=" + std::to_string(n) + " does not fit frame m=" + std::to_string(m));
  if (static_cast<int>(matrix.size()) != s)
    throw Error(Errc::Precondition, "transform matrix has wrong number of rows");
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != s) throw Error(Errc::Precondition, "transform matrix is not square");
    for (std::int64_t v : row)
      if (v < 0) throw Error(Errc::Precondition, "transform matrix has a negative entry");
  }
  if (s > 0 && det_exact(matrix) != 1) throw Error(Errc::Precondition, "transform matrix does not have determinant 1");
  if (kind == Kind::A1 && c.is_zero()) throw Error(Errc::Precondition, "A1 transform needs a nonzero constant c");
}

}  // namespace lrm
