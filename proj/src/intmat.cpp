#include "lrm/intmat.hpp"

#include <utility>

namespace lrm {

namespace {

// g = s*a + t*b
void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Replace columns (p, q) by (s*p + t*q, -b/g*p + a/g*q).
void combine_columns(ZMatrix& m, int p, int q, const Integer& s, const Integer& t, const Integer& x, const Integer& y) {
  for (auto& row : m) {
    Integer cp = row[p], cq = row[q];
    row[p] = s * cp + t * cq;
    row[q] = x * cp + y * cq;
  }
}

}  // namespace

ColumnHermite column_hermite(const ZMatrix& m, int rows, int cols) {
  ColumnHermite r;
  r.h = m;
  r.u.assign(cols, std::vector<Integer>(cols, 0));
  for (int i = 0; i < cols; ++i) r.u[i][i] = 1;
  int pc = 0;
  for (int i = 0; i < rows && pc < cols; ++i) {
    for (int j = pc + 1; j < cols; ++j) {
      Integer a = r.h[i][pc], b = r.h[i][j];
      if (b == 0) continue;
      Integer g, s, t;
      ext_gcd(a, b, g, s, t);
      Integer x = -b / g, y = a / g;
      combine_columns(r.h, pc, j, s, t, x, y);
      combine_columns(r.u, pc, j, s, t, x, y);
    }
    if (r.h[i][pc] == 0) continue;
    if (r.h[i][pc] < 0) {
      for (auto& row : r.h) row[pc] = -row[pc];
      for (auto& row : r.u) row[pc] = -row[pc];
    }
    // reduce earlier pivot columns modulo this pivot
    for (int j = 0; j < pc; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), r.h[i][j].get_mpz_t(), r.h[i][pc].get_mpz_t());
      if (q == 0) continue;
      for (auto& row : r.h) row[j] -= q * row[pc];
      for (auto& row : r.u) row[j] -= q * row[pc];
    }
    r.pivot_rows.push_back(i);
    ++pc;
  }
  r.rank = pc;
  return r;
}

std::optional<std::vector<Integer>> solve_integer(const ZMatrix& m, int rows, int cols, const std::vector<Integer>& v) {
  ColumnHermite ch = column_hermite(m, rows, cols);
  std::vector<Integer> y(cols, 0);
  for (int j = 0; j < ch.rank; ++j) {
    const int row = ch.pivot_rows[j];
    Integer rest = v[row];
    for (int l = 0; l < j; ++l) rest -= ch.h[row][l] * y[l];
    if (!mpz_divisible_p(rest.get_mpz_t(), ch.h[row][j].get_mpz_t())) return std::nullopt;
    y[j] = rest / ch.h[row][j];
  }
  for (int i = 0; i < rows; ++i) {
    Integer s = 0;
    for (int j = 0; j < ch.rank; ++j) s += ch.h[i][j] * y[j];
    if (s != v[i]) return std::nullopt;
  }
  std::vector<Integer> c(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < ch.rank; ++j) c[i] += ch.u[i][j] * y[j];

  // Canonical representative: reduce modulo the echelonized kernel lattice.
  const int kdim = cols - ch.rank;
  if (kdim == 0) return c;
  ZMatrix kernel(cols, std::vector<Integer>(kdim));
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < kdim; ++j) kernel[i][j] = ch.u[i][ch.rank + j];
  ColumnHermite kh = column_hermite(kernel, cols, kdim);
  for (int j = 0; j < kh.rank; ++j) {
    const int row = kh.pivot_rows[j];
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), c[row].get_mpz_t(), kh.h[row][j].get_mpz_t());
    for (int i = 0; i < cols; ++i) c[i] -= q * kh.h[i][j];
  }
  return c;
}

std::vector<Integer> smith_invariants(ZMatrix a, int rows, int cols) {
  std::vector<Integer> diag;
  for (int t = 0; t < rows && t < cols; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block
      int pr = -1, pcol = -1;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr < 0 || abs(a[i][j]) < abs(a[pr][pcol]))) {
            pr = i;
            pcol = j;
          }
      if (pr < 0) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pcol]);
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: pivot must divide the rest of the block
      bool divides_all = true;
      for (int i = t + 1; i < rows && divides_all; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            for (int k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

}  // namespace lrm
