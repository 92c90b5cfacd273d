#include "lrm/perron.hpp"

#include <algorithm>

#include "lrm/error.hpp"

namespace lrm {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::StepBoundExceeded, "Perron matrix entry overflows 64 bits");
  return r;
}

// Column i += column j.
void add_column(IntMatrix& a, int i, int j) {
  for (auto& row : a) row[i] = add_checked(row[i], row[j]);
}

Value pairing(const std::vector<std::int64_t>& e, const std::vector<Value>& w) {
  Value v = Value(0) - Value(0);
  for (std::size_t i = 0; i < e.size(); ++i) v += w[i].scaled(Rational(static_cast<long>(e[i])));
  return v;
}

}  // namespace

PerronTransform build_a6_divide(const Exponents& m1, const Exponents& m2, const std::vector<Value>& weights,
                                FieldSpec field, int m, int max_steps) {
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > m) throw Error(Errc::Precondition, "weights must cover x_1..x_n with n <= m");
  if (m1.size() != m2.size() || static_cast<int>(m1.size()) < n)
    throw Error(Errc::FrameMismatch, "monomials do not match the weight vector");
  for (std::size_t k = n; k < m1.size(); ++k)
    if (m1[k] || m2[k]) throw Error(Errc::Precondition, "monomials must be supported on x_1..x_n");
  for (const auto& w : weights)
    if (w.sign() <= 0) throw Error(Errc::Precondition, "weights must be positive");

  std::vector<std::int64_t> delta(n);
  std::vector<std::int64_t> e1(m1.begin(), m1.begin() + n), e2(m2.begin(), m2.begin() + n);
  for (int k = 0; k < n; ++k) delta[k] = static_cast<std::int64_t>(m2[k]) - static_cast<std::int64_t>(m1[k]);
  if (!(pairing(e1, weights) < pairing(e2, weights)))
    throw Error(Errc::Precondition, "build-A6-divide needs value(M1) < value(M2)");

  PerronTransform t = PerronTransform::identity_a6(field, m, n);
  std::vector<Value> v = weights;
  for (int steps = 0; std::any_of(delta.begin(), delta.end(), [](std::int64_t x) { return x < 0; }); ++steps) {
    if (steps >= max_steps) throw Error(Errc::StepBoundExceeded, "Perron step bound " + std::to_string(max_steps) + " reached");
    int lo = 0, hi = 0;
    for (int k = 1; k < n; ++k) {
      if (v[k] < v[lo]) lo = k;
      if (!(v[k] < v[hi])) hi = k;
    }
    if (lo == hi || v[lo] == v[hi]) throw Error(Errc::Precondition, "weights are not rationally independent");
    add_column(t.matrix, lo, hi);
    v[hi] -= v[lo];
    delta[lo] = add_checked(delta[lo], delta[hi]);
  }
  t.validate();
  return t;
}

PerronTransform build_a1(const std::vector<Value>& w, const Value& gamma, const ResidueFn& residue, FieldSpec field,
                         int m, int max_steps) {
  const int n = static_cast<int>(w.size());
  if (n < 1 || n > m - 1) throw Error(Errc::Precondition, "A1 needs 1 <= n <= m-1");
  std::vector<Value> v = w;
  v.push_back(gamma);
  for (const auto& x : v)
    if (x.sign() <= 0) throw Error(Errc::Precondition, "values must be positive");
  (void)rational_relation(v);  // NO-RELATION / AMBIGUOUS propagate

  const int s = n + 1;
  IntMatrix a = identity_matrix(s);
  int zero = -1;
  for (int steps = 0; zero < 0; ++steps) {
    if (steps >= max_steps) throw Error(Errc::StepBoundExceeded, "Perron step bound " + std::to_string(max_steps) + " reached");
    int i = 0;
    for (int k = 1; k < s; ++k)
      if (v[k] < v[i]) i = k;
    int j = -1;
    for (int k = s - 1; k >= 0 && j < 0; --k)
      if (k != i && v[k] == v[i]) j = k;
    if (j < 0) {
      j = i == 0 ? 1 : 0;
      for (int k = 0; k < s; ++k)
        if (k != i && v[k] > v[j]) j = k;
    }
    add_column(a, i, j);
    v[j] -= v[i];
    if (v[j].is_zero()) zero = j;
  }
  if (zero != n) {
    for (auto& row : a) std::swap(row[zero], row[n]);
    std::swap(v[zero], v[n]);
    // n >= 2 here (for n = 1 the tie rule always zeroes the last column)
    for (auto& row : a) std::swap(row[0], row[1]);
    std::swap(v[0], v[1]);
  }

  PerronTransform t;
  t.kind = PerronTransform::Kind::A1;
  t.m = m;
  t.n = n;
  t.matrix = a;
  const IntMatrix inv = inverse_unimodular(a);
  Exponents num(m, 0), den(m, 0);
  for (int i = 0; i < s; ++i) {
    const std::int64_t b = inv[n][i];
    (b > 0 ? num : den)[t.variable(i)] += static_cast<std::uint32_t>(b > 0 ? b : -b);
  }
  t.c = residue(num, den);
  if (t.c.field() != field) throw Error(Errc::FrameMismatch, "residue callback returned a scalar of another field");
  if (t.c.is_zero()) throw Error(Errc::Internal, "residue of the unit column vanished");
  t.validate();
  return t;
}

std::vector<Value> transformed_weights(const PerronTransform& tau, const std::vector<Value>& old) {
  tau.validate();
  const int s = tau.size();
  if (static_cast<int>(old.size()) != s) throw Error(Errc::FrameMismatch, "one old value per transform row is required");
  const IntMatrix inv = inverse_unimodular(tau.matrix);
  std::vector<Value> out;
  for (int j = 0; j < s; ++j) out.push_back(pairing(inv[j], old));
  if (tau.kind == PerronTransform::Kind::A1 && !out[tau.n].is_zero())
    throw Error(Errc::ValueMismatch, "unit column receives value " + out[tau.n].str() + " instead of 0");
  return out;
}

bool verify_cramer(const PerronTransform& tau, const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& e) {
  if (tau.kind != PerronTransform::Kind::A1) throw Error(Errc::Precondition, "verify-cramer applies to A1 transforms");
  const int s = tau.size(), n = tau.n;
  if (static_cast<int>(d.size()) != s || static_cast<int>(e.size()) != s)
    throw Error(Errc::FrameMismatch, "exponent vectors must cover x_1..x_n, x_m");
  const auto& a = tau.matrix;
  std::vector<Integer> diff(s);
  for (int i = 0; i < s; ++i) diff[i] = Integer(static_cast<long>(d[i])) - static_cast<long>(e[i]);
  // images differ only in the unit column <=> equal value
  for (int j = 0; j < n; ++j) {
    Integer col = 0;
    for (int i = 0; i < s; ++i) col += Integer(static_cast<long>(a[i][j])) * diff[i];
    if (col != 0) throw Error(Errc::ValueMismatch, "monomials do not have equal value under the transform");
  }
  Integer gamma = 0;
  for (int i = 0; i < s; ++i) gamma += Integer(static_cast<long>(a[i][n])) * diff[i];
  for (int i = 0; i < s; ++i) {
    Integer rhs = gamma * static_cast<long>(determinant(minor_matrix(a, i, n)));
    if ((s + i + 1) % 2 == 1) rhs = -rhs;
    if (rhs != diff[i]) return false;
  }
  return true;
}

Monomialization monomialize(const Polynomial& g, const MonomialValuation& w, int max_steps) {
  if (g.is_zero()) throw Error(Errc::Precondition, "cannot monomialize zero");
  const int m = g.nvars();
  if (m != w.ring().m) throw Error(Errc::FrameMismatch, "polynomial and valuation frames differ");
  Monomialization r{{}, {}, g, w.weights()};
  for (int round = 0;; ++round) {
    const MonomialValuation cur(w.ring(), r.weights);
    const Polynomial in = cur.initial_form(r.unit);
    if (in.terms().size() != 1) throw Error(Errc::Precondition, "weights do not separate the monomials of g");
    const Exponents m1 = in.terms().begin()->first;
    const Exponents* m2 = nullptr;
    for (const auto& [e, c] : r.unit.terms())
      if (!divides(m1, e)) {
        m2 = &e;
        break;
      }
    if (!m2) {
      Polynomial unit(g.field(), m);
      for (const auto& [e, c] : r.unit.terms()) {
        Exponents q = e;
        for (int k = 0; k < m; ++k) q[k] -= m1[k];
        unit.add_term(q, c);
      }
      r.exponents = m1;
      r.unit = std::move(unit);
      return r;
    }
    if (round >= max_steps) throw Error(Errc::StepBoundExceeded, "monomialization did not finish within the step bound");
    PerronTransform t = build_a6_divide(m1, *m2, r.weights, g.field(), m, max_steps);
    r.unit = substitute(r.unit, t);
    r.weights = transformed_weights(t, r.weights);
    r.transforms.push_back(std::move(t));
  }
}

}  // namespace lrm
