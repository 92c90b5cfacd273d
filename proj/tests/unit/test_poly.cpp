#include <random>
#include <vector>

#include "doctest.h"
#include "lrm/poly.hpp"

using namespace lrm;

namespace {

const Ring Q2{2, FieldSpec{}};
const Ring Q3{3, FieldSpec{}};

Polynomial P(const char* text, const Ring& r = Q2) { return parse_polynomial(text, r); }

PerronTransform a1(const IntMatrix& a, long c, const Ring& r = Q2) {
  PerronTransform t;
  t.kind = PerronTransform::Kind::A1;
  t.m = r.m;
  t.n = r.m - 1;
  t.matrix = a;
  t.c = Scalar(r.field, c);
  t.validate();
  return t;
}

// Random nonnegative det-1 matrix built from elementary column additions.
IntMatrix random_unimodular(std::mt19937_64& rng, int size, int steps) {
  IntMatrix a = identity_matrix(size);
  std::uniform_int_distribution<int> pick(0, size - 1);
  for (int s = 0; s < steps; ++s) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    for (auto& row : a) row[i] += row[j];
  }
  return a;
}

Polynomial random_poly(std::mt19937_64& rng, const Ring& r, int terms, int deg) {
  std::uniform_int_distribution<int> e(0, deg), c(-4, 4);
  Polynomial f(r.field, r.m);
  for (int k = 0; k < terms; ++k) {
    Exponents ex(r.m);
    for (auto& x : ex) x = e(rng);
    f.add_term(ex, Scalar(r.field, c(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("parse and canonical print") {
  CHECK(P("x2^2 - x1^3").str() == "-x1^3 + x2^2");
  CHECK(P("1/2*x1*x2^3").str() == "1/2*x1*x2^3");
  CHECK(P("x2 - x2").str() == "0");
  CHECK(P("3 + x1 - 2*x1*x2").str() == "-2*x1*x2 + x1 + 3");
  const Ring header = parse_ring_header("ring m=3 char=5");
  CHECK(header.m == 3);
  CHECK(header.field.characteristic() == 5);
  CHECK(parse_polynomial("6*x3", header).str() == "x3");
}

TEST_CASE("ord-last") {
  CHECK(ord_last(P("x2^2 - x1^3")) == 2u);
  CHECK(!ord_last(P("x1*x2")).has_value());
  const Ring F3{2, FieldSpec(3)};
  CHECK(ord_last(P("x2^3 - x2 - x1", F3)) == 1u);
}

TEST_CASE("expand-last") {
  auto ex = expand_last(P("x2^2 - x1^3"));
  CHECK(ex.e == 2);
  CHECK(ex.monic);
  CHECK(ex.a[1].is_zero());
  CHECK(ex.a[0] == P("-x1^3"));
  ex = expand_last(P("x2"));
  CHECK(ex.e == 1);
  CHECK(ex.a[0].is_zero());
  const auto tac = P("x2 - x1").pow(2) - P("x1^5");
  ex = expand_last(tac);
  CHECK(ex.a[1] == P("-2*x1"));
  CHECK(ex.a[0] == P("x1^2 - x1^5"));
  CHECK(ex.reconstruct() == tac);
  CHECK(!expand_last(P("2*x2^2 + x1")).monic);
}

TEST_CASE("substitute") {
  PerronTransform a6 = PerronTransform::identity_a6(FieldSpec{}, 3, 2);
  a6.matrix = {{1, 1}, {0, 1}};
  CHECK(substitute(P("x1", Q3), a6) == P("x1*x2", Q3));

  const auto cusp = substitute(P("x2^2 - x1^3"), a1({{2, 1}, {3, 2}}, 1));
  CHECK(cusp == P("x1^6*x2^4 + 3*x1^6*x2^3 + 3*x1^6*x2^2 + x1^6*x2"));
  CHECK(cusp == P("x1^6").pow(1) * P("x2 + 1").pow(3) * P("x2"));

  CHECK(substitute(P("x2^2 - x1^3"), PerronTransform::identity_a6(FieldSpec{}, 2, 1)) == P("x2^2 - x1^3"));
}

TEST_CASE("strict transform") {
  const auto g = P("x1^6").pow(1) * P("x2 + 1").pow(3) * P("x2");
  auto st = strict_transform(g, Scalar(FieldSpec{}, 1), 1);
  CHECK(st.monomial == Exponents{6, 0});
  CHECK(st.lambda == 3);
  CHECK(st.f1 == P("x2"));

  st = strict_transform(P("1 + x1 + x2^2"), Scalar(FieldSpec{}, 0));
  CHECK(st.monomial == Exponents{0, 0});
  CHECK(st.lambda == 0);

  st = strict_transform(g, Scalar(FieldSpec{}, 1));
  CHECK(st.monomial == Exponents{6, 1});
  CHECK(st.f1 == P("1"));

  st = strict_transform(P("x1*x2"), Scalar(FieldSpec{}, 0));
  CHECK(st.monomial == Exponents{1, 1});
  CHECK(st.f1 == P("1"));
}

TEST_CASE("evaluate at arc") {
  const FieldSpec Q{};
  std::vector<PuiseuxSeries> arc{parse_series("t^2", Q, Rational(40)), parse_series("t^3", Q, Rational(40))};
  CHECK(evaluate_at_arc(P("x2^2 - x1^3"), arc).terms().empty());
  CHECK(evaluate_at_arc(P("x2"), arc).order().q == 3);
  std::vector<PuiseuxSeries> arc2{parse_series("t^2", Q), parse_series("t^2 + t^3", Q)};
  CHECK(evaluate_at_arc(P("x2 - x1"), arc2) == parse_series("t^3", Q));
}

TEST_CASE("division helpers") {
  const auto f = P("x2^2 - x1^3");
  const auto g = f * P("x2 + x1") + P("x1");
  const auto d = divide_monic_last(g, f);
  CHECK(d.quotient == P("x2 + x1"));
  CHECK(d.remainder == P("x1"));
  CHECK(divide_linear_last(P("x2^2 - 1"), Scalar(FieldSpec{}, 1)) == P("x2 - 1"));
  CHECK(!divide_linear_last(P("x2^2 + 1"), Scalar(FieldSpec{}, 1)).has_value());
  CHECK(derivative(P("x2^3 + x1*x2"), 1) == P("3*x2^2 + x1"));
  const Ring F3{2, FieldSpec(3)};
  CHECK(derivative(P("x2^3 + x1*x2", F3), 1) == P("x1", F3));
}

TEST_CASE("substitute is a ring homomorphism") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 200; ++it) {
    const Ring& r = (it % 2) ? Q2 : Q3;
    const auto f = random_poly(rng, r, 4, 3), g = random_poly(rng, r, 4, 3);
    PerronTransform t;
    if (it % 3 == 0) {
      t = PerronTransform::identity_a6(r.field, r.m, r.m - 1);
      t.matrix = random_unimodular(rng, r.m - 1, 3);
    } else {
      t = a1(random_unimodular(rng, r.m, 3), 1 + it % 4, r);
    }
    CHECK(substitute(f * g, t) == substitute(f, t) * substitute(g, t));
    CHECK(substitute(f + g, t) == substitute(f, t) + substitute(g, t));
  }
}

TEST_CASE("strict transform and expansion reconstruct") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 100; ++it) {
    const Ring& r = (it % 2) ? Q2 : Q3;
    auto g = random_poly(rng, r, 3, 3) * random_poly(rng, r, 2, 2);
    if (g.is_zero()) continue;
    const Scalar c(r.field, it % 3);
    g = g * translate_last(Polynomial::variable(r.field, r.m, r.m - 1).pow(it % 3), Polynomial::constant(r.field, r.m, c));
    const auto st = strict_transform(g, c);
    auto back = Polynomial::monomial(r.field, st.monomial, Scalar(r.field, 1)) * st.f1;
    Polynomial unit = Polynomial::variable(r.field, r.m, r.m - 1) + Polynomial::constant(r.field, r.m, c);
    back = back * unit.pow(st.lambda);
    CHECK(back == g);
    CHECK(expand_last(g).reconstruct() == g);
  }
}

TEST_CASE("ord-last agrees with the arc (0, ..., 0, t)") {
  std::mt19937_64 rng(5);
  const FieldSpec Q{};
  for (int it = 0; it < 100; ++it) {
    const auto f = random_poly(rng, Q2, 5, 4);
    std::vector<PuiseuxSeries> arc{PuiseuxSeries(Q), parse_series("t", Q)};
    const auto o = ord_last(f);
    const auto s = evaluate_at_arc(f, arc).order();
    if (o) CHECK(s.q == Rational(*o));
    else CHECK(s.kind == SeriesOrder::Kind::Zero);
  }
}
