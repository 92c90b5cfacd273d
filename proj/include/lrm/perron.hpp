#pragma once

#include <functional>
#include <vector>

#include "lrm/oracle.hpp"
#include "lrm/poly.hpp"
#include "lrm/transform.hpp"
#include "lrm/value.hpp"

namespace lrm {

inline constexpr int kDefaultPerronSteps = 10000;

/// A6 transform on x_1..x_n (n = weights.size()) after which the image of
/// x^m1 divides the image of x^m2. Requires <m1, w> < <m2, w>.
PerronTransform build_a6_divide(const Exponents& m1, const Exponents& m2, const std::vector<Value>& weights,
                                FieldSpec field, int m, int max_steps = kDefaultPerronSteps);

/// Class of num/den in the residue field, for monomials of equal value.
using ResidueFn = std::function<Scalar(const Exponents& num, const Exponents& den)>;

/// A1 transform for weights w of x_1..x_n and the value gamma of x_m.
/// Subtractive steps run until one coordinate value vanishes; that column
/// becomes the unit (x_m(1) + c) with c read off the inverse map.
PerronTransform build_a1(const std::vector<Value>& w, const Value& gamma, const ResidueFn& residue, FieldSpec field,
                         int m, int max_steps = kDefaultPerronSteps);

/// New values v with old_i = sum_j a_ij v_j. For A1 `old` lists x_1..x_n
/// then x_m, and the unit column must come out as 0.
std::vector<Value> transformed_weights(const PerronTransform& tau, const std::vector<Value>& old);

/// Cramer identity d_i - e_i = (-1)^{n+1+i} gamma Det(minor_{i,n+1}) with
/// gamma = lambda(d) - lambda(e), for exponent vectors over x_1..x_n, x_m
/// whose images differ only in the unit column. Throws VALUE-MISMATCH when
/// the two monomials do not have equal value under tau.
bool verify_cramer(const PerronTransform& tau, const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& e);

struct Monomialization {
  std::vector<PerronTransform> transforms;
  Exponents exponents;
  Polynomial unit;
  std::vector<Value> weights;  // weights after the transforms
};

/// Repeated build_a6_divide until g becomes monomial * unit.
Monomialization monomialize(const Polynomial& g, const MonomialValuation& w, int max_steps = kDefaultPerronSteps);

}  // namespace lrm
