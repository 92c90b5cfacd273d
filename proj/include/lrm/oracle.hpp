#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrm/poly.hpp"
#include "lrm/series.hpp"
#include "lrm/transform.hpp"
#include "lrm/value.hpp"

namespace lrm {

struct ValueResult {
  enum class Kind { Finite, Infinite, AboveTruncation };

  Kind kind = Kind::Finite;
  Value value;  // the value, or the bound for AboveTruncation

  static ValueResult finite(const Value& v) { return {Kind::Finite, v}; }
  static ValueResult infinite() { return {Kind::Infinite, Value()}; }
  static ValueResult above(const Value& bound) { return {Kind::AboveTruncation, bound}; }

  bool is_finite() const { return kind == Kind::Finite; }
  /// "3", "INFINITE" or "ABOVE-TRUNCATION(40)".
  std::string str() const;
};

/// Common interface of the three oracle kinds.
class ValuationOracle {
 public:
  virtual ~ValuationOracle() = default;

  virtual const Ring& ring() const = 0;
  virtual ValueResult value(const Polynomial& g) const = 0;
  /// Class of g/u in the residue field; throws VALUE-MISMATCH unless both
  /// values are finite and equal (and, for formal oracles, the initial forms
  /// are proportional).
  virtual Scalar residue(const Polynomial& g, const Polynomial& u) const = 0;

 protected:
  void check_frame(const Polynomial& g) const;
};

/// nu(sum c_e x^e) = min over monomials of <e, w>.
class MonomialValuation : public ValuationOracle {
 public:
  MonomialValuation(Ring ring, std::vector<Value> weights);

  const Ring& ring() const override { return ring_; }
  const std::vector<Value>& weights() const { return weights_; }
  GeneratorContext context() const;

  Value monomial_value(const Exponents& e) const;
  ValueResult value(const Polynomial& g) const override;
  Scalar residue(const Polynomial& g, const Polynomial& u) const override;
  /// Terms of g of minimal value.
  Polynomial initial_form(const Polynomial& g) const;

 private:
  Ring ring_;
  std::vector<Value> weights_;
};

struct BestApprox {
  enum class Status { MaxOutside, NoMaxUpToBound, Infinite };

  Polynomial h;  // h' in x_1..x_{m-1}
  ValueResult gamma;
  Status status = Status::NoMaxUpToBound;
  std::vector<Value> ladder;         // nu*(z - h') after each improvement, in order
  std::vector<Polynomial> approximants;  // the h' realizing each ladder value
  bool truncation_hit = false;
  std::string diagnostic;
};

std::string_view status_name(BestApprox::Status s);

/// nu* realized by a (truncated) Puiseux arc on the hypersurface f = 0:
/// nu*(g) = normalization * ord_t g(arc), and infinity on multiples of f.
class ArcValuation : public ValuationOracle {
 public:
  ArcValuation(Ring ring, Polynomial f, std::vector<PuiseuxSeries> arc, Value normalization, Rational trunc);

  const Ring& ring() const override { return ring_; }
  const Polynomial& f() const { return f_; }
  const std::vector<PuiseuxSeries>& arc() const { return arc_; }
  const Value& normalization() const { return normalization_; }
  const Rational& trunc() const { return trunc_; }

  PuiseuxSeries evaluate(const Polynomial& g) const;
  ValueResult value(const Polynomial& g) const override;
  Scalar residue(const Polynomial& g, const Polynomial& u) const override;

  /// f(arc) has no term below its truncation.
  bool consistent() const;

  /// Phi_nu: the group generated by the values of x_1..x_{m-1}.
  ValueLattice base_lattice() const;
  /// Phi_nu* as realized: values of x_1..x_m plus the best-approximation ladder.
  ValueLattice realized_lattice(int bound) const;

  /// Residue-matching improvement of h' for z = x_m.
  BestApprox best_approx(int bound) const;

  /// Oracle for the transformed frame: the arc of each new variable is
  /// recovered through the inverse monomial map; the hypersurface becomes f1.
  ArcValuation transformed(const PerronTransform& tau, const Polynomial& f1) const;
  /// Oracle after x_m' = x_m - h; the hypersurface becomes f1.
  ArcValuation translated(const Polynomial& h, const Polynomial& f1) const;

 private:
  PuiseuxSeries laurent_monomial(const std::vector<std::int64_t>& exps) const;

  Ring ring_;
  Polynomial f_;
  std::vector<PuiseuxSeries> arc_;
  Value normalization_;
  Rational trunc_;
};

/// Finite MacLane chain on k[x_1][x_m] (m = 2): Gauss base with declared
/// nu(x_1), then mu_l = [mu_{l-1}; mu_l(phi_l) = gamma_l].
class AugmentedChain : public ValuationOracle {
 public:
  struct Step {
    Polynomial phi;
    Value gamma;
  };

  AugmentedChain(Ring ring, Value base, std::vector<Step> steps);

  const Ring& ring() const override { return ring_; }
  const Value& base() const { return base_; }
  const std::vector<Step>& steps() const { return steps_; }

  ValueResult value(const Polynomial& g) const override;
  /// Value under the truncated chain mu_level (level 0 is the Gauss base).
  Value value_at(const Polynomial& g, int level) const;
  /// Initial form at `level`: the part of the phi-adic expansion of minimal value.
  Polynomial initial_form(const Polynomial& g, int level) const;
  Scalar residue(const Polynomial& g, const Polynomial& u) const override;

  /// phi-adic expansion g = sum g_i phi^i with deg_{x_m} g_i < deg phi.
  std::vector<Polynomial> expansion(const Polynomial& g, const Polynomial& phi) const;

 private:
  Ring ring_;
  Value base_;
  std::vector<Step> steps_;
};

}  // namespace lrm
