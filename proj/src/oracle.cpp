#include "lrm/oracle.hpp"

#include <algorithm>

#include "lrm/error.hpp"

namespace lrm {

std::string ValueResult::str() const {
  switch (kind) {
    case Kind::Finite: return value.str();
    case Kind::Infinite: return "INFINITE";
    case Kind::AboveTruncation: return "ABOVE-TRUNCATION(" + value.str() + ")";
  }
  return "";
}

std::string_view status_name(BestApprox::Status s) {
  switch (s) {
    case BestApprox::Status::MaxOutside: return "MAX-OUTSIDE";
    case BestApprox::Status::NoMaxUpToBound: return "NO-MAX-UP-TO-BOUND";
    case BestApprox::Status::Infinite: return "INFINITE";
  }
  return "";
}

void ValuationOracle::check_frame(const Polynomial& g) const {
  if (g.nvars() != ring().m || !(g.field() == ring().field))
    throw Error(Errc::FrameMismatch, "polynomial does not live in the oracle's ring");
}

namespace {

// c with a == c * b, if the two polynomials are proportional.
std::optional<Scalar> proportionality(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero() || a.terms().size() != b.terms().size()) return std::nullopt;
  const Scalar c = a.terms().begin()->second / b.terms().begin()->second;
  if (!(a == b.scaled(c))) return std::nullopt;
  return c;
}

}  // namespace

// ---------------------------------------------------------------- monomial

MonomialValuation::MonomialValuation(Ring ring, std::vector<Value> weights)
    : ring_(ring), weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != ring_.m)
    throw Error(Errc::FrameMismatch, "one weight per variable is required");
  for (const auto& w : weights_)
    if (w.sign() <= 0) throw Error(Errc::Precondition, "weights must be positive");
  (void)context();
}

GeneratorContext MonomialValuation::context() const {
  GeneratorContext ctx;
  for (const auto& w : weights_) ctx = join(ctx, w.context());
  return ctx;
}

Value MonomialValuation::monomial_value(const Exponents& e) const {
  Value v(context(), 0, 0);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) v += weights_[i].scaled(Rational(e[i]));
  return v;
}

Polynomial MonomialValuation::initial_form(const Polynomial& g) const {
  check_frame(g);
  Polynomial in(g.field(), g.nvars());
  std::optional<Value> best;
  for (const auto& [e, c] : g.terms()) {
    const Value v = monomial_value(e);
    if (!best || v < *best) {
      best = v;
      in = Polynomial(g.field(), g.nvars());
    }
    if (v == *best) in.add_term(e, c);
  }
  return in;
}

ValueResult MonomialValuation::value(const Polynomial& g) const {
  check_frame(g);
  if (g.is_zero()) return ValueResult::infinite();
  return ValueResult::finite(monomial_value(initial_form(g).terms().begin()->first));
}

Scalar MonomialValuation::residue(const Polynomial& g, const Polynomial& u) const {
  const ValueResult vg = value(g), vu = value(u);
  if (!vg.is_finite() || !vu.is_finite() || !(vg.value == vu.value))
    throw Error(Errc::ValueMismatch, "residue needs equal finite values, got " + vg.str() + " and " + vu.str());
  auto c = proportionality(initial_form(g), initial_form(u));
  if (!c) throw Error(Errc::ValueMismatch, "initial forms are not proportional");
  return *c;
}

// ---------------------------------------------------------------- arc

ArcValuation::ArcValuation(Ring ring, Polynomial f, std::vector<PuiseuxSeries> arc, Value normalization, Rational trunc)
    : ring_(ring), f_(std::move(f)), arc_(std::move(arc)), normalization_(std::move(normalization)), trunc_(std::move(trunc)) {
  check_frame(f_);
  if (static_cast<int>(arc_.size()) != ring_.m) throw Error(Errc::FrameMismatch, "one arc series per variable is required");
  if (normalization_.sign() <= 0) throw Error(Errc::Precondition, "normalization must be positive");
  if (trunc_ <= 0) throw Error(Errc::Precondition, "truncation must be positive");
  for (std::size_t i = 0; i < arc_.size(); ++i) {
    if (!(arc_[i].field() == ring_.field)) throw Error(Errc::FrameMismatch, "arc series over a different field");
    const SeriesOrder o = arc_[i].order();
    if (o.kind == SeriesOrder::Kind::Finite && o.q <= 0)
      throw Error(Errc::Precondition, "arc of x" + std::to_string(i + 1) + " does not pass through the origin");
  }
}

PuiseuxSeries ArcValuation::evaluate(const Polynomial& g) const {
  check_frame(g);
  return evaluate_at_arc(g, arc_);
}

ValueResult ArcValuation::value(const Polynomial& g) const {
  const PuiseuxSeries s = evaluate(g);
  const SeriesOrder o = s.order();
  switch (o.kind) {
    case SeriesOrder::Kind::Finite: return ValueResult::finite(normalization_.scaled(o.q));
    case SeriesOrder::Kind::Zero: return ValueResult::infinite();
    case SeriesOrder::Kind::Above: break;
  }
  if (g.is_zero()) return ValueResult::infinite();
  if (expand_last(f_).monic && divide_monic_last(g, f_).remainder.is_zero()) return ValueResult::infinite();
  return ValueResult::above(normalization_.scaled(o.q));
}

Scalar ArcValuation::residue(const Polynomial& g, const Polynomial& u) const {
  const PuiseuxSeries sg = evaluate(g), su = evaluate(u);
  const SeriesOrder og = sg.order(), ou = su.order();
  if (!og.finite() || !ou.finite() || og.q != ou.q)
    throw Error(Errc::ValueMismatch, "residue needs equal finite values, got " + value(g).str() + " and " + value(u).str());
  return sg.leading_coefficient() / su.leading_coefficient();
}

bool ArcValuation::consistent() const { return evaluate(f_).terms().empty(); }

ValueLattice ArcValuation::base_lattice() const {
  ValueLattice l;
  for (int i = 0; i + 1 < ring_.m; ++i) {
    const ValueResult v = value(Polynomial::variable(ring_.field, ring_.m, i));
    if (!v.is_finite()) throw Error(Errc::Precondition, "x" + std::to_string(i + 1) + " has no finite value");
    l.generators.push_back(v.value);
  }
  return l;
}

ValueLattice ArcValuation::realized_lattice(int bound) const {
  ValueLattice l;
  for (int i = 0; i < ring_.m; ++i) {
    const ValueResult v = value(Polynomial::variable(ring_.field, ring_.m, i));
    if (v.is_finite()) l.generators.push_back(v.value);
  }
  for (const auto& v : best_approx(bound).ladder) l.generators.push_back(v);
  return l;
}

BestApprox ArcValuation::best_approx(int bound) const {
  const int m = ring_.m;
  const Polynomial z = Polynomial::variable(ring_.field, m, m - 1);
  const ValueLattice phi = base_lattice();
  BestApprox r{Polynomial(ring_.field, m), ValueResult::infinite(), BestApprox::Status::NoMaxUpToBound, {}, {}, false, ""};
  for (int steps = 0;; ++steps) {
    const Polynomial zh = z - r.h;
    r.gamma = value(zh);
    if (r.gamma.kind == ValueResult::Kind::Infinite) {
      r.status = BestApprox::Status::Infinite;
      r.diagnostic = "z - h' vanishes on the arc";
      return r;
    }
    if (r.gamma.kind == ValueResult::Kind::AboveTruncation) {
      r.truncation_hit = true;
      r.status = BestApprox::Status::NoMaxUpToBound;
      r.diagnostic = "truncation reached after " + std::to_string(steps) + " improvements";
      return r;
    }
    r.ladder.push_back(r.gamma.value);
    r.approximants.push_back(r.h);
    const auto coords = member(r.gamma.value, phi);
    if (!coords) {
      r.status = BestApprox::Status::MaxOutside;
      return r;
    }
    if (steps >= bound) {
      r.status = BestApprox::Status::NoMaxUpToBound;
      r.diagnostic = "improvement bound " + std::to_string(bound) + " reached";
      return r;
    }
    Exponents e(m, 0);
    for (int i = 0; i + 1 < m; ++i) {
      if ((*coords)[i] < 0) throw Error(Errc::Unsupported, "value is not attained by a monomial in x_1..x_{m-1}");
      e[i] = static_cast<std::uint32_t>((*coords)[i].get_ui());
    }
    const Polynomial witness = Polynomial::monomial(ring_.field, e, Scalar(ring_.field, 1));
    r.h += witness.scaled(residue(zh, witness));
  }
}

PuiseuxSeries ArcValuation::laurent_monomial(const std::vector<std::int64_t>& exps) const {
  PuiseuxSeries s = PuiseuxSeries::constant(Scalar(ring_.field, 1));
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 0) s = s * arc_[i].pow(static_cast<std::uint64_t>(exps[i]));
    if (exps[i] < 0) {
      if (!arc_[i].order().finite())
        throw Error(Errc::Precondition, "x" + std::to_string(i + 1) + " vanishes on the arc and cannot be inverted");
      s = s * arc_[i].inverse(trunc_).pow(static_cast<std::uint64_t>(-exps[i]));
    }
  }
  return s;
}

ArcValuation ArcValuation::transformed(const PerronTransform& tau, const Polynomial& f1) const {
  tau.validate();
  if (tau.m != ring_.m) throw Error(Errc::FrameMismatch, "transform frame differs from the oracle's");
  const int size = tau.size();
  const IntMatrix inv = inverse_unimodular(tau.matrix);
  std::vector<PuiseuxSeries> next = arc_;
  for (int j = 0; j < size; ++j) {
    std::vector<std::int64_t> exps(ring_.m, 0);
    for (int i = 0; i < size; ++i) exps[tau.variable(i)] += inv[j][i];
    PuiseuxSeries y = laurent_monomial(exps);
    if (tau.kind == PerronTransform::Kind::A1 && j == tau.n) y = y - PuiseuxSeries::constant(tau.c);
    const SeriesOrder o = y.order();
    if (o.kind == SeriesOrder::Kind::Finite && o.q <= 0)
      throw Error(Errc::Precondition, "transformed x" + std::to_string(tau.variable(j) + 1) + " is not centered at the origin");
    next[tau.variable(j)] = y;
  }
  return ArcValuation(ring_, f1, std::move(next), normalization_, trunc_);
}

ArcValuation ArcValuation::translated(const Polynomial& h, const Polynomial& f1) const {
  check_frame(h);
  if (h.degree_in(ring_.m - 1) != 0) throw Error(Errc::Precondition, "translation must not involve x_m");
  std::vector<PuiseuxSeries> next = arc_;
  next.back() = arc_.back() - evaluate(h);
  return ArcValuation(ring_, f1, std::move(next), normalization_, trunc_);
}

// ---------------------------------------------------------------- chain

AugmentedChain::AugmentedChain(Ring ring, Value base, std::vector<Step> steps)
    : ring_(ring), base_(std::move(base)), steps_(std::move(steps)) {
  if (ring_.m != 2) throw Error(Errc::Unsupported, "augmented chains are implemented on k[x1][x2] only");
  if (base_.sign() <= 0) throw Error(Errc::Precondition, "base value of x1 must be positive");
  std::uint32_t last_deg = 0;
  for (std::size_t l = 0; l < steps_.size(); ++l) {
    const Step& s = steps_[l];
    check_frame(s.phi);
    const CoefficientExpansion ex = expand_last(s.phi);
    if (!ex.monic || ex.e == 0) throw Error(Errc::Precondition, "key polynomial must be monic in x2 of positive degree");
    if (ex.e <= last_deg && l > 0) throw Error(Errc::Precondition, "key polynomial degrees must increase strictly");
    last_deg = ex.e;
    if (!(value_at(s.phi, static_cast<int>(l)) < s.gamma))
      throw Error(Errc::Precondition, "gamma must exceed the previous value of the key polynomial");
  }
}

std::vector<Polynomial> AugmentedChain::expansion(const Polynomial& g, const Polynomial& phi) const {
  std::vector<Polynomial> out;
  Polynomial rest = g;
  while (!rest.is_zero()) {
    Division d = divide_monic_last(rest, phi);
    out.push_back(std::move(d.remainder));
    rest = std::move(d.quotient);
  }
  return out;
}

Value AugmentedChain::value_at(const Polynomial& g, int level) const {
  if (g.is_zero()) throw Error(Errc::Precondition, "value of zero is infinite");
  if (level == 0) {
    std::uint32_t low = UINT32_MAX;
    for (const auto& [e, c] : g.terms()) low = std::min(low, e[0]);
    return base_.scaled(Rational(low));
  }
  const Step& s = steps_[level - 1];
  const auto parts = expansion(g, s.phi);
  std::optional<Value> best;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_zero()) continue;
    Value v = value_at(parts[i], level - 1) + s.gamma.scaled(Rational(static_cast<long>(i)));
    if (!best || v < *best) best = v;
  }
  return *best;
}

Polynomial AugmentedChain::initial_form(const Polynomial& g, int level) const {
  const Value target = value_at(g, level);
  Polynomial in(g.field(), g.nvars());
  if (level == 0) {
    for (const auto& [e, c] : g.terms())
      if (base_.scaled(Rational(e[0])) == target) in.add_term(e, c);
    return in;
  }
  const Step& s = steps_[level - 1];
  const auto parts = expansion(g, s.phi);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_zero()) continue;
    if (value_at(parts[i], level - 1) + s.gamma.scaled(Rational(static_cast<long>(i))) == target)
      in += initial_form(parts[i], level - 1) * s.phi.pow(static_cast<std::uint32_t>(i));
  }
  return in;
}

ValueResult AugmentedChain::value(const Polynomial& g) const {
  check_frame(g);
  if (g.is_zero()) return ValueResult::infinite();
  return ValueResult::finite(value_at(g, static_cast<int>(steps_.size())));
}

Scalar AugmentedChain::residue(const Polynomial& g, const Polynomial& u) const {
  const ValueResult vg = value(g), vu = value(u);
  if (!vg.is_finite() || !vu.is_finite() || !(vg.value == vu.value))
    throw Error(Errc::ValueMismatch, "residue needs equal finite values, got " + vg.str() + " and " + vu.str());
  const int level = static_cast<int>(steps_.size());
  auto c = proportionality(initial_form(g, level), initial_form(u, level));
  if (!c) throw Error(Errc::ValueMismatch, "initial forms are not proportional; the residue is not a constant");
  return *c;
}

}  // namespace lrm
