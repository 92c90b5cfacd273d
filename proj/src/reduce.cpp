#include "lrm/reduce.hpp"

#include <algorithm>

#include "lrm/error.hpp"

namespace lrm {

namespace {

Polynomial last_variable(const Ring& r) { return Polynomial::variable(r.field, r.m, r.m - 1); }

Value finite_value(const ArcValuation& o, const Polynomial& g, const char* what) {
  const ValueResult v = o.value(g);
  if (!v.is_finite()) throw Error(Errc::Precondition, std::string(what) + " has value " + v.str());
  return v.value;
}

bool in_base_group(const ArcValuation& o, const Value& v) { return member(v, o.base_lattice()).has_value(); }

Value exponent_value(const Exponents& d, const std::vector<Value>& w) {
  Value v;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (d[i]) v += w[i].scaled(Rational(d[i]));
  return v;
}

std::optional<std::uint32_t> ord_or_none(const Polynomial& f) { return ord_last(f); }

StepResult lrm_step_impl(const ReductionState& s, int max_perron_steps, bool provisional) {
  const Ring& ring = s.oracle.ring();
  const int m = ring.m, n = m - 1;
  const Polynomial z = last_variable(ring);
  const Value gamma = finite_value(s.oracle, z, "x_m");
  if (!provisional) {
    if (s.r <= 1) throw Error(Errc::Precondition, "lrm-step needs r > 1");
    if (in_base_group(s.oracle, gamma))
      throw Error(Errc::PreconditionValueInGroup, "nu*(x_m) = " + gamma.str() + " lies in the value group of nu");
  }
  const std::vector<Value> w = s.oracle.base_lattice().generators;

  // expansion in x_m and power extraction of each coefficient
  const CoefficientExpansion ex = expand_last(s.f);
  TraceStep elu;
  elu.kind = TraceStep::Kind::Elu;
  elu.f = s.f;
  std::vector<std::optional<Exponents>> dexp(ex.e + 1);
  for (std::uint32_t i = 0; i <= ex.e; ++i) {
    const Polynomial& a = ex.a[i];
    if (a.is_zero()) continue;
    Exponents d(m, UINT32_MAX);
    d[m - 1] = 0;
    for (const auto& [e, c] : a.terms())
      for (int k = 0; k < n; ++k) d[k] = std::min(d[k], e[k]);
    Polynomial unit(a.field(), m);
    for (const auto& [e, c] : a.terms()) {
      Exponents q = e;
      for (int k = 0; k < n; ++k) q[k] -= d[k];
      unit.add_term(q, c);
    }
    if (unit.constant_term().is_zero())
      throw Error(Errc::Unsupported, "coefficient a_" + std::to_string(i) + " is not a monomial times a unit");
    dexp[i] = d;
    elu.elu.emplace_back(i, d);
  }

  // terms of minimal value
  SigmaData sd;
  std::optional<Value> rho;
  std::vector<Value> vals(ex.e + 1);
  for (std::uint32_t i = 0; i <= ex.e; ++i) {
    if (!dexp[i]) continue;
    vals[i] = exponent_value(*dexp[i], w) + gamma.scaled(Rational(i));
    if (!rho || vals[i] < *rho) rho = vals[i];
  }
  sd.rho = *rho;
  for (std::uint32_t i = 0; i <= ex.e; ++i)
    if (dexp[i] && vals[i] == sd.rho) {
      sd.sigma.push_back(i);
      sd.d.push_back(*dexp[i]);
    }
  if (sd.t() < 2) throw Error(Errc::Internal, "only one term of minimal value although nu*(f) is infinite");

  // the A1 transform
  const ArcValuation& o = s.oracle;
  const PerronTransform tau = build_a1(
      w, gamma,
      [&](const Exponents& num, const Exponents& den) {
        return o.residue(Polynomial::monomial(ring.field, num, Scalar(ring.field, 1)),
                         Polynomial::monomial(ring.field, den, Scalar(ring.field, 1)));
      },
      ring.field, m, max_perron_steps);
  const IntMatrix& A = tau.matrix;
  sd.det = determinant(minor_matrix(A, n, n));
  sd.d_negative = sd.det < 0;
  for (std::size_t l = 0; l < sd.t(); ++l) {
    std::int64_t lam = A[n][n] * static_cast<std::int64_t>(sd.sigma[l]);
    std::vector<std::int64_t> tj(n);
    for (int j = 0; j < n; ++j) tj[j] = A[n][j] * static_cast<std::int64_t>(sd.sigma[l]);
    for (int i = 0; i < n; ++i) {
      lam += A[i][n] * static_cast<std::int64_t>(sd.d[l][i]);
      for (int j = 0; j < n; ++j) tj[j] += A[i][j] * static_cast<std::int64_t>(sd.d[l][i]);
    }
    sd.lambda.push_back(lam);
    sd.tau.push_back(tj);
  }
  const std::size_t ref = sd.d_negative ? sd.t() - 1 : 0;
  sd.lambda_holds = true;
  sd.cramer_holds = true;
  auto exps_of = [&](std::size_t l) {
    std::vector<std::int64_t> v(n + 1);
    for (int i = 0; i < n; ++i) v[i] = sd.d[l][i];
    v[n] = sd.sigma[l];
    return v;
  };
  for (std::size_t l = 0; l < sd.t(); ++l) {
    const std::int64_t lhs = (sd.lambda[l] - sd.lambda[ref]) * sd.det;
    const std::int64_t rhs = static_cast<std::int64_t>(sd.sigma[l]) - static_cast<std::int64_t>(sd.sigma[ref]);
    if (lhs != rhs) sd.lambda_holds = false;
    if (!verify_cramer(tau, exps_of(l), exps_of(ref))) sd.cramer_holds = false;
  }

  // substitution, strict transform, new multiplicity
  const Polynomial g = substitute(s.f, tau);
  StrictTransform st = strict_transform(g, tau.c, n);
  const auto r1 = ord_or_none(st.f1);
  if (!r1) throw Error(Errc::Internal, "strict transform vanishes on the x_m axis");

  StepResult out{ReductionState{st.f1, o.transformed(tau, st.f1), *r1, s.generation + 1, s.declared}, {}, sd, *r1};
  TraceStep a1;
  a1.kind = TraceStep::Kind::A1;
  a1.transform = tau;
  a1.sigma = sd;
  a1.f = g;
  TraceStep strict;
  strict.kind = TraceStep::Kind::StrictTransform;
  strict.strict = st;
  strict.r = *r1;
  strict.f = st.f1;
  out.steps = {std::move(elu), std::move(a1), std::move(strict)};

  if (!provisional && *r1 >= s.r) {
    const bool tri = trichotomy_holds(sd, s.r);
    throw Error(Errc::Internal, std::string("strict descent failed (r1 = ") + std::to_string(*r1) +
                                    ") although nu*(x_m) is outside the value group; trichotomy " +
                                    (tri ? "holds" : "fails"));
  }
  return out;
}

}  // namespace

std::string_view kind_name(TraceStep::Kind k) {
  switch (k) {
    case TraceStep::Kind::Elu: return "ELU";
    case TraceStep::Kind::A6: return "A6";
    case TraceStep::Kind::A1: return "A1";
    case TraceStep::Kind::TranslateChar0: return "TRANSLATE-CHAR0";
    case TraceStep::Kind::TranslateDefectless: return "TRANSLATE-DEFECTLESS";
    case TraceStep::Kind::Case2: return "CASE2";
    case TraceStep::Kind::StrictTransform: return "STRICT-TRANSFORM";
  }
  return "";
}

ReductionState ReductionState::initial(const ArcValuation& oracle, std::optional<ExtensionData> declared) {
  const Ring& ring = oracle.ring();
  if (ring.m != 2) throw Error(Errc::Unsupported, "reduction is implemented for plane curves (m = 2)");
  const Polynomial& f = oracle.f();
  if (f.is_zero()) throw Error(Errc::Precondition, "f is zero");
  if (!expand_last(f).monic) throw Error(Errc::Precondition, "f must be monic in x_m");
  for (int i = 0; i < ring.m; ++i) {
    bool all = true;
    for (const auto& [e, c] : f.terms()) all = all && e[i] > 0;
    if (all) throw Error(Errc::Precondition, "f is divisible by x" + std::to_string(i + 1));
  }
  const auto r = ord_last(f);
  if (!r || *r == 0) throw Error(Errc::Precondition, "f must vanish at the origin with finite multiplicity");
  if (!oracle.consistent()) throw Error(Errc::Precondition, "arc does not lie on f to the declared truncation");
  if (declared) declared->validate();
  return ReductionState{f, oracle, *r, 0, declared};
}

StepResult lrm_step(const ReductionState& s, int max_perron_steps) {
  return lrm_step_impl(s, max_perron_steps, false);
}

StepResult lrm_step_provisional(const ReductionState& s, int max_perron_steps) {
  return lrm_step_impl(s, max_perron_steps, true);
}

bool trichotomy_holds(const SigmaData& sd, std::uint32_t r) {
  if (sd.sigma.empty() || sd.sigma.back() != r || sd.sigma.front() != 0) return false;
  if (sd.det != 1 && sd.det != -1) return false;
  const Exponents& d = sd.det == 1 ? sd.d.front() : sd.d.back();
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i] % r != 0) return false;
  return true;
}

std::optional<std::string> binomial_obstruction(const ReductionState& s) {
  if (s.r < 1) return "r = 0";
  const CoefficientExpansion ex = expand_last(s.f);
  const Polynomial& a = ex.a[s.r - 1];
  if (a.is_zero()) return "a_" + std::to_string(s.r - 1) + " = 0";
  const ValueResult va = s.oracle.value(a), vz = s.oracle.value(last_variable(s.oracle.ring()));
  if (!va.is_finite() || !vz.is_finite() || !(va.value == vz.value))
    return "nu*(a_" + std::to_string(s.r - 1) + ") = " + va.str() + " differs from nu*(x_m) = " + vz.str();
  return std::nullopt;
}

TranslateResult char0_translate(const ReductionState& s) {
  const Ring& ring = s.oracle.ring();
  const Polynomial z = last_variable(ring);
  const Value gamma = finite_value(s.oracle, z, "x_m");
  if (!in_base_group(s.oracle, gamma))
    throw Error(Errc::Precondition, "nu*(x_m) = " + gamma.str() + " is outside the value group; use lrm-step");
  if (auto why = binomial_obstruction(s)) throw Error(Errc::BinomialObstruction, *why);
  const Polynomial a = expand_last(s.f).a[s.r - 1];
  const Scalar omega = s.oracle.residue(z, a);
  const Polynomial h = a.scaled(omega);
  const Polynomial f2 = translate_last(s.f, h);
  ArcValuation o2 = s.oracle.translated(h, f2);
  const ValueResult after = o2.value(z);
  if (after.is_finite() && !(gamma < after.value)) throw Error(Errc::Internal, "char-0 translation did not raise nu*(x_m)");

  TranslateResult out{ReductionState{f2, std::move(o2), s.r, s.generation + 1, s.declared}, {}};
  out.step.kind = TraceStep::Kind::TranslateChar0;
  out.step.h = h;
  out.step.omega = omega;
  if (after.is_finite()) out.step.gamma = after.value;
  out.step.f = f2;
  out.step.r = ord_last(f2).value_or(0);
  return out;
}

DefectlessOutcome defectless_attempt(const ReductionState& s, int bound) {
  const Ring& ring = s.oracle.ring();
  const ValueResult gamma = s.oracle.value(last_variable(ring));
  if (gamma.is_finite() && !in_base_group(s.oracle, gamma.value))
    throw Error(Errc::Precondition, "nu*(x_m) = " + gamma.str() + " is outside the value group; use lrm-step");
  DefectlessOutcome out{s.oracle.best_approx(bound), std::nullopt};
  if (out.approx.status != BestApprox::Status::MaxOutside) return out;
  const Polynomial& h = out.approx.h;
  const Polynomial f2 = translate_last(s.f, h);
  TranslateResult tr{ReductionState{f2, s.oracle.translated(h, f2), s.r, s.generation + 1, s.declared}, {}};
  tr.step.kind = TraceStep::Kind::TranslateDefectless;
  tr.step.h = h;
  tr.step.gamma = out.approx.gamma.value;
  tr.step.ladder = out.approx.ladder;
  tr.step.f = f2;
  tr.step.r = ord_last(f2).value_or(0);
  out.translated = std::move(tr);
  return out;
}

namespace {

std::optional<unsigned long> declared_delta(const ReductionState& s, int bound, ExtensionData* filled) {
  if (!s.declared) return std::nullopt;
  ExtensionData x = extension_from_arc(s.oracle, s.declared->degree, bound);
  x.fres = s.declared->fres;
  if (filled) *filled = x;
  try {
    return ostrowski(x);
  } catch (const Error& e) {
    if (e.code() != Errc::NotOstrowski) throw;
    return std::nullopt;
  }
}

}  // namespace

TranslateResult defectless_translate(const ReductionState& s, int bound) {
  DefectlessOutcome out = defectless_attempt(s, bound);
  if (out.translated) return std::move(*out.translated);
  const BestApprox& b = out.approx;
  if (b.status == BestApprox::Status::Infinite)
    throw Error(Errc::NotCase2, "z - h' vanishes identically on the arc, so f is reducible");
  std::string ladder;
  for (const auto& v : b.ladder) ladder += (ladder.empty() ? "" : ", ") + v.str();
  const auto delta = declared_delta(s, bound, nullptr);
  if (delta && *delta > 0) throw Error(Errc::DefectSuspected, "no maximal value (ladder " + ladder + "), delta = " + std::to_string(*delta));
  if (b.truncation_hit) throw Error(Errc::Case2Signal, "z agrees with an element of the base completion to truncation (ladder " + ladder + ")");
  throw Error(Errc::DefectSuspected, "no maximal value up to the bound (ladder " + ladder + ")");
}

namespace {

Case2Result case2_apply(const ReductionState& s, const Integer& b, const Scalar& beta) {
  if (beta.is_zero()) throw Error(Errc::NotCase2, "beta = 0 is not a unit residue");
  if (b <= 0 || !b.fits_slong_p()) throw Error(Errc::NotCase2, "exponent b must be a positive integer");
  PerronTransform tau;
  tau.kind = PerronTransform::Kind::A1;
  tau.m = 2;
  tau.n = 1;
  tau.matrix = {{1, 0}, {b.get_si(), 1}};
  tau.c = beta;
  tau.validate();
  const Polynomial g = substitute(s.f, tau);
  StrictTransform st = strict_transform(g, beta, 1);
  const auto r1 = ord_last(st.f1);
  if (!r1 || *r1 != 1)
    throw Error(Errc::NotCase2, "ord-last after the case-2 transform is " + (r1 ? std::to_string(*r1) : std::string("INFINITE")) + ", not 1");
  Case2Result out{ReductionState{st.f1, s.oracle.transformed(tau, st.f1), *r1, s.generation + 1, s.declared}, {}};
  TraceStep c2;
  c2.kind = TraceStep::Kind::Case2;
  c2.transform = tau;
  c2.beta = beta;
  c2.f = g;
  TraceStep strict;
  strict.kind = TraceStep::Kind::StrictTransform;
  strict.strict = std::move(st);
  strict.r = *r1;
  strict.f = out.state.f;
  out.steps = {std::move(c2), std::move(strict)};
  return out;
}

}  // namespace

Case2Result case2_finish(const ReductionState& s) {
  const Ring& ring = s.oracle.ring();
  if (ring.m != 2) throw Error(Errc::Unsupported, "case2-finish is implemented for m = 2");
  const Polynomial z = last_variable(ring);
  const ValueResult vz = s.oracle.value(z);
  if (!vz.is_finite()) throw Error(Errc::NotCase2, "nu*(z) is " + vz.str());
  for (int i = 0; i < ring.m; ++i) {
    if (s.oracle.arc()[i].order().kind != SeriesOrder::Kind::Zero) continue;
    const Polynomial xi = Polynomial::variable(ring.field, ring.m, i);
    const auto& terms = s.f.terms();
    if (!(terms.size() == 1 && terms.begin()->first == xi.terms().begin()->first))
      throw Error(Errc::NotCase2, "x" + std::to_string(i + 1) + " vanishes on the arc but does not generate f: f is reducible");
  }
  const auto coords = member(vz.value, s.oracle.base_lattice());
  if (!coords) throw Error(Errc::NotCase2, "nu*(z) = " + vz.value.str() + " is not an integral multiple of nu*(x1)");
  const Integer b = coords->front();
  if (b <= 0 || !b.fits_ulong_p()) throw Error(Errc::NotCase2, "exponent b must be a positive integer");
  const Exponents xb{static_cast<std::uint32_t>(b.get_ui()), 0};
  const Scalar beta = s.oracle.residue(z, Polynomial::monomial(ring.field, xb, Scalar(ring.field, 1)));
  return case2_apply(s, b, beta);
}

Case2Result case2_finish_with(const ReductionState& s, const Integer& b, const Scalar& beta) { return case2_apply(s, b, beta); }

std::string_view status_name(ReductionResult::Status s) {
  switch (s) {
    case ReductionResult::Status::ReducedToSmooth: return "REDUCED-TO-SMOOTH";
    case ReductionResult::Status::MultiplicityDropped: return "MULTIPLICITY-DROPPED";
    case ReductionResult::Status::DefectSuspected: return "DEFECT-SUSPECTED";
    case ReductionResult::Status::BoundExhausted: return "BOUND-EXHAUSTED";
  }
  return "";
}

std::string ReductionResult::status_str() const {
  std::string s(status_name(status));
  if (status == Status::MultiplicityDropped) s += "(" + std::to_string(r_final) + ")";
  return s;
}

ReductionResult reduce(const ReductionState& s0, const Bounds& bounds) {
  ReductionResult res;
  res.r_initial = s0.r;
  res.f_initial = s0.f;
  res.f_final = s0.f;
  const Ring ring = s0.oracle.ring();
  const Polynomial z = last_variable(ring);
  const bool char0 = ring.field.is_rational();
  ReductionState state = s0;

  auto finish = [&](ReductionResult::Status st) {
    res.status = st;
    res.r_final = state.r;
    res.f_final = state.f;
    return res;
  };
  auto append = [&](std::vector<TraceStep> steps) {
    for (auto& st : steps) res.steps.push_back(std::move(st));
  };
  auto translate_certificate = [&](const ReductionState& before, const ReductionState& after) {
    if (!char0) return;
    const ValueResult db = before.oracle.value(derivative(before.f, ring.m - 1));
    const ValueResult va = after.oracle.value(z);
    if (!db.is_finite() || !va.is_finite()) return;
    res.derivative_bound = db.value;
    res.translation_values.push_back(va.value);
    if (db.value < va.value) res.derivative_bound_holds = false;
  };

  while (true) {
    if (state.r <= 1) return finish(ReductionResult::Status::ReducedToSmooth);
    const ValueResult vz = state.oracle.value(z);
    if (vz.kind == ValueResult::Kind::AboveTruncation) {
      res.diagnostic = "truncation too small to value x_m";
      return finish(ReductionResult::Status::BoundExhausted);
    }
    if (vz.kind == ValueResult::Kind::Infinite) throw Error(Errc::Internal, "x_m vanishes on the arc while r > 1");

    if (!in_base_group(state.oracle, vz.value)) {
      StepResult sr = lrm_step(state, bounds.max_perron_steps);
      append(std::move(sr.steps));
      ++res.lrm_steps;
      state = std::move(sr.state);
      if (bounds.first_drop)
        return finish(state.r <= 1 ? ReductionResult::Status::ReducedToSmooth : ReductionResult::Status::MultiplicityDropped);
      continue;
    }

    if (res.translations >= bounds.max_translations) {
      res.diagnostic = "translation bound " + std::to_string(bounds.max_translations) + " reached";
      return finish(ReductionResult::Status::BoundExhausted);
    }

    std::optional<SigmaData> provisional;
    try {
      provisional = lrm_step_provisional(state, bounds.max_perron_steps).sigma;
    } catch (const Error&) {
    }

    const auto obstruction = binomial_obstruction(state);
    if (char0 && !obstruction) {
      TranslateResult tr = char0_translate(state);
      tr.step.sigma = provisional;
      translate_certificate(state, tr.state);
      res.steps.push_back(std::move(tr.step));
      ++res.translations;
      state = std::move(tr.state);
      continue;
    }

    DefectlessOutcome out = defectless_attempt(state, bounds.max_translations);
    if (out.translated) {
      out.translated->step.sigma = provisional;
      if (obstruction) out.translated->step.note = "char0-translate refused: " + *obstruction;
      translate_certificate(state, out.translated->state);
      res.steps.push_back(std::move(out.translated->step));
      ++res.translations;
      state = std::move(out.translated->state);
      continue;
    }

    const BestApprox& b = out.approx;
    res.ladder = b.ladder;
    if (b.status == BestApprox::Status::Infinite)
      throw Error(Errc::NotCase2, "z - h' vanishes identically on the arc, so f is reducible");

    ExtensionData x;
    const auto delta = declared_delta(state, bounds.max_translations, &x);
    if (state.declared) res.extension = x;
    res.delta = delta;
    if (delta && *delta > 0) {
      res.decomposition = decomposition_from_ladder(b, Integer(expand_last(state.f).e));
      res.diagnostic = "no maximal value of nu*(z - h') in the value group; Ostrowski defect " + std::to_string(*delta);
      return finish(ReductionResult::Status::DefectSuspected);
    }
    if (!b.truncation_hit) {
      res.diagnostic = "no maximal value up to the improvement bound: " + b.diagnostic;
      return finish(ReductionResult::Status::DefectSuspected);
    }

    // z agrees with a series in x_1 to truncation: try the case-2 finish on
    // the ladder approximants whose value reaches nu*(df/dx_m).
    const ValueResult tau = state.oracle.value(derivative(state.f, ring.m - 1));
    bool finished = false;
    std::string why = "no ladder value reaches nu*(df/dx_m) = " + tau.str();
    for (std::size_t k = 0; k < b.ladder.size() && tau.is_finite() && !finished; ++k) {
      if (b.ladder[k] < tau.value) continue;
      try {
        ReductionState moved = state;
        std::vector<TraceStep> steps;
        const Polynomial& h = b.approximants[k];
        if (!h.is_zero()) {
          const Polynomial f2 = translate_last(state.f, h);
          moved = ReductionState{f2, state.oracle.translated(h, f2), state.r, state.generation + 1, state.declared};
          TraceStep st;
          st.kind = TraceStep::Kind::TranslateDefectless;
          st.h = h;
          st.gamma = b.ladder[k];
          st.f = f2;
          st.r = state.r;
          st.note = "case-2 preparation";
          steps.push_back(std::move(st));
        }
        Case2Result c2 = case2_finish(moved);
        for (auto& st : c2.steps) steps.push_back(std::move(st));
        append(std::move(steps));
        ++res.translations;
        state = std::move(c2.state);
        finished = true;
      } catch (const Error& e) {
        if (e.code() != Errc::NotCase2) throw;
        why = e.what();
      }
    }
    if (!finished) {
      res.diagnostic = "no maximal value and no case-2 certificate: " + why;
      return finish(ReductionResult::Status::DefectSuspected);
    }
    if (bounds.first_drop)
      return finish(state.r <= 1 ? ReductionResult::Status::ReducedToSmooth : ReductionResult::Status::MultiplicityDropped);
  }
}

}  // namespace lrm
