#include <numeric>

#include "doctest.h"
#include "lrm/error.hpp"
#include "lrm/reduce.hpp"

using namespace lrm;

namespace {

const FieldSpec Q{};
const Ring Q2{2, Q};
const Ring F2{2, FieldSpec(2)};
const Ring F3{2, FieldSpec(3)};

Polynomial P(const char* s, const Ring& r = Q2) { return parse_polynomial(s, r); }

ArcValuation arc(const char* f, const std::string& x1, const std::string& x2, const Ring& r = Q2, long trunc = 40) {
  std::vector<PuiseuxSeries> a{parse_series(x1, r.field, Rational(trunc)), parse_series(x2, r.field, Rational(trunc))};
  return ArcValuation(r, P(f, r), a, parse_value("1"), Rational(trunc));
}

ReductionState state(const char* f, const std::string& x1, const std::string& x2, const Ring& r = Q2,
                     std::optional<ExtensionData> declared = std::nullopt) {
  return ReductionState::initial(arc(f, x1, x2, r), declared);
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

// t * sqrt(1 + t) to order 40
std::string sqrt_arc() {
  std::string s;
  Rational c(1);
  for (int k = 0; k < 40; ++k) {
    if (k) c = c * (Rational(1, 2) - Rational(k - 1)) / Rational(k);
    if (!s.empty()) s += " + ";
    s += "(" + c.get_str() + ")*t^" + std::to_string(k + 1);
  }
  return s;
}

Polynomial x_pow_times(const Polynomial& f, const Exponents& e, const Scalar& c, std::uint32_t lambda) {
  const Ring r{f.nvars(), f.field()};
  Polynomial shift = Polynomial::variable(r.field, r.m, r.m - 1) + Polynomial::constant(r.field, r.m, c);
  return Polynomial::monomial(r.field, e, Scalar(r.field, 1)) * shift.pow(lambda) * f;
}

// Reapply every recorded step to f_initial and compare with f_final.
bool replays(const ReductionResult& res) {
  Polynomial f = res.f_initial;
  Scalar c(f.field(), 0);
  for (const TraceStep& st : res.steps) {
    if (st.transform) c = st.transform->c;
    switch (st.kind) {
      case TraceStep::Kind::Elu: break;
      case TraceStep::Kind::TranslateChar0:
      case TraceStep::Kind::TranslateDefectless: f = translate_last(f, *st.h); break;
      case TraceStep::Kind::A6:
      case TraceStep::Kind::A1:
      case TraceStep::Kind::Case2: f = substitute(f, *st.transform); break;
      case TraceStep::Kind::StrictTransform: {
        const auto& s = *st.strict;
        if (!(x_pow_times(s.f1, s.monomial, c, s.lambda) == f)) return false;
        f = s.f1;
        break;
      }
    }
    if (!(f == st.f)) return false;
  }
  return f == res.f_final;
}

}  // namespace

TEST_CASE("lrm-step on the cusp") {
  for (const Ring& r : {Q2, F2}) {
    const auto s = state("x2^2 - x1^3", "t^2", "t^3", r);
    CHECK(s.r == 2);
    const StepResult st = lrm_step(s);
    CHECK(st.r1 == 1);
    CHECK(st.sigma.sigma == std::vector<std::uint32_t>{0, 2});
    CHECK(st.sigma.rho.str() == "6");
    REQUIRE(st.steps.size() == 3);
    CHECK(st.steps[1].transform->matrix == IntMatrix{{2, 1}, {3, 2}});
    CHECK(st.steps[2].strict->monomial == Exponents{6, 0});
    CHECK(st.steps[2].strict->lambda == 3);
    CHECK(st.state.f == P("x2", r));
    CHECK(st.sigma.lambda_holds);
    CHECK(st.sigma.cramer_holds);
    CHECK(!st.sigma.d_negative);
  }
}

TEST_CASE("lrm-step refuses values in the group") {
  const auto s = state("x2^2 - 2*x1*x2 + x1^2 - x1^5", "t", "t + t^(5/2)");
  CHECK(code_of([&] { lrm_step(s); }) == Errc::PreconditionValueInGroup);
  CHECK(code_of([&] { ReductionState::initial(arc("x1*x2 + x1^2", "t", "-t")); }) == Errc::Precondition);
  CHECK(code_of([&] { ReductionState::initial(arc("x2^2 - x1^5", "t^2", "t^3")); }) == Errc::Precondition);
}

TEST_CASE("char-0 translation of the tacnode") {
  const auto s = state("x2^2 - 2*x1*x2 + x1^2 - x1^5", "t", "t + t^(5/2)");
  CHECK(!binomial_obstruction(s));
  const TranslateResult tr = char0_translate(s);
  CHECK(*tr.step.omega == Scalar(Q, Rational(-1, 2)));
  CHECK(*tr.step.h == P("x1"));
  CHECK(tr.step.gamma->str() == "5/2");
  CHECK(tr.state.f == P("x2^2 - x1^5"));
  CHECK(tr.state.r == 2);

  const SigmaData sd = lrm_step_provisional(s).sigma;
  CHECK(sd.t() >= 2);
  CHECK(sd.sigma[sd.t() - 2] == s.r - 1);
  CHECK(sd.sigma.back() == s.r);
  // provisional data on a state with nu*(x_m) in the group meets the trichotomy
  CHECK(lrm_step_provisional(s).r1 == s.r);
  CHECK(trichotomy_holds(sd, s.r));

  CHECK(code_of([&] { char0_translate(state("x2^2 - x1^3", "t^2", "t^3")); }) == Errc::Precondition);
}

TEST_CASE("binomial obstruction in characteristic 2") {
  const auto s = state("x2^2 + x1^2 + x1^4 + x1^5", "t", "t + t^2 + t^(5/2)", F2);
  const auto why = binomial_obstruction(s);
  REQUIRE(why);
  CHECK(why->find("a_1 = 0") != std::string::npos);
  CHECK(code_of([&] { char0_translate(s); }) == Errc::BinomialObstruction);
}

TEST_CASE("defectless translation in characteristic 2") {
  const auto s = state("x2^2 + x1^2 + x1^4 + x1^5", "t", "t + t^2 + t^(5/2)", F2);
  const TranslateResult tr = defectless_translate(s, 64);
  CHECK(*tr.step.h == P("x1 + x1^2", F2));
  CHECK(tr.step.gamma->str() == "5/2");
  CHECK(tr.state.f == P("x2^2 + x1^5", F2));
  const StepResult st = lrm_step(tr.state);
  CHECK(st.steps[1].transform->matrix == IntMatrix{{2, 1}, {5, 3}});
  CHECK(st.steps[1].transform->c == Scalar(FieldSpec(2), 1));
  CHECK(st.r1 == 1);
  CHECK(code_of([&] { defectless_translate(state("x2^2 - x1^3", "t^2", "t^3"), 64); }) == Errc::Precondition);
}

TEST_CASE("defect curves") {
  const auto s2 = state("x2^2 - x1*x2 - x1^3", "t", "t^2 + t^3 + t^5 + t^9 + t^17 + t^33", F2,
                        ExtensionData{2, 1, 1, 2});
  CHECK(code_of([&] { defectless_translate(s2, 64); }) == Errc::DefectSuspected);
  const ReductionResult r2 = reduce(s2);
  CHECK(r2.status == ReductionResult::Status::DefectSuspected);
  REQUIRE(r2.ladder.size() >= 6);
  const char* expect[] = {"2", "3", "5", "9", "17", "33"};
  for (int i = 0; i < 6; ++i) CHECK(r2.ladder[i].str() == expect[i]);
  REQUIRE(r2.delta);
  CHECK(*r2.delta == 1);
  REQUIRE(r2.decomposition);

  const auto s3 = state("x2^3 - x1^2*x2 - x1^4", "t", "-t^2 - t^4 - t^10 - t^28", F3, ExtensionData{3, 1, 1, 3});
  const ReductionResult r3 = reduce(s3);
  CHECK(r3.status == ReductionResult::Status::DefectSuspected);
  CHECK(*r3.delta == 1);
}

TEST_CASE("case-2 finish") {
  const auto s = state("x2^2 - x1^2 - x1^3", "t", sqrt_arc());
  const Case2Result c = case2_finish(s);
  CHECK(*c.steps[0].beta == Scalar(Q, 1));
  CHECK(c.steps[0].transform->matrix == IntMatrix{{1, 0}, {1, 1}});
  CHECK(c.state.f == P("x2^2 + 2*x2 - x1"));
  CHECK(c.state.r == 1);
  CHECK(code_of([&] { case2_finish_with(s, Integer(1), Scalar(Q, 0)); }) == Errc::NotCase2);

  const auto direct = reduce(s);
  CHECK(direct.status == ReductionResult::Status::ReducedToSmooth);
  CHECK(direct.f_final == P("x2^2 + 2*x2 - x1"));
  CHECK(replays(direct));

  // z = x1 on the arc of a reducible f
  const auto red = state("x2^2 - 3*x1*x2 + 2*x1^2", "t", "t");
  const Polynomial h = P("x1");
  const Polynomial f2 = translate_last(red.f, h);
  const ReductionState moved{f2, red.oracle.translated(h, f2), red.r, 1, std::nullopt};
  CHECK(code_of([&] { case2_finish(moved); }) == Errc::NotCase2);
}

TEST_CASE("reduce drivers") {
  const auto cusp = reduce(state("x2^2 - x1^3", "t^2", "t^3"));
  CHECK(cusp.status == ReductionResult::Status::ReducedToSmooth);
  CHECK(cusp.lrm_steps == 1);
  CHECK(cusp.translations == 0);
  CHECK(replays(cusp));

  const auto tac = reduce(state("x2^2 - 2*x1*x2 + x1^2 - x1^5", "t", "t + t^(5/2)"));
  CHECK(tac.status == ReductionResult::Status::ReducedToSmooth);
  CHECK(tac.translations == 1);
  CHECK(tac.lrm_steps == 1);
  CHECK(tac.derivative_bound_holds);
  REQUIRE(tac.derivative_bound);
  CHECK(tac.derivative_bound->str() == "5/2");
  CHECK(replays(tac));
  for (const auto& st : tac.steps)
    if (st.kind == TraceStep::Kind::TranslateChar0) {
      REQUIRE(st.sigma);
      CHECK(st.sigma->sigma[st.sigma->t() - 2] == 1);
    }

  const auto c2 = reduce(state("x2^2 + x1^2 + x1^4 + x1^5", "t", "t + t^2 + t^(5/2)", F2));
  CHECK(c2.status == ReductionResult::Status::ReducedToSmooth);
  CHECK(c2.translations == 1);
  CHECK(replays(c2));

  Bounds tight;
  tight.max_translations = 0;
  CHECK(reduce(state("x2^2 - 2*x1*x2 + x1^2 - x1^5", "t", "t + t^(5/2)"), tight).status ==
        ReductionResult::Status::BoundExhausted);

  Bounds first;
  first.first_drop = true;
  const auto drop = reduce(state("x2^3 - x1^7", "t^3", "t^7"), first);
  CHECK(drop.lrm_steps == 1);
  CHECK(drop.r_final < 3);
  CHECK(replays(drop));
  const auto full = reduce(state("x2^3 - x1^7", "t^3", "t^7"));
  CHECK(full.status == ReductionResult::Status::ReducedToSmooth);
  CHECK(replays(full));
}

TEST_CASE("strict descent over monomial curves") {
  for (int a = 2; a <= 5; ++a)
    for (int b = a + 1; b <= 11; ++b) {
      if (std::gcd(a, b) != 1) continue;
      const std::string f = "x2^" + std::to_string(a) + " - x1^" + std::to_string(b);
      const auto s = state(f.c_str(), "t^" + std::to_string(a), "t^" + std::to_string(b));
      const StepResult st = lrm_step(s);
      CHECK(st.r1 < s.r);
      CHECK(st.sigma.lambda_holds);
      CHECK(st.sigma.cramer_holds);
      CHECK(reduce(s).status == ReductionResult::Status::ReducedToSmooth);
    }
}
