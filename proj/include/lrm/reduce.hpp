#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrm/defect.hpp"
#include "lrm/oracle.hpp"
#include "lrm/perron.hpp"
#include "lrm/poly.hpp"

namespace lrm {

/// Snapshot of a reduction run: f in the current frame and the arc oracle
/// realizing nu* there. Only plane curves (m = 2) are supported.
struct ReductionState {
  Polynomial f;
  ArcValuation oracle;
  std::uint32_t r = 0;
  int generation = 0;
  std::optional<ExtensionData> declared;  // degree data declared by the input

  /// Checks m = 2, 1 < r < infinity, f monic in x_m and not divisible by a
  /// variable, and arc consistency.
  static ReductionState initial(const ArcValuation& oracle, std::optional<ExtensionData> declared = std::nullopt);
};

struct SigmaData {
  Value rho;
  std::vector<std::uint32_t> sigma;  // sigma_1 < ... < sigma_t
  std::vector<Exponents> d;          // monomial part x^{d(sigma_l)} of a_{sigma_l}
  std::vector<std::int64_t> lambda;  // lambda_l per sigma entry
  std::vector<std::vector<std::int64_t>> tau;  // tau[l][j], j = 0..n-1
  std::int64_t det = 0;              // Det of the top-left n x n block
  bool lambda_holds = false;         // (lambda_i - lambda_1) det = sigma_i - sigma_1
  bool cramer_holds = false;         // verify_cramer on every equal-value pair
  bool d_negative = false;           // run exercised the det < 0 branch

  std::size_t t() const { return sigma.size(); }
};

struct TraceStep {
  enum class Kind { Elu, A6, A1, TranslateChar0, TranslateDefectless, Case2, StrictTransform };

  Kind kind = Kind::Elu;
  std::optional<PerronTransform> transform;
  std::optional<Polynomial> h;                // translation x_m -> x_m + h
  std::optional<Scalar> omega;                // char-0 translation constant
  std::optional<Scalar> beta;                 // case-2 unit residue
  std::optional<SigmaData> sigma;
  std::optional<StrictTransform> strict;
  std::optional<Value> gamma;                 // nu*(x_m) after a translation
  std::vector<Value> ladder;
  std::vector<std::pair<std::uint32_t, Exponents>> elu;  // (i, exponents of a_i)
  std::optional<std::uint32_t> r;             // ord-last after the step
  Polynomial f;                               // f after the step
  std::string note;
};

std::string_view kind_name(TraceStep::Kind k);

struct StepResult {
  ReductionState state;
  std::vector<TraceStep> steps;
  SigmaData sigma;
  std::uint32_t r1 = 0;
};

/// One macro step of the multiplicity descent. Requires r > 1 and nu*(x_m) outside Phi_nu;
/// guarantees r1 < r.
StepResult lrm_step(const ReductionState& s, int max_perron_steps = kDefaultPerronSteps);

/// The same computation without the value-group precondition and without
/// the descent assertion; used for diagnostics of the trichotomy.
StepResult lrm_step_provisional(const ReductionState& s, int max_perron_steps = kDefaultPerronSteps);

/// Trichotomy: sigma_t = r, sigma_1 = 0 and det = +-1; when det = 1 also r | d(sigma_1).
bool trichotomy_holds(const SigmaData& sd, std::uint32_t r);

struct TranslateResult {
  ReductionState state;
  TraceStep step;
};

/// x_m' = x_m - omega a_{r-1}. Throws BINOMIAL-OBSTRUCTION when a_{r-1} = 0
/// or nu*(a_{r-1}) != nu*(x_m).
TranslateResult char0_translate(const ReductionState& s);

/// Reason char0_translate would refuse, if any.
std::optional<std::string> binomial_obstruction(const ReductionState& s);

struct DefectlessOutcome {
  BestApprox approx;
  std::optional<TranslateResult> translated;  // set on MAX-OUTSIDE
};

DefectlessOutcome defectless_attempt(const ReductionState& s, int bound);

/// Translation by the best approximation h'. Throws DEFECT-SUSPECTED or
/// CASE2-SIGNAL when best-approx finds no maximum.
TranslateResult defectless_translate(const ReductionState& s, int bound);

struct Case2Result {
  ReductionState state;
  std::vector<TraceStep> steps;
};

/// Case-2 transform x_1 -> x_1, x_m -> x_1^b (x_m + beta) with b = nu*(z)/nu*(x_1)
/// and beta the residue of z / x_1^b; succeeds only if ord-last drops to 1.
Case2Result case2_finish(const ReductionState& s);
/// Case-2 transform with explicit data; NOT-CASE2 for beta = 0, b <= 0 or ord-last != 1.
Case2Result case2_finish_with(const ReductionState& s, const Integer& b, const Scalar& beta);

struct Bounds {
  int max_translations = 64;
  int max_perron_steps = kDefaultPerronSteps;
  bool first_drop = false;
};

struct ReductionResult {
  enum class Status { ReducedToSmooth, MultiplicityDropped, DefectSuspected, BoundExhausted };

  Status status = Status::BoundExhausted;
  std::uint32_t r_initial = 0;
  std::uint32_t r_final = 0;
  Polynomial f_initial;
  Polynomial f_final;
  std::vector<TraceStep> steps;
  int lrm_steps = 0;
  int translations = 0;

  // char-0 termination certificate: nu*(df/dx_m) bounds the translation values
  std::optional<Value> derivative_bound;
  std::vector<Value> translation_values;
  bool derivative_bound_holds = true;

  // defect diagnostics
  std::vector<Value> ladder;
  std::optional<ExtensionData> extension;
  std::optional<unsigned long> delta;
  std::optional<FamilyDecomposition> decomposition;
  std::string diagnostic;

  std::string status_str() const;
};

std::string_view status_name(ReductionResult::Status s);

ReductionResult reduce(const ReductionState& s0, const Bounds& bounds = {});

}  // namespace lrm
