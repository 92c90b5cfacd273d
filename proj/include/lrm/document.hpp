#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "lrm/defect.hpp"
#include "lrm/oracle.hpp"
#include "lrm/reduce.hpp"

namespace lrm {

using Json = nlohmann::ordered_json;

inline constexpr int kDocumentVersion = 1;

/// A parsed oracle document. `source` keeps the input verbatim so traces can
/// embed it.
struct OracleDocument {
  std::string kind;  // "arc" | "monomial" | "chain"
  Ring ring;
  Json source;
  std::shared_ptr<const ValuationOracle> oracle;
  std::optional<ExtensionData> extension;  // declared, arc documents only

  const ArcValuation& arc() const;
  const MonomialValuation& monomial() const;
  const AugmentedChain& chain() const;
};

/// `trunc` overrides the document's truncation for arc oracles.
OracleDocument parse_oracle(const Json& doc, std::optional<Rational> trunc = std::nullopt);
Json read_json_file(const std::filesystem::path& path);

Ring parse_ring(const Json& j);
Json ring_json(const Ring& r);

Json to_json(const PerronTransform& t);
PerronTransform transform_from_json(const Json& j, FieldSpec field);
Json to_json(const SigmaData& s);
Json to_json(const TraceStep& s);
Json to_json(const Monomialization& mz);
Json to_json(const FamilyDecomposition& d);
FamilyDecomposition decomposition_from_json(const Json& j);

struct TraceOptions {
  Bounds bounds;
  std::optional<Rational> trunc;
};

/// Runs the reduction described by an arc document. Throws on invalid input.
ReductionResult run_reduction(const Json& input, const TraceOptions& opt);
Json trace_document(const Json& input, const TraceOptions& opt, const ReductionResult& res);

/// Canonical serialization used for byte comparisons.
std::string canonical(const Json& j);

struct ReplayReport {
  bool ok = true;
  std::string detail;
};

/// Re-runs the reduction from the embedded input and compares canonical
/// bytes, then reapplies every recorded substitution and translation to the
/// initial f and checks each recorded intermediate polynomial.
ReplayReport replay_trace(const Json& trace);

}  // namespace lrm
