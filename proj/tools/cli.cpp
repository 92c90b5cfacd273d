#include "cli.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "lrm/document.hpp"
#include "lrm/error.hpp"
#include "lrm/perron.hpp"

namespace lrm::cli {

namespace {

struct Options {
  std::string oracle_path;
  std::string poly;
  std::string output;
  std::optional<std::string> trunc;
  int max_translations = 64;
  int max_perron_steps = kDefaultPerronSteps;
  bool first_drop = false;

  std::string weights_path;
  std::string m1, m2;

  std::string degree = "1", e = "1", fres = "1";
  std::uint64_t p = 1;
  std::string decomposition_path;
  std::string replay_path;
};

void emit(const Json& doc, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << canonical(doc);
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(Errc::Parse, "cannot write " + path);
  f << canonical(doc);
}

int cmd_valuate(const Options& o, std::ostream& out) {
  const OracleDocument doc = parse_oracle(read_json_file(o.oracle_path), o.trunc ? std::optional(parse_rational(*o.trunc)) : std::nullopt);
  out << doc.oracle->value(parse_polynomial(o.poly, doc.ring)).str() << "\n";
  return kOk;
}

int cmd_chain_value(const Options& o, std::ostream& out) {
  const OracleDocument doc = parse_oracle(read_json_file(o.oracle_path));
  out << doc.chain().value(parse_polynomial(o.poly, doc.ring)).str() << "\n";
  return kOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  TraceOptions opt;
  opt.bounds.max_translations = o.max_translations;
  opt.bounds.max_perron_steps = o.max_perron_steps;
  opt.bounds.first_drop = o.first_drop;
  if (o.trunc) opt.trunc = parse_rational(*o.trunc);
  const Json input = read_json_file(o.oracle_path);
  const ReductionResult res = run_reduction(input, opt);
  const Json trace = trace_document(input, opt, res);
  emit(trace, o.output, out);
  if (!o.output.empty() && o.output != "-") {
    out << "status: " << res.status_str() << "\n";
    if (!res.diagnostic.empty()) out << "diagnostic: " << res.diagnostic << "\n";
  }
  switch (res.status) {
    case ReductionResult::Status::ReducedToSmooth:
    case ReductionResult::Status::MultiplicityDropped: return kOk;
    case ReductionResult::Status::DefectSuspected: return kDefect;
    case ReductionResult::Status::BoundExhausted: return kBound;
  }
  return kInternal;
}

int cmd_replay(const Options& o, std::ostream& out) {
  const ReplayReport rep = replay_trace(read_json_file(o.replay_path));
  out << (rep.ok ? "replay: OK" : "replay: MISMATCH: " + rep.detail) << "\n";
  return rep.ok ? kOk : kInput;
}

int cmd_perron_divide(const Options& o, std::ostream& out) {
  const OracleDocument doc = parse_oracle(read_json_file(o.weights_path));
  const MonomialValuation& w = doc.monomial();
  const int m = doc.ring.m;
  const Exponents e1 = parse_monomial(o.m1, m), e2 = parse_monomial(o.m2, m);
  const PerronTransform tau = build_a6_divide(e1, e2, w.weights(), doc.ring.field, m, o.max_perron_steps);
  const Scalar one(doc.ring.field, 1);
  const Polynomial i1 = substitute(Polynomial::monomial(doc.ring.field, e1, one), tau);
  const Polynomial i2 = substitute(Polynomial::monomial(doc.ring.field, e2, one), tau);
  const Exponents a = i1.terms().begin()->first, b = i2.terms().begin()->first;
  Exponents q(m);
  for (int i = 0; i < m; ++i) {
    if (b[i] < a[i]) throw Error(Errc::Internal, "image of m1 does not divide image of m2");
    q[i] = b[i] - a[i];
  }
  emit(Json{{"version", kDocumentVersion},
            {"kind", "perron-divide"},
            {"transform", to_json(tau)},
            {"m1_image", i1.str()},
            {"m2_image", i2.str()},
            {"quotient", monomial_str(q)}},
       o.output, out);
  return kOk;
}

int cmd_perron_monomialize(const Options& o, std::ostream& out) {
  const OracleDocument doc = parse_oracle(read_json_file(o.weights_path));
  emit(to_json(monomialize(parse_polynomial(o.poly, doc.ring), doc.monomial(), o.max_perron_steps)), o.output, out);
  return kOk;
}

int cmd_defect(const Options& o, std::ostream& out) {
  ExtensionData x;
  x.degree = Integer(o.degree);
  x.fres = Integer(o.fres);
  x.p = o.p;
  if (!o.oracle_path.empty()) {
    const OracleDocument doc = parse_oracle(read_json_file(o.oracle_path));
    x = extension_from_arc(doc.arc(), x.degree, o.max_translations);
    x.fres = Integer(o.fres);
    out << "e=" << x.e.get_str() << "\n";
  } else {
    x.e = Integer(o.e);
  }
  x.validate();
  const unsigned long delta = ostrowski(x);
  out << "delta=" << delta << "\n";
  if (!o.decomposition_path.empty()) {
    const FamilyDecomposition d = decomposition_from_json(read_json_file(o.decomposition_path));
    out << "jump_total=" << jump_total(d).get_str() << "\n";
    out << "consistent=" << (consistency(x, d) ? "true" : "false") << "\n";
  }
  return kOk;
}

void add_bounds(CLI::App* app, Options& o) {
  app->add_option("--trunc", o.trunc, "truncation override for arc oracles");
  app->add_option("--max-translations", o.max_translations, "translation bound")->check(CLI::PositiveNumber);
  app->add_option("--max-perron-steps", o.max_perron_steps, "subtractive step bound")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact local reduction of multiplicity"};
  app.require_subcommand(1);
  Options o;

  auto* valuate = app.add_subcommand("valuate", "value of a polynomial under an oracle");
  valuate->add_option("--oracle", o.oracle_path, "oracle document")->required();
  valuate->add_option("--poly", o.poly, "polynomial")->required();
  valuate->add_option("--trunc", o.trunc, "truncation override for arc oracles");

  auto* reduce = app.add_subcommand("reduce", "reduce the multiplicity of a curve along an arc");
  reduce->add_option("--curve,--oracle", o.oracle_path, "arc oracle document")->required();
  reduce->add_option("-o,--output", o.output, "trace output path (stdout by default)");
  reduce->add_flag("--first-drop", o.first_drop, "stop after the first strict drop");
  add_bounds(reduce, o);

  auto* replay = app.add_subcommand("replay", "replay a trace document");
  replay->add_option("trace", o.replay_path, "trace document")->required();

  auto* perron = app.add_subcommand("perron", "Perron transforms");
  perron->require_subcommand(1);
  auto* divide = perron->add_subcommand("divide", "transform after which x^m1 divides x^m2");
  divide->add_option("--weights", o.weights_path, "monomial oracle document")->required();
  divide->add_option("--m1", o.m1, "monomial of smaller value")->required();
  divide->add_option("--m2", o.m2, "monomial of larger value")->required();
  divide->add_option("-o,--output", o.output, "output path");
  divide->add_option("--max-perron-steps", o.max_perron_steps, "subtractive step bound")->check(CLI::PositiveNumber);
  auto* mono = perron->add_subcommand("monomialize", "monomialize a polynomial under monomial weights");
  mono->add_option("--weights", o.weights_path, "monomial oracle document")->required();
  mono->add_option("--poly", o.poly, "polynomial")->required();
  mono->add_option("-o,--output", o.output, "output path");
  mono->add_option("--max-perron-steps", o.max_perron_steps, "subtractive step bound")->check(CLI::PositiveNumber);

  auto* defect = app.add_subcommand("defect", "Ostrowski defect of declared extension data");
  defect->add_option("--degree", o.degree, "extension degree")->required();
  defect->add_option("--e", o.e, "ramification index");
  defect->add_option("--f", o.fres, "residue degree");
  defect->add_option("--p", o.p, "residue characteristic exponent (1 in characteristic 0)");
  defect->add_option("--oracle", o.oracle_path, "arc oracle: e is computed from its value lattices");
  defect->add_option("--decomposition", o.decomposition_path, "family decomposition document");
  defect->add_option("--max-translations", o.max_translations, "approximation bound for --oracle")->check(CLI::PositiveNumber);

  auto* chain = app.add_subcommand("chain", "augmented chains");
  chain->require_subcommand(1);
  auto* cvalue = chain->add_subcommand("value", "value of a polynomial under a chain");
  cvalue->add_option("--chain", o.oracle_path, "chain document")->required();
  cvalue->add_option("--poly", o.poly, "polynomial")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }

  try {
    if (*valuate) return cmd_valuate(o, out);
    if (*reduce) return cmd_reduce(o, out);
    if (*replay) return cmd_replay(o, out);
    if (*divide) return cmd_perron_divide(o, out);
    if (*mono) return cmd_perron_monomialize(o, out);
    if (*defect) return cmd_defect(o, out);
    if (*cvalue) return cmd_chain_value(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::Internal ? kInternal : kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInternal;
}

}  // namespace lrm::cli
