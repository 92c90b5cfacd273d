#include "lrm/document.hpp"

#include <fstream>

#include "lrm/error.hpp"

namespace lrm {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(Errc::Parse, std::string("field '") + key + "' must be a string");
}

Rational rational_field(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error(Errc::Parse, std::string("field '") + key + "' must be an integer or a rational string");
}

Integer positive_integer(const Json& j, const char* key) {
  const Json& v = require(j, key);
  Integer r;
  if (v.is_number_unsigned() || v.is_number_integer()) r = Integer(v.get<long>());
  else if (v.is_string()) r = Integer(v.get<std::string>());
  else throw Error(Errc::Parse, std::string("field '") + key + "' must be an integer");
  if (r <= 0) throw Error(Errc::Parse, std::string("field '") + key + "' must be positive");
  return r;
}

void check_version(const Json& j) {
  if (!j.is_object()) throw Error(Errc::Parse, "document must be a JSON object");
  if (j.contains("version") && j.at("version") != kDocumentVersion)
    throw Error(Errc::Parse, "unsupported document version " + j.at("version").dump());
}

std::vector<Value> values_of(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_array()) throw Error(Errc::Parse, std::string("field '") + key + "' must be an array");
  std::vector<Value> out;
  for (const Json& w : v) {
    if (w.is_number_integer()) out.push_back(Value(Rational(w.get<long>())));
    else out.push_back(parse_value(w.get<std::string>()));
  }
  return out;
}

std::string exps(const Exponents& e) { return monomial_str(e); }

Json values_json(const std::vector<Value>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Json int_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

}  // namespace

const ArcValuation& OracleDocument::arc() const {
  if (kind != "arc") throw Error(Errc::Precondition, "expected an arc oracle document, got '" + kind + "'");
  return static_cast<const ArcValuation&>(*oracle);
}

const MonomialValuation& OracleDocument::monomial() const {
  if (kind != "monomial") throw Error(Errc::Precondition, "expected a monomial oracle document, got '" + kind + "'");
  return static_cast<const MonomialValuation&>(*oracle);
}

const AugmentedChain& OracleDocument::chain() const {
  if (kind != "chain") throw Error(Errc::Precondition, "expected a chain oracle document, got '" + kind + "'");
  return static_cast<const AugmentedChain&>(*oracle);
}

Ring parse_ring(const Json& j) {
  if (j.is_string()) return parse_ring_header(j.get<std::string>());
  if (!j.is_object()) throw Error(Errc::Parse, "ring must be an object or a header string");
  const long m = require(j, "m").get<long>();
  const long p = j.contains("char") ? j.at("char").get<long>() : 0;
  if (m < 1 || p < 0) throw Error(Errc::Parse, "ring needs m >= 1 and char >= 0");
  return Ring{static_cast<int>(m), p == 0 ? FieldSpec{} : FieldSpec(static_cast<std::uint64_t>(p))};
}

Json ring_json(const Ring& r) { return Json{{"m", r.m}, {"char", r.field.characteristic()}}; }

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, path.string() + ": " + e.what());
  }
}

OracleDocument parse_oracle(const Json& doc, std::optional<Rational> trunc) {
  check_version(doc);
  OracleDocument out;
  out.source = doc;
  try {
    out.kind = text(doc, "kind");
    out.ring = parse_ring(require(doc, "ring"));
    const Ring& ring = out.ring;
    if (out.kind == "arc") {
      const Rational t = trunc ? *trunc : (doc.contains("trunc") ? rational_field(doc, "trunc") : Rational(40));
      if (t <= 0) throw Error(Errc::Parse, "trunc must be positive");
      const Json& a = require(doc, "arc");
      std::vector<PuiseuxSeries> series;
      for (int i = 1; i <= ring.m; ++i) {
        const std::string key = "x" + std::to_string(i);
        series.push_back(parse_series(text(a, key.c_str()), ring.field, t));
      }
      const Value norm = doc.contains("normalization") ? parse_value(text(doc, "normalization")) : Value(Rational(1));
      out.oracle = std::make_shared<ArcValuation>(ring, parse_polynomial(text(doc, "f"), ring), std::move(series), norm, t);
      if (doc.contains("extension")) {
        const Json& x = doc.at("extension");
        const bool unique = x.contains("unique") ? x.at("unique").get<bool>() : true;
        if (!unique) throw Error(Errc::Unsupported, "defect bookkeeping needs a unique extension");
        ExtensionData e;
        e.degree = positive_integer(x, "degree");
        if (x.contains("fres")) e.fres = positive_integer(x, "fres");
        out.extension = e;
      }
    } else if (out.kind == "monomial") {
      std::vector<Value> w = values_of(doc, "weights");
      if (doc.contains("generators")) {
        const std::string g = text(doc, "generators");
        GeneratorContext ctx;
        for (const auto& v : w) ctx = join(ctx, v.context());
        if (ctx.kind() != GeneratorContext::Kind::Rational && g != ctx.str())
          throw Error(Errc::ContextMismatch, "weights live in " + ctx.str() + ", document declares " + g);
      }
      out.oracle = std::make_shared<MonomialValuation>(ring, std::move(w));
    } else if (out.kind == "chain") {
      const Value base = doc.contains("base") ? parse_value(text(doc, "base")) : Value(Rational(1));
      std::vector<AugmentedChain::Step> steps;
      for (const Json& s : require(doc, "steps"))
        steps.push_back({parse_polynomial(text(s, "phi"), ring), parse_value(text(s, "gamma"))});
      out.oracle = std::make_shared<AugmentedChain>(ring, base, std::move(steps));
    } else {
      throw Error(Errc::Parse, "unknown oracle kind '" + out.kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
  return out;
}

Json to_json(const PerronTransform& t) {
  Json j{{"kind", t.kind == PerronTransform::Kind::A1 ? "A1" : "A6"}, {"m", t.m}, {"n", t.n}, {"matrix", t.matrix}};
  if (t.kind == PerronTransform::Kind::A1) j["c"] = t.c.str();
  return j;
}

PerronTransform transform_from_json(const Json& j, FieldSpec field) {
  PerronTransform t;
  const std::string kind = text(j, "kind");
  if (kind != "A1" && kind != "A6") throw Error(Errc::Parse, "unknown transform kind '" + kind + "'");
  t.kind = kind == "A1" ? PerronTransform::Kind::A1 : PerronTransform::Kind::A6;
  t.m = require(j, "m").get<int>();
  t.n = require(j, "n").get<int>();
  t.matrix = require(j, "matrix").get<IntMatrix>();
  t.c = t.kind == PerronTransform::Kind::A1 ? Scalar(field, parse_rational(text(j, "c"))) : Scalar(field, 0);
  t.validate();
  return t;
}

Json to_json(const SigmaData& s) {
  Json d = Json::array();
  for (const auto& e : s.d) d.push_back(exps(e));
  return Json{{"rho", s.rho.str()}, {"sigma", s.sigma},          {"d", d},
              {"lambda", s.lambda}, {"tau", s.tau},              {"det", s.det},
              {"lambda_holds", s.lambda_holds}, {"cramer_holds", s.cramer_holds}, {"d_negative", s.d_negative}};
}

Json to_json(const TraceStep& s) {
  Json j{{"kind", kind_name(s.kind)}};
  if (!s.elu.empty()) {
    Json e = Json::array();
    for (const auto& [i, d] : s.elu) e.push_back(Json{{"i", i}, {"monomial", exps(d)}});
    j["elu"] = e;
  }
  if (s.transform) j["transform"] = to_json(*s.transform);
  if (s.h) j["h"] = s.h->str();
  if (s.omega) j["omega"] = s.omega->str();
  if (s.beta) j["beta"] = s.beta->str();
  if (s.gamma) j["gamma"] = s.gamma->str();
  if (!s.ladder.empty()) j["ladder"] = values_json(s.ladder);
  if (s.sigma) j["sigma"] = to_json(*s.sigma);
  if (s.strict) j["strict"] = Json{{"monomial", exps(s.strict->monomial)}, {"lambda", s.strict->lambda}, {"f1", s.strict->f1.str()}};
  if (s.r) j["r"] = *s.r;
  j["f"] = s.f.str();
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

Json to_json(const Monomialization& mz) {
  Json t = Json::array();
  for (const auto& x : mz.transforms) t.push_back(to_json(x));
  return Json{{"version", kDocumentVersion}, {"kind", "monomialization"}, {"transforms", t},
              {"monomial", exps(mz.exponents)}, {"unit", mz.unit.str()}, {"weights", values_json(mz.weights)}};
}

Json to_json(const FamilyDecomposition& d) {
  Json f = Json::array();
  for (const auto& s : d.families) {
    Json e{{"degree", int_json(s.degree)}};
    if (s.next_limit_degree) e["next_limit_degree"] = int_json(*s.next_limit_degree);
    f.push_back(e);
  }
  return Json{{"families", f}};
}

FamilyDecomposition decomposition_from_json(const Json& j) {
  FamilyDecomposition d;
  try {
    for (const Json& f : require(j, "families")) {
      SimpleFamily s{positive_integer(f, "degree"), std::nullopt};
      if (f.contains("next_limit_degree")) s.next_limit_degree = positive_integer(f, "next_limit_degree");
      d.families.push_back(s);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
  d.validate();
  return d;
}

ReductionResult run_reduction(const Json& input, const TraceOptions& opt) {
  const OracleDocument doc = parse_oracle(input, opt.trunc);
  std::optional<ExtensionData> declared = doc.extension;
  return reduce(ReductionState::initial(doc.arc(), declared), opt.bounds);
}

Json trace_document(const Json& input, const TraceOptions& opt, const ReductionResult& res) {
  Json bounds{{"max_translations", opt.bounds.max_translations},
              {"max_perron_steps", opt.bounds.max_perron_steps},
              {"first_drop", opt.bounds.first_drop}};
  if (opt.trunc) bounds["trunc"] = opt.trunc->get_str();
  Json steps = Json::array();
  for (const auto& s : res.steps) steps.push_back(to_json(s));
  Json j{{"version", kDocumentVersion},
         {"kind", "trace"},
         {"input", input},
         {"bounds", bounds},
         {"initial", Json{{"f", res.f_initial.str()}, {"r", res.r_initial}}},
         {"steps", steps},
         {"status", res.status_str()},
         {"final", Json{{"f", res.f_final.str()}, {"r", res.r_final}}},
         {"lrm_steps", res.lrm_steps},
         {"translations", res.translations}};
  if (res.derivative_bound) {
    j["certificates"] = Json{{"derivative_bound", res.derivative_bound->str()},
                             {"translation_values", values_json(res.translation_values)},
                             {"derivative_bound_holds", res.derivative_bound_holds}};
  }
  if (!res.ladder.empty() || res.extension) {
    Json d;
    d["ladder"] = values_json(res.ladder);
    if (res.extension)
      d["extension"] = Json{{"degree", int_json(res.extension->degree)}, {"e", int_json(res.extension->e)},
                            {"fres", int_json(res.extension->fres)}, {"p", res.extension->p}};
    if (res.delta) d["delta"] = *res.delta;
    if (res.decomposition) {
      d["decomposition"] = to_json(*res.decomposition);
      d["jump_total"] = jump_total(*res.decomposition).get_str();
      if (res.extension && res.delta) d["consistent"] = consistency(*res.extension, *res.decomposition);
    }
    j["defect"] = d;
  }
  if (!res.diagnostic.empty()) j["diagnostic"] = res.diagnostic;
  return j;
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

ReplayReport replay_trace(const Json& trace) {
  ReplayReport rep;
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.detail = std::move(why);
    return rep;
  };
  try {
    check_version(trace);
    if (text(trace, "kind") != "trace") return fail("not a trace document");
    const Json& input = require(trace, "input");
    const Json& b = require(trace, "bounds");
    TraceOptions opt;
    opt.bounds.max_translations = require(b, "max_translations").get<int>();
    opt.bounds.max_perron_steps = require(b, "max_perron_steps").get<int>();
    opt.bounds.first_drop = require(b, "first_drop").get<bool>();
    if (b.contains("trunc")) opt.trunc = parse_rational(text(b, "trunc"));

    const Json rerun = trace_document(input, opt, run_reduction(input, opt));
    if (canonical(rerun) != canonical(trace)) return fail("re-running the input does not reproduce the trace bytes");

    const Ring ring = parse_ring(require(input, "ring"));
    Polynomial f = parse_polynomial(text(require(trace, "initial"), "f"), ring);
    Scalar c(ring.field, 0);
    std::size_t k = 0;
    for (const Json& s : require(trace, "steps")) {
      const std::string kind = text(s, "kind");
      if (s.contains("transform")) {
        const PerronTransform t = transform_from_json(s.at("transform"), ring.field);
        c = t.c;
        f = substitute(f, t);
      } else if (kind == "TRANSLATE-CHAR0" || kind == "TRANSLATE-DEFECTLESS") {
        f = translate_last(f, parse_polynomial(text(s, "h"), ring));
      } else if (kind == "STRICT-TRANSFORM") {
        const Json& st = require(s, "strict");
        const Polynomial f1 = parse_polynomial(text(st, "f1"), ring);
        const Polynomial unit = Polynomial::variable(ring.field, ring.m, ring.m - 1) + Polynomial::constant(ring.field, ring.m, c);
        const Polynomial mono = Polynomial::monomial(ring.field, parse_monomial(text(st, "monomial"), ring.m), Scalar(ring.field, 1));
        if (!(mono * unit.pow(require(st, "lambda").get<std::uint32_t>()) * f1 == f))
          return fail("strict transform factors do not reconstruct step " + std::to_string(k));
        f = f1;
      }
      if (f.str() != text(s, "f")) return fail("step " + std::to_string(k) + " (" + kind + ") replays to " + f.str());
      ++k;
    }
    if (f.str() != text(require(trace, "final"), "f")) return fail("final polynomial differs after replay: " + f.str());
  } catch (const Error& e) {
    return fail(e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(e.what());
  }
  return rep;
}

}  // namespace lrm
