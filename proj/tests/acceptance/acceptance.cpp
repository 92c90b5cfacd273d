// Acceptance checks: one PASS/FAIL line per criterion.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "lrm/document.hpp"
#include "lrm/error.hpp"
#include "lrm/perron.hpp"

using namespace lrm;

namespace {

const std::string kData = LRM_TEST_DATA;
const FieldSpec Q{};
const Ring Q2{2, Q};

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "lrm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

Json reduce_doc(const std::string& name) {
  const Json input = read_json_file(data(name));
  const TraceOptions opt;
  return trace_document(input, opt, run_reduction(input, opt));
}

Polynomial P(const char* s, const Ring& r = Q2) { return parse_polynomial(s, r); }

IntMatrix random_unimodular(std::mt19937_64& rng, int size, int steps) {
  IntMatrix a = identity_matrix(size);
  std::uniform_int_distribution<int> pick(0, size - 1);
  for (int s = 0; s < steps; ++s) {
    const int i = pick(rng), j = pick(rng);
    if (i != j)
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

Polynomial mono(const Exponents& e, FieldSpec f = Q) { return Polynomial::monomial(f, e, Scalar(f, 1)); }

std::vector<PerronTransform> a1_transforms(const Json& trace, FieldSpec field) {
  std::vector<PerronTransform> out;
  for (const Json& s : trace["steps"])
    if (s.contains("transform") && s["transform"]["kind"] == "A1") out.push_back(transform_from_json(s["transform"], field));
  return out;
}

// Cramer identity on `pairs` equal-value monomial pairs of an A1 transform.
bool cramer_pairs(const PerronTransform& t, std::mt19937_64& rng, int pairs) {
  const int n = t.n, s = n + 1;
  const IntMatrix inv = inverse_unimodular(t.matrix);
  std::uniform_int_distribution<int> small(-3, 3), extra(0, 4);
  for (int k = 0; k < pairs; ++k) {
    const int gamma = small(rng);
    std::vector<std::int64_t> d(s), e(s);
    for (int i = 0; i < s; ++i) {
      const std::int64_t diff = gamma * inv[n][i];
      d[i] = std::max<std::int64_t>(diff, 0) + extra(rng);
      e[i] = d[i] - diff;
    }
    if (!verify_cramer(t, d, e)) return false;
  }
  return true;
}

Outcome criterion1() {
  Outcome o;
  const CliRun r = cli_run({"reduce", "--curve", data("cusp.json")});
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  const Json t = Json::parse(r.out);
  o.require(t["status"] == "REDUCED-TO-SMOOTH", "status " + t["status"].dump());
  o.require(t["lrm_steps"] == 1, "lrm steps " + t["lrm_steps"].dump());
  const auto tau = a1_transforms(t, Q);
  o.require(tau.size() == 1 && tau[0].matrix == IntMatrix{{2, 1}, {3, 2}}, "matrix differs");
  o.require(!tau.empty() && determinant(tau[0].matrix) == 1, "det != 1");
  // hand substitution x1 = y1^2 (y2+1), x2 = y1^3 (y2+1)^2
  const Polynomial hand = P("x1^6") * P("x2 + 1").pow(3) * P("x2");
  o.require(!tau.empty() && substitute(P("x2^2 - x1^3"), tau[0]) == hand, "substitution differs from hand computation");
  const StrictTransform st = strict_transform(hand, Scalar(Q, 1), 1);
  o.require(st.monomial == Exponents{6, 0} && st.lambda == 3 && st.f1 == P("x2"), "strict transform differs");
  o.require(r.out == canonical(read_json_file(data("cusp.trace.golden.json"))), "trace differs from golden file");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const FieldSpec F2(2);
  const CliRun r = cli_run({"reduce", "--curve", data("cusp_char2.json")});
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  const Json t = Json::parse(r.out);
  o.require(t["status"] == "REDUCED-TO-SMOOTH" && t["lrm_steps"] == 1, "status " + t["status"].dump());
  const auto tau = a1_transforms(t, F2);
  o.require(tau.size() == 1 && tau[0].matrix == IntMatrix{{2, 1}, {3, 2}}, "matrix differs");
  o.require(t["final"]["f"] == "x2", "final f " + t["final"]["f"].dump());
  o.require(cli_run({"defect", "--degree", "2", "--e", "2", "--f", "1", "--p", "2"}).out == "delta=0\n", "defect output");
  const CliRun e = cli_run({"defect", "--degree", "2", "--p", "2", "--oracle", data("cusp_char2.json")});
  o.require(e.out == "e=2\ndelta=0\n", "lattice-index e: " + e.out);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const FieldSpec F2(2);
  const OracleDocument doc = parse_oracle(read_json_file(data("char2_binomial.json")));
  const ReductionState s = ReductionState::initial(doc.arc());
  bool obstruction = false;
  try {
    char0_translate(s);
  } catch (const Error& e) {
    obstruction = e.code() == Errc::BinomialObstruction;
  }
  o.require(obstruction, "char0-translate did not raise BINOMIAL-OBSTRUCTION");
  const TranslateResult tr = defectless_translate(s, 64);
  o.require(*tr.step.h == P("x1 + x1^2", Ring{2, F2}), "h' = " + tr.step.h->str());
  o.require(tr.step.gamma->str() == "5/2", "gamma = " + tr.step.gamma->str());
  o.require(!member(*tr.step.gamma, doc.arc().base_lattice()), "gamma lies in the value group");
  const ReductionResult res = reduce(s);
  o.require(res.status == ReductionResult::Status::ReducedToSmooth && res.r_final == 1, "run did not reach r = 1");

  const Json tac = reduce_doc("tacnode.json");
  bool seen = false;
  for (const Json& st : tac["steps"])
    if (st["kind"] == "TRANSLATE-CHAR0") {
      seen = true;
      const auto sigma = st["sigma"]["sigma"].get<std::vector<int>>();
      const int r = tac["initial"]["r"].get<int>();
      o.require(sigma.size() >= 2 && sigma[sigma.size() - 2] == r - 1, "sigma_{t-1} != r - 1 in " + st["sigma"].dump());
    }
  o.require(seen, "tacnode run has no char-0 translation");
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const auto& [p, name, dec] : {std::tuple{2, "defect_p2.json", "decomposition_p2.json"},
                                     std::tuple{3, "defect_p3.json", "decomposition_p3.json"}}) {
    const std::string ps = std::to_string(p);
    const CliRun r = cli_run({"reduce", "--curve", data(name)});
    o.require(r.code == 3, "p=" + ps + " exit " + std::to_string(r.code));
    const Json t = Json::parse(r.out);
    const auto ladder = t["defect"]["ladder"].get<std::vector<std::string>>();
    o.require(ladder.size() >= 3, "p=" + ps + " ladder too short");
    std::vector<Value> vals;
    for (const auto& v : ladder) vals.push_back(parse_value(v));
    o.require(vals[0] == Value(2), "p=" + ps + " ladder starts at " + ladder[0]);
    long pi = p;
    for (std::size_t i = 1; i < vals.size(); ++i, pi *= p) {
      o.require(vals[i - 1] < vals[i], "p=" + ps + " ladder not strictly increasing");
      o.require(vals[i] == Value(1 + pi), "p=" + ps + " ladder entry " + ladder[i]);
      o.require(vals[i].is_rational() && vals[i].coordinates(GeneratorContext{})[0].get_den() == 1, "ladder leaves Z");
    }
    o.require(cli_run({"defect", "--degree", ps, "--e", "1", "--f", "1", "--p", ps}).out == "delta=1\n", "p=" + ps + " delta");
    const CliRun d = cli_run({"defect", "--degree", ps, "--p", ps, "--oracle", data(name), "--decomposition", data(dec)});
    o.require(d.out == "e=1\ndelta=1\njump_total=" + ps + "\nconsistent=true\n", "p=" + ps + " defect: " + d.out);
    o.require(t["defect"]["jump_total"] == ps && t["defect"]["consistent"] == true, "p=" + ps + " trace decomposition");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(1101);
  std::uniform_int_distribution<int> ex(0, 8), co(-3, 3), pos(1, 4);
  int done = 0;
  for (int it = 0; done < 240; ++it) {
    const long d = (it % 2) ? 2 : 3;
    const auto ctx = GeneratorContext::quadratic(d);
    const int n = (it % 5 == 0) ? 1 : 2;
    std::vector<Value> w;
    if (n == 1) {
      w.emplace_back(ctx, Rational(pos(rng)), Rational(pos(rng)));
    } else {
      const int a1 = co(rng), b1 = co(rng), a2 = co(rng), b2 = co(rng);
      if (a1 * b2 - a2 * b1 == 0) continue;
      w.emplace_back(ctx, a1, b1);
      w.emplace_back(ctx, a2, b2);
      if (w[0].sign() <= 0 || w[1].sign() <= 0) continue;
    }
    Exponents m1(n), m2(n);
    for (auto& x : m1) x = ex(rng);
    for (auto& x : m2) x = ex(rng);
    const MonomialValuation mv(Ring{n, Q}, w);
    if (mv.monomial_value(m1) == mv.monomial_value(m2)) continue;
    if (mv.monomial_value(m2) < mv.monomial_value(m1)) std::swap(m1, m2);
    try {
      const PerronTransform t = build_a6_divide(m1, m2, w, Q, n);
      const Polynomial p1 = substitute(mono(m1), t), p2 = substitute(mono(m2), t);
      const Exponents e1 = p1.terms().begin()->first, e2 = p2.terms().begin()->first;
      bool ok = p1.terms().size() == 1 && p2.terms().size() == 1 && divides(e1, e2);
      if (ok) {
        Exponents q(n);
        for (int k = 0; k < n; ++k) q[k] = e2[k] - e1[k];
        ok = p1 * mono(q) == p2;
      }
      o.require(ok, "image of m1 does not divide image of m2 at instance " + std::to_string(done));
    } catch (const Error& e) {
      o.require(false, e.what());
    }
    ++done;
  }
  if (o.ok) o.detail = std::to_string(done) + " instances";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(77);
  int transforms = 0;
  for (const char* name : {"cusp.json", "cusp_char2.json", "char2_binomial.json", "tacnode.json", "case2.json"}) {
    const Json t = reduce_doc(name);
    const FieldSpec field = parse_ring(t["input"]["ring"]).field;
    for (const auto& tau : a1_transforms(t, field)) {
      o.require(cramer_pairs(tau, rng, 20), std::string("Cramer fails on a transform of ") + name);
      ++transforms;
    }
    for (const Json& s : t["steps"])
      if (s.contains("sigma")) o.require(s["sigma"]["cramer_holds"] == true, std::string("recorded Cramer flag false in ") + name);
  }
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + it % 2;
    PerronTransform t;
    t.kind = PerronTransform::Kind::A1;
    t.m = n + 1;
    t.n = n;
    t.matrix = random_unimodular(rng, n + 1, 4);
    t.c = Scalar(Q, 1);
    t.validate();
    o.require(cramer_pairs(t, rng, 20), "Cramer fails on random transform " + std::to_string(it));
    ++transforms;
  }
  if (o.ok) o.detail = std::to_string(transforms) + " transforms x 20 pairs";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const Ring Q3{3, Q};
  for (int it = 0; it < 200; ++it) {
    const Ring& r = (it % 2) ? Q2 : Q3;
    const auto f = random_poly(rng, r, 4, 3), g = random_poly(rng, r, 4, 3);
    PerronTransform t;
    if (it % 3 == 0) {
      t = PerronTransform::identity_a6(r.field, r.m, r.m - 1);
      t.matrix = random_unimodular(rng, r.m - 1, 3);
    } else {
      t.kind = PerronTransform::Kind::A1;
      t.m = r.m;
      t.n = r.m - 1;
      t.matrix = random_unimodular(rng, r.m, 3);
      t.c = Scalar(r.field, 1 + it % 4);
    }
    o.require(substitute(f * g, t) == substitute(f, t) * substitute(g, t), "substitute not multiplicative");
    o.require(substitute(f + g, t) == substitute(f, t) + substitute(g, t), "substitute not additive");

    // value conservation of monomials under A6 on independent weights
    if (r.m == 3 && it % 3 == 0) {
      const auto ctx = GeneratorContext::quadratic(2);
      std::uniform_int_distribution<int> pos(1, 5), ex(0, 6);
      const std::vector<Value> fresh{Value(ctx, pos(rng), 0), Value(ctx, 0, pos(rng))};
      std::vector<Value> old(2);
      for (int i = 0; i < 2; ++i) old[i] = fresh[0].scaled(t.matrix[i][0]) + fresh[1].scaled(t.matrix[i][1]);
      const auto nw = transformed_weights(t, old);
      const MonomialValuation before(Ring{2, Q}, old), after(Ring{2, Q}, nw);
      PerronTransform t2 = t;
      t2.m = 2;
      const Exponents e{static_cast<std::uint32_t>(ex(rng)), static_cast<std::uint32_t>(ex(rng))};
      const Exponents img = substitute(mono(e), t2).terms().begin()->first;
      o.require(before.monomial_value(e) == after.monomial_value(img), "monomial value not conserved");
    }

    auto h = random_poly(rng, r, 3, 3);
    if (!h.is_zero()) {
      const Scalar c(r.field, it % 3);
      h = h * translate_last(Polynomial::variable(r.field, r.m, r.m - 1).pow(it % 3), Polynomial::constant(r.field, r.m, c));
      const auto st = strict_transform(h, c);
      const Polynomial unit = Polynomial::variable(r.field, r.m, r.m - 1) + Polynomial::constant(r.field, r.m, c);
      o.require(mono(st.monomial, r.field) * unit.pow(st.lambda) * st.f1 == h, "strict transform does not reconstruct");
    }

    const auto f2 = random_poly(rng, Q2, 5, 4);
    const std::vector<PuiseuxSeries> axis{PuiseuxSeries(Q), parse_series("t", Q)};
    const auto ol = ord_last(f2);
    const auto so = evaluate_at_arc(f2, axis).order();
    o.require(ol ? so.q == Rational(*ol) : so.kind == SeriesOrder::Kind::Zero, "ord-last differs from arc order");
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const OracleDocument chain = parse_oracle(read_json_file(data("chain_cusp.json")));
  Json arc_doc = read_json_file(data("cusp.json"));
  arc_doc["normalization"] = "1/2";
  const OracleDocument arc = parse_oracle(arc_doc);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 5);
  int compared = 0;
  for (int it = 0; it < 300; ++it) {
    Polynomial g(Q, 2);
    for (int k = 0; k < 3; ++k) {
      g.add_term(Exponents{static_cast<std::uint32_t>(e(rng)), 0}, Scalar(Q, c(rng)));
      g.add_term(Exponents{static_cast<std::uint32_t>(e(rng)), 1}, Scalar(Q, c(rng)));
    }
    if (g.is_zero()) continue;
    const auto a = arc.oracle->value(g), b = chain.oracle->value(g);
    o.require(a.str() == b.str(), "disagree on " + g.str() + ": arc " + a.str() + ", chain " + b.str());
    ++compared;
  }
  const Polynomial f = P("x2^2 - x1^3");
  o.require(chain.oracle->value(f).str() == "3", "chain value of f is " + chain.oracle->value(f).str());
  o.require(arc.oracle->value(f).str() == "INFINITE", "arc value of f is " + arc.oracle->value(f).str());
  if (o.ok) o.detail = std::to_string(compared) + " polynomials; f: chain 3, arc INFINITE";
  return o;
}

Outcome criterion9() {
  Outcome o;
  int n = 0;
  for (const char* name : {"cusp.json", "cusp_char2.json", "char2_binomial.json", "tacnode.json", "defect_p2.json",
                           "defect_p3.json", "case2.json"}) {
    const CliRun r = cli_run({"reduce", "--curve", data(name)});
    const ReplayReport rep = replay_trace(Json::parse(r.out));
    o.require(rep.ok, std::string(name) + ": " + rep.detail);
    o.require(canonical(Json::parse(r.out)) == r.out, std::string(name) + ": output is not canonical");
    ++n;
  }
  if (o.ok) o.detail = std::to_string(n) + " traces";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"cusp reduction in characteristic 0", criterion1},
      {"defectless reduction in characteristic 2", criterion2},
      {"binomial failure and translation", criterion3},
      {"defect detection for p = 2, 3", criterion4},
      {"Perron divisibility suite", criterion5},
      {"Cramer identity suite", criterion6},
      {"homomorphism and conservation suites", criterion7},
      {"chain and arc oracles agree", criterion8},
      {"trace replay", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = e.what();
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
  }
  return failed ? 1 : 0;
}
