#include "lrm/value.hpp"

#include <ostream>
#include <sstream>

#include "lrm/error.hpp"
#include "lrm/intmat.hpp"
#include "text.hpp"

namespace lrm {

GeneratorContext GeneratorContext::quadratic(const Integer& d) {
  if (d <= 0 || mpz_perfect_square_p(d.get_mpz_t()))
    throw Error(Errc::Precondition, "sqrt(" + d.get_str() + ") needs a positive non-square radicand");
  GeneratorContext c;
  c.kind_ = Kind::Quadratic;
  c.d_ = d;
  return c;
}

std::string GeneratorContext::str() const {
  return kind_ == Kind::Rational ? "RATIONAL" : "QUADRATIC(" + d_.get_str() + ")";
}

GeneratorContext join(const GeneratorContext& a, const GeneratorContext& b) {
  if (a.kind() == GeneratorContext::Kind::Rational) return b;
  if (b.kind() == GeneratorContext::Kind::Rational) return a;
  if (a.d() != b.d()) throw Error(Errc::ContextMismatch, a.str() + " vs " + b.str());
  return a;
}

Value::Value(const GeneratorContext& ctx, const Rational& a, const Rational& b) : ctx_(ctx), a_(a), b_(b) {
  if (ctx.kind() == GeneratorContext::Kind::Rational && b != 0)
    throw Error(Errc::ContextMismatch, "sqrt part in a rational context");
}

std::vector<Rational> Value::coordinates(const GeneratorContext& ctx) const {
  Value v = in_context(ctx);
  if (ctx.dimension() == 1) return {v.a_};
  return {v.a_, v.b_};
}

Value Value::in_context(const GeneratorContext& ctx) const {
  if (join(ctx_, ctx) != ctx) throw Error(Errc::ContextMismatch, ctx_.str() + " does not embed in " + ctx.str());
  Value v = *this;
  v.ctx_ = ctx;
  return v;
}

int Value::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with d*b^2 (never equal, d is not a square)
  Rational lhs = a_ * a_, rhs = Rational(ctx_.d()) * b_ * b_;
  return lhs > rhs ? sa : sb;
}

Value Value::operator-() const {
  Value v = *this;
  v.a_ = -a_;
  v.b_ = -b_;
  return v;
}

Value& Value::operator+=(const Value& o) {
  ctx_ = join(ctx_, o.ctx_);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

Value& Value::operator-=(const Value& o) { return *this += -o; }

Value Value::scaled(const Rational& q) const {
  Value v = *this;
  v.a_ *= q;
  v.b_ *= q;
  return v;
}

std::string Value::str() const {
  if (b_ == 0) return to_string(a_);
  const std::string root = "sqrt(" + ctx_.d().get_str() + ")";
  std::string s;
  if (a_ != 0) s = to_string(a_);
  Rational b = b_;
  if (!s.empty()) {
    s += b < 0 ? " - " : " + ";
    b = abs(b);
  }
  if (b == 1) return s + root;
  if (b == -1) return s + "-" + root;
  return s + to_string(b) + "*" + root;
}

Cmp cmp(const Value& v, const Value& w) {
  const int s = (v - w).sign();
  return s < 0 ? Cmp::LT : (s > 0 ? Cmp::GT : Cmp::EQ);
}

bool operator==(const Value& v, const Value& w) { return cmp(v, w) == Cmp::EQ; }
bool operator<(const Value& v, const Value& w) { return cmp(v, w) == Cmp::LT; }

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

Value parse_value(std::string_view input) {
  std::vector<text::Term> terms = text::parse_sum(input);
  GeneratorContext ctx;
  Rational a = 0, b = 0;
  for (const auto& t : terms) {
    if (t.powers.empty()) {
      a += t.coeff;
      continue;
    }
    const auto& [id, exp] = t.powers.front();
    if (t.powers.size() != 1 || exp != 1 || id.rfind("sqrt(", 0) != 0)
      throw Error(Errc::Parse, "bad value literal '" + std::string(input) + "'");
    Integer d(id.substr(5, id.size() - 6));
    ctx = join(ctx, GeneratorContext::quadratic(d));
    b += t.coeff;
  }
  return Value(ctx, a, b);
}

namespace {

GeneratorContext common_context(const std::vector<Value>& vs) {
  GeneratorContext ctx;
  for (const auto& v : vs) ctx = join(ctx, v.context());
  return ctx;
}

// Integer coordinate matrix (dimension x count) after clearing denominators.
ZMatrix integer_columns(const std::vector<Value>& vs, const GeneratorContext& ctx) {
  Integer den = 1;
  for (const auto& v : vs)
    for (const auto& q : v.coordinates(ctx)) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  const int dim = ctx.dimension();
  ZMatrix m(dim, std::vector<Integer>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    auto c = vs[j].coordinates(ctx);
    for (int i = 0; i < dim; ++i) {
      Rational x = c[i] * den;
      m[i][j] = x.get_num();
    }
  }
  return m;
}

Integer invariant_product(const ZMatrix& m, int rows, int cols, int& rank) {
  auto inv = smith_invariants(m, rows, cols);
  rank = static_cast<int>(inv.size());
  Integer p = 1;
  for (const auto& x : inv) p *= x;
  return p;
}

}  // namespace

std::optional<std::vector<Integer>> member(const Value& v, const ValueLattice& lattice) {
  if (lattice.generators.empty()) throw Error(Errc::Precondition, "empty lattice");
  std::vector<Value> all = lattice.generators;
  all.push_back(v);
  const GeneratorContext ctx = common_context(all);
  ZMatrix m = integer_columns(all, ctx);
  const int k = static_cast<int>(lattice.generators.size());
  std::vector<Integer> target(ctx.dimension());
  for (int i = 0; i < ctx.dimension(); ++i) {
    target[i] = m[i][k];
    m[i].pop_back();
  }
  return solve_integer(m, ctx.dimension(), k, target);
}

int lattice_rank(const ValueLattice& lattice) {
  const GeneratorContext ctx = common_context(lattice.generators);
  int rank = 0;
  invariant_product(integer_columns(lattice.generators, ctx), ctx.dimension(),
                    static_cast<int>(lattice.generators.size()), rank);
  return rank;
}

std::optional<Integer> lattice_index(const ValueLattice& big, const ValueLattice& small) {
  if (big.generators.empty() || small.generators.empty()) throw Error(Errc::Precondition, "empty lattice");
  for (const auto& g : small.generators)
    if (!member(g, big)) throw Error(Errc::NotASubgroup, g.str() + " is not in the larger lattice");
  std::vector<Value> all = big.generators;
  all.insert(all.end(), small.generators.begin(), small.generators.end());
  const GeneratorContext ctx = common_context(all);
  ZMatrix m = integer_columns(all, ctx);
  const int nb = static_cast<int>(big.generators.size());
  const int ns = static_cast<int>(small.generators.size());
  ZMatrix mb(ctx.dimension()), ms(ctx.dimension());
  for (int i = 0; i < ctx.dimension(); ++i) {
    mb[i].assign(m[i].begin(), m[i].begin() + nb);
    ms[i].assign(m[i].begin() + nb, m[i].end());
  }
  // Both lattices share their saturation, so the index is a ratio of
  // determinantal divisors.
  int rb = 0, rs = 0;
  const Integer pb = invariant_product(mb, ctx.dimension(), nb, rb);
  const Integer ps = invariant_product(ms, ctx.dimension(), ns, rs);
  if (rb != rs) return std::nullopt;
  return Integer(ps / pb);
}

std::vector<Integer> rational_relation(const std::vector<Value>& values) {
  if (values.size() < 2) throw Error(Errc::Precondition, "need at least two values");
  const GeneratorContext ctx = common_context(values);
  const int k = static_cast<int>(values.size());
  ColumnHermite ch = column_hermite(integer_columns(values, ctx), ctx.dimension(), k);
  const int kernel = k - ch.rank;
  if (kernel == 0) throw Error(Errc::NoRelation, "values are rationally independent");
  if (kernel > 1) throw Error(Errc::Ambiguous, "relation space has dimension " + std::to_string(kernel));
  std::vector<Integer> rel(k);
  for (int i = 0; i < k; ++i) rel[i] = ch.u[i][ch.rank];
  if (rel.back() == 0) throw Error(Errc::NoRelation, "last value is independent of the others");
  if (rel.back() > 0)
    for (auto& x : rel) x = -x;
  return rel;
}

}  // namespace lrm
