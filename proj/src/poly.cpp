#include "lrm/poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "lrm/error.hpp"
#include "text.hpp"

namespace lrm {

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  std::uint64_t da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  std::uint64_t db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial::Polynomial(FieldSpec field, int m) : field_(field), m_(m) {
  if (m < 1) throw Error(Errc::Precondition, "a polynomial ring needs at least one variable");
}

Polynomial Polynomial::constant(FieldSpec field, int m, const Scalar& c) {
  Polynomial p(field, m);
  p.add_term(Exponents(m, 0), c);
  return p;
}

Polynomial Polynomial::variable(FieldSpec field, int m, int index) {
  if (index < 0 || index >= m) throw Error(Errc::FrameMismatch, "variable index out of range");
  Exponents e(m, 0);
  e[index] = 1;
  return monomial(field, e, Scalar(field, 1));
}

Polynomial Polynomial::monomial(FieldSpec field, const Exponents& e, const Scalar& c) {
  Polynomial p(field, static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Scalar Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(field_) : it->second;
}

Scalar Polynomial::constant_term() const { return coefficient(Exponents(m_, 0)); }

std::uint32_t Polynomial::degree_in(int var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void Polynomial::add_term(const Exponents& e, const Scalar& c) {
  if (static_cast<int>(e.size()) != m_) throw Error(Errc::FrameMismatch, "monomial length differs from frame size");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (m_ != o.m_) throw Error(Errc::FrameMismatch, "polynomials live in different frames");
  if (!(field_ == o.field_)) throw Error(Errc::Precondition, "polynomials over different fields");
}

Polynomial Polynomial::operator-() const { return scaled(-Scalar(field_, 1)); }

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial r(a.field_, a.m_);
  Exponents e(a.m_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.m_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(field_, m_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
  Polynomial result = constant(field_, m_, Scalar(field_, 1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

std::string monomial_str(const Exponents& e) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << "*";
    os << "x" << (i + 1);
    if (e[i] != 1) os << "^" << e[i];
    first = false;
  }
  return first ? "1" : os.str();
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational v = c.value();
    bool negative = v < 0;
    if (negative) v = -v;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    bool unit_monomial = std::all_of(e.begin(), e.end(), [](std::uint32_t k) { return k == 0; });
    if (unit_monomial)
      os << v.get_str();
    else if (v == 1)
      os << monomial_str(e);
    else
      os << v.get_str() << "*" << monomial_str(e);
    first = false;
  }
  return os.str();
}

Ring parse_ring_header(std::string_view line) {
  Ring ring;
  bool have_m = false, have_char = false;
  auto words = text::split(text::trim(line), ' ');
  if (words.empty() || words[0] != "ring") throw Error(Errc::Parse, "ring header must start with 'ring'");
  for (std::size_t i = 1; i < words.size(); ++i) {
    std::string_view w = words[i];
    if (w.empty()) continue;
    auto eq = w.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::Parse, "malformed ring field '" + std::string(w) + "'");
    std::string_view key = w.substr(0, eq);
    Rational v = parse_rational(w.substr(eq + 1));
    if (v.get_den() != 1 || v < 0) throw Error(Errc::Parse, "ring fields must be natural numbers");
    if (key == "m") {
      ring.m = static_cast<int>(v.get_num().get_si());
      have_m = true;
    } else if (key == "char") {
      ring.field = FieldSpec(v.get_num().get_ui());
      have_char = true;
    } else {
      throw Error(Errc::Parse, "unknown ring field '" + std::string(key) + "'");
    }
  }
  if (!have_m || !have_char || ring.m < 1) throw Error(Errc::Parse, "ring header needs m>=1 and char");
  return ring;
}

namespace {

int variable_index(const std::string& id, int m) {
  if (id.size() < 2 || id[0] != 'x') throw Error(Errc::Parse, "unknown identifier '" + id + "'");
  for (std::size_t i = 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) throw Error(Errc::Parse, "unknown identifier '" + id + "'");
  int k = std::stoi(id.substr(1));
  if (k < 1 || k > m) throw Error(Errc::FrameMismatch, "variable " + id + " outside frame m=" + std::to_string(m));
  return k - 1;
}

std::uint32_t natural_exponent(const Rational& q) {
  if (q.get_den() != 1 || q < 0 || !q.get_num().fits_uint_p())
    throw Error(Errc::Parse, "polynomial exponents must be natural numbers");
  return static_cast<std::uint32_t>(q.get_num().get_ui());
}

}  // namespace

Polynomial parse_polynomial(std::string_view input, const Ring& ring) {
  Polynomial p(ring.field, ring.m);
  for (const text::Term& term : text::parse_sum(input)) {
    Exponents e(ring.m, 0);
    for (const auto& [id, k] : term.powers) e[variable_index(id, ring.m)] += natural_exponent(k);
    p.add_term(e, Scalar(ring.field, term.coeff));
  }
  return p;
}

Exponents parse_monomial(std::string_view input, int m) {
  auto terms = text::parse_sum(input);
  if (terms.size() != 1 || terms[0].coeff != 1) throw Error(Errc::Parse, "expected a monomial, got '" + std::string(input) + "'");
  Exponents e(m, 0);
  for (const auto& [id, k] : terms[0].powers) e[variable_index(id, m)] += natural_exponent(k);
  return e;
}

std::optional<std::uint32_t> ord_last(const Polynomial& f) {
  std::optional<std::uint32_t> best;
  const int m = f.nvars();
  for (const auto& [e, c] : f.terms()) {
    bool pure = true;
    for (int i = 0; i + 1 < m; ++i)
      if (e[i] != 0) pure = false;
    if (pure && (!best || e[m - 1] < *best)) best = e[m - 1];
  }
  return best;
}

Polynomial CoefficientExpansion::reconstruct() const {
  if (a.empty()) throw Error(Errc::Precondition, "empty expansion");
  const int m = a[0].nvars();
  Polynomial f(a[0].field(), m);
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    Exponents e(m, 0);
    e[m - 1] = i;
    f += a[i] * Polynomial::monomial(a[0].field(), e, Scalar(a[0].field(), 1));
  }
  return f;
}

CoefficientExpansion expand_last(const Polynomial& f) {
  const int m = f.nvars();
  CoefficientExpansion x;
  x.e = f.degree_in(m - 1);
  x.a.assign(x.e + 1, Polynomial(f.field(), m));
  for (const auto& [e, c] : f.terms()) {
    Exponents rest = e;
    rest[m - 1] = 0;
    x.a[e[m - 1]].add_term(rest, c);
  }
  const Polynomial& lead = x.a[x.e];
  x.monic = lead == Polynomial::constant(f.field(), m, Scalar(f.field(), 1));
  return x;
}

Polynomial compose(const Polynomial& f, std::span<const Polynomial> images) {
  const int m = f.nvars();
  if (static_cast<int>(images.size()) != m) throw Error(Errc::FrameMismatch, "compose needs one image per variable");
  const int target_m = images[0].nvars();
  std::vector<std::vector<Polynomial>> powers(m);
  auto power = [&](int var, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Polynomial::constant(f.field(), target_m, Scalar(f.field(), 1)));
    while (cache.size() <= k) cache.push_back(cache.back() * images[var]);
    return cache[k];
  };
  Polynomial r(f.field(), target_m);
  for (const auto& [e, c] : f.terms()) {
    Polynomial t = Polynomial::constant(f.field(), target_m, c);
    for (int i = 0; i < m; ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    r += t;
  }
  return r;
}

Polynomial translate_last(const Polynomial& f, const Polynomial& h) {
  const int m = f.nvars();
  std::vector<Polynomial> images;
  for (int i = 0; i < m; ++i) images.push_back(Polynomial::variable(f.field(), m, i));
  images[m - 1] += h;
  return compose(f, images);
}

namespace {

// Coefficients of (y + c)^k, low degree first, by repeated squaring.
std::vector<Scalar> binomial_row(const Scalar& c, std::uint64_t k) {
  const FieldSpec field = c.field();
  auto mul = [&field](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> r(a.size() + b.size() - 1, Scalar(field));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  std::vector<Scalar> result{Scalar(field, 1)};
  std::vector<Scalar> base{c, Scalar(field, 1)};
  while (k > 0) {
    if (k & 1u) result = mul(result, base);
    k >>= 1u;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

std::uint32_t checked_exponent(std::int64_t v) {
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max())
    throw Error(Errc::StepBoundExceeded, "exponent overflow during substitution");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

Polynomial substitute(const Polynomial& f, const PerronTransform& tau) {
  if (tau.m != f.nvars()) throw Error(Errc::FrameMismatch, "transform frame differs from polynomial frame");
  tau.validate();
  const int m = f.nvars();
  const int s = tau.size();
  const int new_cols = tau.n;  // columns that are new variables
  std::map<std::int64_t, std::vector<Scalar>> binomials;
  Polynomial r(f.field(), m);
  for (const auto& [e, coeff] : f.terms()) {
    Exponents out = e;
    for (int k = 0; k < s; ++k) out[tau.variable(k)] = 0;
    for (int j = 0; j < new_cols; ++j) {
      std::int64_t sum = 0;
      for (int i = 0; i < s; ++i) sum += tau.matrix[i][j] * static_cast<std::int64_t>(e[tau.variable(i)]);
      out[tau.variable(j)] = checked_exponent(sum);
    }
    if (tau.kind == PerronTransform::Kind::A6) {
      r.add_term(out, coeff);
      continue;
    }
    std::int64_t lambda = 0;
    for (int i = 0; i < s; ++i) lambda += tau.matrix[i][tau.n] * static_cast<std::int64_t>(e[tau.variable(i)]);
    auto it = binomials.find(lambda);
    if (it == binomials.end()) it = binomials.emplace(lambda, binomial_row(tau.c, checked_exponent(lambda))).first;
    for (std::size_t k = 0; k < it->second.size(); ++k) {
      out[m - 1] = static_cast<std::uint32_t>(k);
      r.add_term(out, coeff * it->second[k]);
    }
  }
  return r;
}

std::optional<Polynomial> divide_linear_last(const Polynomial& g, const Scalar& c) {
  const int m = g.nvars();
  CoefficientExpansion x = expand_last(g);
  if (x.e == 0) {
    if (g.is_zero()) return g;
    return std::nullopt;
  }
  std::vector<Polynomial> q(x.e, Polynomial(g.field(), m));
  q[x.e - 1] = x.a[x.e];
  for (std::uint32_t j = x.e - 1; j >= 1; --j) q[j - 1] = x.a[j] - q[j].scaled(c);
  Polynomial rem = x.a[0] - q[0].scaled(c);
  if (!rem.is_zero()) return std::nullopt;
  CoefficientExpansion qx;
  qx.e = x.e - 1;
  qx.a = std::move(q);
  return qx.reconstruct();
}

StrictTransform strict_transform(const Polynomial& g, const Scalar& c, int exceptional) {
  if (g.is_zero()) throw Error(Errc::Precondition, "strict transform of zero");
  const int m = g.nvars();
  if (exceptional < 0 || exceptional > m) exceptional = m;
  StrictTransform st{Exponents(m, 0), 0, Polynomial(g.field(), m)};
  for (int i = 0; i < exceptional; ++i) st.monomial[i] = std::numeric_limits<std::uint32_t>::max();
  for (const auto& [e, v] : g.terms())
    for (int i = 0; i < exceptional; ++i) st.monomial[i] = std::min(st.monomial[i], e[i]);
  for (const auto& [e, v] : g.terms()) {
    Exponents q = e;
    for (int i = 0; i < m; ++i) q[i] -= st.monomial[i];
    st.f1.add_term(q, v);
  }
  if (!c.is_zero()) {
    while (auto q = divide_linear_last(st.f1, c)) {
      if (q->is_zero()) break;
      st.f1 = std::move(*q);
      ++st.lambda;
    }
  }
  return st;
}

Division divide_monic_last(const Polynomial& g, const Polynomial& f) {
  const int m = g.nvars();
  if (f.nvars() != m) throw Error(Errc::FrameMismatch, "division across frames");
  CoefficientExpansion fx = expand_last(f);
  if (!fx.monic) throw Error(Errc::Precondition, "divisor is not monic in the last variable");
  Division d{Polynomial(g.field(), m), g};
  while (!d.remainder.is_zero()) {
    const std::uint32_t deg = d.remainder.degree_in(m - 1);
    if (deg < fx.e) break;
    Polynomial lead(g.field(), m);
    for (const auto& [e, c] : d.remainder.terms())
      if (e[m - 1] == deg) {
        Exponents s = e;
        s[m - 1] = deg - fx.e;
        lead.add_term(s, c);
      }
    d.quotient += lead;
    d.remainder -= lead * f;
  }
  return d;
}

Polynomial derivative(const Polynomial& f, int var) {
  Polynomial r(f.field(), f.nvars());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    r.add_term(d, c * Scalar(f.field(), static_cast<long>(e[var])));
  }
  return r;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

PuiseuxSeries evaluate_at_arc(const Polynomial& f, std::span<const PuiseuxSeries> arc) {
  const int m = f.nvars();
  if (static_cast<int>(arc.size()) != m) throw Error(Errc::FrameMismatch, "arc length differs from frame size");
  std::vector<std::vector<PuiseuxSeries>> powers(m);
  auto power = [&](int var, std::uint32_t k) -> const PuiseuxSeries& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(PuiseuxSeries::constant(Scalar(f.field(), 1)));
    while (cache.size() <= k) cache.push_back(cache.back() * arc[var]);
    return cache[k];
  };
  PuiseuxSeries sum(f.field());
  for (const auto& [e, c] : f.terms()) {
    PuiseuxSeries t = PuiseuxSeries::constant(c);
    for (int i = 0; i < m; ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    sum = sum + t;
  }
  return sum;
}

}  // namespace lrm
