#include "lrm/series.hpp"

#include <sstream>

#include "lrm/error.hpp"
#include "text.hpp"

namespace lrm {

namespace {

Truncation shift(const Truncation& t, const Rational& by) {
  if (!t) return std::nullopt;
  return Rational(*t + by);
}

bool below(const Rational& e, const Truncation& t) { return !t || e < *t; }

std::string exponent_str(const Rational& e) {
  if (e.get_den() == 1) return e.get_num().get_str();
  return "(" + e.get_str() + ")";
}

// Order used in the truncation rule for products: a zero series counts as
// its truncation, an exact zero as infinity (nullopt).
Truncation effective_order(const PuiseuxSeries& s) {
  SeriesOrder o = s.order();
  if (o.kind == SeriesOrder::Kind::Zero) return std::nullopt;
  return o.q;
}

Truncation add_orders(const Truncation& a, const Truncation& b) {
  if (!a || !b) return std::nullopt;
  return Rational(*a + *b);
}

}  // namespace

Truncation min_truncation(const Truncation& a, const Truncation& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

PuiseuxSeries::PuiseuxSeries(FieldSpec field, Truncation trunc) : field_(field), trunc_(std::move(trunc)) {}

PuiseuxSeries::PuiseuxSeries(FieldSpec field, const Terms& terms, Truncation trunc)
    : field_(field), terms_(terms), trunc_(std::move(trunc)) {
  normalize();
}

PuiseuxSeries PuiseuxSeries::term(const Scalar& c, const Rational& exponent, Truncation trunc) {
  PuiseuxSeries s(c.field(), std::move(trunc));
  if (!c.is_zero() && below(exponent, s.trunc_)) s.terms_.emplace(exponent, c);
  return s;
}

PuiseuxSeries PuiseuxSeries::constant(const Scalar& c, Truncation trunc) { return term(c, Rational(0), std::move(trunc)); }

void PuiseuxSeries::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero() || !below(it->first, trunc_))
      it = terms_.erase(it);
    else
      ++it;
  }
}

Integer PuiseuxSeries::ramification() const {
  Integer n = 1;
  auto fold = [&n](const Rational& q) {
    Integer d = q.get_den();
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  };
  for (const auto& [e, c] : terms_) fold(e);
  if (trunc_) fold(*trunc_);
  return n;
}

SeriesOrder PuiseuxSeries::order() const {
  if (!terms_.empty()) return {SeriesOrder::Kind::Finite, terms_.begin()->first};
  if (trunc_) return {SeriesOrder::Kind::Above, *trunc_};
  return {SeriesOrder::Kind::Zero, Rational(0)};
}

Scalar PuiseuxSeries::leading_coefficient() const {
  if (terms_.empty()) throw Error(Errc::Precondition, "leading coefficient of a series with no known term");
  return terms_.begin()->second;
}

Scalar PuiseuxSeries::coefficient(const Rational& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Scalar(field_) : it->second;
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational& t) const {
  PuiseuxSeries r = *this;
  r.trunc_ = min_truncation(trunc_, t);
  r.normalize();
  return r;
}

PuiseuxSeries PuiseuxSeries::operator-() const { return scaled(-Scalar(field_, 1)); }

PuiseuxSeries PuiseuxSeries::scaled(const Scalar& c) const {
  PuiseuxSeries r(field_, trunc_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (!(a.field_ == b.field_)) throw Error(Errc::Precondition, "series over different fields");
  PuiseuxSeries r(a.field_, min_truncation(a.trunc_, b.trunc_));
  r.terms_ = a.terms_;
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = r.terms_.emplace(e, c);
    if (!inserted) it->second += c;
  }
  r.normalize();
  return r;
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (!(a.field_ == b.field_)) throw Error(Errc::Precondition, "series over different fields");
  Truncation t = min_truncation(add_orders(a.trunc_, effective_order(b)), add_orders(b.trunc_, effective_order(a)));
  PuiseuxSeries r(a.field_, t);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Rational e = ea + eb;
      if (!below(e, t)) break;
      auto [it, inserted] = r.terms_.emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  r.normalize();
  return r;
}

PuiseuxSeries PuiseuxSeries::pow(std::uint64_t k) const {
  PuiseuxSeries result = constant(Scalar(field_, 1));
  PuiseuxSeries base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

PuiseuxSeries PuiseuxSeries::inverse(Truncation cap) const {
  if (terms_.empty()) throw Error(Errc::DivisionByZero, "inverse of a series with no known term");
  const Rational q = terms_.begin()->first;
  const Scalar c_inv = terms_.begin()->second.inverse();

  // s = c t^q (1 + u) with ord u > 0
  PuiseuxSeries u(field_, shift(trunc_, -q));
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    u.terms_.emplace(Rational(it->first - q), it->second * c_inv);

  Truncation precision = u.trunc_;
  if (!precision && !u.terms_.empty()) {
    if (!cap) throw Error(Errc::Precondition, "inverse of an exact multi-term series needs a precision cap");
    precision = cap;
  } else if (precision && cap) {
    precision = min_truncation(precision, cap);
  }
  u.trunc_ = precision;
  u.normalize();

  PuiseuxSeries sum = constant(Scalar(field_, 1), precision);
  PuiseuxSeries power = sum;
  PuiseuxSeries minus_u = -u;
  while (true) {
    power = power * minus_u;
    if (precision) power = power.truncated(*precision);
    if (power.terms_.empty()) break;
    sum = sum + power;
  }
  PuiseuxSeries r(field_, shift(sum.trunc_, -q));
  for (const auto& [e, v] : sum.terms_) r.terms_.emplace(Rational(e - q), v * c_inv);
  r.normalize();
  return r;
}

std::string PuiseuxSeries::str() const {
  std::ostringstream os;
  if (terms_.empty()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      os << "t^" << exponent_str(e) << "*" << c.str();
      first = false;
    }
  }
  if (trunc_) os << " | trunc " << trunc_->get_str();
  Integer n = ramification();
  if (n != 1) os << " | N " << n.get_str();
  return os.str();
}

PuiseuxSeries parse_series(std::string_view input, FieldSpec field, Truncation default_trunc) {
  auto parts = text::split(input, '|');
  Truncation trunc = default_trunc;
  std::optional<Integer> declared_n;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::string_view p = parts[i];
    if (p == "exact") {
      trunc = std::nullopt;
    } else if (p.rfind("trunc", 0) == 0) {
      trunc = parse_rational(p.substr(5));
    } else if (p.rfind("N", 0) == 0) {
      Rational n = parse_rational(p.substr(1));
      if (n.get_den() != 1 || n <= 0) throw Error(Errc::Parse, "N must be a positive integer");
      declared_n = n.get_num();
    } else {
      throw Error(Errc::Parse, "unknown series annotation '" + std::string(p) + "'");
    }
  }
  PuiseuxSeries s(field, trunc);
  if (parts[0] != "0") {
    for (const text::Term& term : text::parse_sum(parts[0])) {
      Rational e(0);
      for (const auto& [id, k] : term.powers) {
        if (id != "t") throw Error(Errc::Parse, "series literals use the single parameter t, got '" + id + "'");
        e += k;
      }
      if (e < 0) throw Error(Errc::Parse, "negative exponent in series literal");
      s = s + PuiseuxSeries::term(Scalar(field, term.coeff), e, trunc);
    }
  }
  if (declared_n) {
    Integer n = s.ramification();
    if (!mpz_divisible_p(declared_n->get_mpz_t(), n.get_mpz_t()))
      throw Error(Errc::Parse, "declared N does not cover the exponents of '" + std::string(input) + "'");
  }
  return s;
}

}  // namespace lrm
