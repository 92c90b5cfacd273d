#include "lrm/scalar.hpp"

#include <cctype>
#include <ostream>

#include "lrm/error.hpp"

namespace lrm {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = trim(s.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den))
    throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
  Integer d = parse_integer(den);
  if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

FieldSpec::FieldSpec(std::uint64_t characteristic) : p_(characteristic) {
  if (p_ != 0 && !is_prime(p_))
    throw Error(Errc::Precondition, "characteristic " + std::to_string(p_) + " is not 0 or a prime");
}

Scalar::Scalar(FieldSpec field, long value) : field_(field), v_(value) { reduce(); }

Scalar::Scalar(FieldSpec field, const Rational& value) : field_(field), v_(value) { reduce(); }

void Scalar::reduce() {
  v_.canonicalize();
  const std::uint64_t p = field_.characteristic();
  if (p == 0) return;
  Integer pz(static_cast<unsigned long>(p));
  Integer den = v_.get_den();
  Integer num = v_.get_num();
  if (den != 1) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
      throw Error(Errc::DivisionByZero, "denominator " + den.get_str() + " vanishes in F_" + pz.get_str());
    num *= inv;
  }
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
  v_ = Rational(r);
}

void Scalar::check_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw Error(Errc::Precondition, "scalars from different fields");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  Scalar r = *this;
  if (field_.is_rational()) {
    r.v_ = 1 / v_;
    r.v_.canonicalize();
  } else {
    Integer pz(static_cast<unsigned long>(field_.characteristic()));
    Integer inv;
    Integer num = v_.get_num();
    mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    r.v_ = Rational(inv);
  }
  return r;
}

Scalar Scalar::pow(std::uint64_t k) const {
  Scalar result(field_, 1);
  Scalar base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    base *= base;
    k >>= 1u;
  }
  return result;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.v_ = -v_;
  r.reduce();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_field(o);
  v_ += o.v_;
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_field(o);
  v_ -= o.v_;
  reduce();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_field(o);
  v_ *= o.v_;
  reduce();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_field(o);
  return *this *= o.inverse();
}

std::string Scalar::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace lrm
