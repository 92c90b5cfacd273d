#include "text.hpp"

#include <cctype>

#include "lrm/error.hpp"

namespace lrm::text {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::Parse, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  Integer digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(s_.substr(start, pos_ - start)), 10);
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  // [-]digits[/digits]
  Rational number() {
    bool neg = false;
    while (true) {
      if (accept('-')) neg = !neg;
      else if (accept('+')) {}
      else break;
    }
    Integer num = digits();
    Integer den = 1;
    if (peek() == '/') {
      ++pos_;
      den = digits();
      if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(s_) + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  // exponent after '^': digits or '(' number ')'
  Rational exponent() {
    if (accept('(')) {
      Rational q = number();
      expect(')');
      return q;
    }
    return Rational(digits());
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

void parse_factor(Cursor& c, Term& term) {
  char ch = c.peek();
  if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+') {
    term.coeff *= c.number();
    return;
  }
  if (ch == '(') {
    c.expect('(');
    term.coeff *= c.number();
    c.expect(')');
    return;
  }
  std::string id = c.identifier();
  if (id == "sqrt") {
    c.expect('(');
    Integer d = c.digits();
    c.expect(')');
    term.powers.emplace_back("sqrt(" + d.get_str() + ")", Rational(1));
    return;
  }
  Rational e(1);
  if (c.accept('^')) e = c.exponent();
  term.powers.emplace_back(std::move(id), e);
}

}  // namespace

std::vector<Term> parse_sum(std::string_view input) {
  Cursor c(input);
  std::vector<Term> terms;
  if (c.done()) c.fail("empty expression");
  bool first = true;
  while (!c.done()) {
    Rational sign(1);
    bool had_sign = false;
    while (true) {
      if (c.accept('+')) had_sign = true;
      else if (c.accept('-')) { sign = -sign; had_sign = true; }
      else break;
    }
    if (!first && !had_sign) c.fail("expected '+' or '-'");
    Term term;
    term.coeff = sign;
    parse_factor(c, term);
    while (c.accept('*')) parse_factor(c, term);
    terms.push_back(std::move(term));
    first = false;
  }
  return terms;
}

}  // namespace lrm::text
