// Internal: tokenizer shared by the polynomial, series and value literal parsers.
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lrm/scalar.hpp"

namespace lrm::text {

struct Term {
  Rational coeff{1};
  std::vector<std::pair<std::string, Rational>> powers;  // identifier, exponent
};

/// Parses `[+-] term ([+-] term)*` where a term is a `*`-separated product of
/// numbers (`3`, `1/2`, `-1`) and powers (`x2`, `x2^3`, `t^(3/2)`,
/// `sqrt(2)`). Identifiers are returned verbatim, `sqrt(d)` as "sqrt(d)".
std::vector<Term> parse_sum(std::string_view input);

std::string_view trim(std::string_view s);

/// Splits on a single character, trimming each piece.
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace lrm::text
