#include <random>

#include "doctest.h"
#include "lrm/defect.hpp"
#include "lrm/error.hpp"

using namespace lrm;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

ExtensionData ext(long degree, long e, long f, std::uint64_t p) { return {Integer(degree), Integer(e), Integer(f), p}; }

FamilyDecomposition two_families(long first, long limit) {
  return {{{Integer(first), Integer(limit)}, {Integer(limit), std::nullopt}}};
}

ArcValuation arc_oracle(std::uint64_t p, const char* f, const char* x1, const char* x2) {
  const Ring r{2, FieldSpec(p)};
  std::vector<PuiseuxSeries> a{parse_series(x1, r.field, Rational(40)), parse_series(x2, r.field, Rational(40))};
  return ArcValuation(r, parse_polynomial(f, r), a, Value(1), Rational(40));
}

}  // namespace

TEST_CASE("ostrowski") {
  CHECK(ostrowski(ext(2, 2, 1, 2)) == 0);
  CHECK(ostrowski(ext(3, 1, 1, 3)) == 1);
  CHECK(ostrowski(ext(8, 1, 2, 2)) == 2);
  CHECK(ostrowski(ext(5, 5, 1, 1)) == 0);
  CHECK(code_of([] { ostrowski(ext(6, 2, 1, 2)); }) == Errc::NotOstrowski);
  CHECK(code_of([] { ostrowski(ext(4, 3, 1, 2)); }) == Errc::NotOstrowski);
  CHECK(code_of([] { ostrowski(ext(2, 1, 1, 1)); }) == Errc::NotOstrowski);
  CHECK(code_of([] { ostrowski(ext(2, 1, 1, 4)); }) == Errc::Precondition);
}

TEST_CASE("jump total") {
  CHECK(jump_total({{{Integer(1), std::nullopt}}}) == 1);
  CHECK(jump_total(two_families(1, 2)) == 2);
  CHECK(jump_total(two_families(1, 3)) == 3);
  CHECK(code_of([] { jump_total(two_families(2, 2)); }) == Errc::JumpNotGtOne);
  CHECK(code_of([] { jump_total({{{Integer(1), Integer(2)}}}); }) == Errc::Precondition);
}

TEST_CASE("consistency") {
  CHECK(consistency(ext(2, 1, 1, 2), two_families(1, 2)));
  CHECK(consistency(ext(2, 2, 1, 2), {{{Integer(1), std::nullopt}}}));
  CHECK(!consistency(ext(2, 2, 1, 2), two_families(1, 2)));
  CHECK(!consistency(ext(9, 1, 1, 3), two_families(1, 3)));
}

TEST_CASE("extension data from arc oracles") {
  const auto cusp = arc_oracle(2, "x2^2 + x1^3", "t^2", "t^3");
  const auto x = extension_from_arc(cusp, 2, 64);
  CHECK(x.e == 2);
  CHECK(ostrowski(x) == 0);
  CHECK(consistency(x, decomposition_from_ladder(cusp.best_approx(64), 2)));

  for (std::uint64_t p : {2u, 3u}) {
    const auto as = p == 2 ? arc_oracle(2, "x2^2 - x1*x2 - x1^3", "t", "t^2 + t^3 + t^5 + t^9 + t^17 + t^33")
                           : arc_oracle(3, "x2^3 - x1^2*x2 - x1^4", "t", "-t^2 - t^4 - t^10 - t^28");
    const auto d = extension_from_arc(as, Integer(static_cast<unsigned long>(p)), 64);
    CHECK(d.e == 1);
    CHECK(ostrowski(d) == 1);
    const auto fam = decomposition_from_ladder(as.best_approx(64), Integer(static_cast<unsigned long>(p)));
    CHECK(jump_total(fam) == Rational(static_cast<unsigned long>(p)));
    CHECK(consistency(d, fam));
  }
}

TEST_CASE("ostrowski is multiplicative over towers") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> small(1, 4), dd(0, 3), pick(0, 2);
  const std::uint64_t primes[] = {2, 3, 5};
  for (int it = 0; it < 200; ++it) {
    const std::uint64_t p = primes[pick(rng)];
    auto make = [&] {
      ExtensionData x{Integer(1), Integer(small(rng)), Integer(small(rng)), p};
      const unsigned long delta = static_cast<unsigned long>(dd(rng));
      x.degree = splitting_group_order(x, delta);
      return std::pair{x, delta};
    };
    auto [a, da] = make();
    auto [b, db] = make();
    CHECK(ostrowski(a) == da);
    CHECK(ostrowski(b) == db);
    const ExtensionData tower{a.degree * b.degree, a.e * b.e, a.fres * b.fres, p};
    CHECK(ostrowski(tower) == da + db);
    CHECK(splitting_group_order(tower, da + db) == tower.degree);
  }
}
