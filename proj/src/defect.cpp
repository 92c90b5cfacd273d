#include "lrm/defect.hpp"

#include "lrm/error.hpp"

namespace lrm {

void ExtensionData::validate() const {
  if (degree <= 0 || e <= 0 || fres <= 0) throw Error(Errc::Precondition, "degree, e and f must be positive");
  if (p != 1) FieldSpec check(p);  // throws unless prime
}

unsigned long ostrowski(const ExtensionData& x) {
  x.validate();
  const Integer ef = x.e * x.fres;
  if (!mpz_divisible_p(x.degree.get_mpz_t(), ef.get_mpz_t()))
    throw Error(Errc::NotOstrowski, "e*f = " + ef.get_str() + " does not divide the degree " + x.degree.get_str());
  Integer q = x.degree / ef;
  unsigned long delta = 0;
  if (x.p == 1) {
    if (q != 1) throw Error(Errc::NotOstrowski, "degree/(e*f) = " + q.get_str() + " but p = 1");
    return 0;
  }
  while (q != 1) {
    if (!mpz_divisible_ui_p(q.get_mpz_t(), x.p))
      throw Error(Errc::NotOstrowski, "degree/(e*f) = " + Integer(x.degree / ef).get_str() + " is not a power of " +
                                          std::to_string(x.p));
    q /= x.p;
    ++delta;
  }
  return delta;
}

Integer splitting_group_order(const ExtensionData& x, unsigned long delta) {
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), x.p, delta);
  return x.e * x.fres * pd;
}

void FamilyDecomposition::validate() const {
  if (families.empty()) throw Error(Errc::Precondition, "a decomposition needs at least one family");
  for (std::size_t j = 0; j < families.size(); ++j) {
    const auto& fam = families[j];
    if (fam.degree <= 0) throw Error(Errc::Precondition, "family degrees must be positive");
    const bool last = j + 1 == families.size();
    if (last == fam.next_limit_degree.has_value())
      throw Error(Errc::Precondition, "every family except the last needs the degree of its limit key polynomial");
    if (fam.next_limit_degree && *fam.next_limit_degree <= 0)
      throw Error(Errc::Precondition, "limit key degrees must be positive");
  }
}

Rational jump_total(const FamilyDecomposition& d) {
  d.validate();
  Rational total = 1;
  for (std::size_t j = 0; j + 1 < d.families.size(); ++j) {
    const Rational s(*d.families[j].next_limit_degree, d.families[j].degree);
    if (s <= 1) throw Error(Errc::JumpNotGtOne, "jump " + to_string(s) + " after family " + std::to_string(j + 1));
    total *= s;
  }
  return total;
}

bool consistency(const ExtensionData& x, const FamilyDecomposition& d) {
  const unsigned long delta = ostrowski(x);
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), x.p, delta);
  return Rational(pd) == jump_total(d);
}

FamilyDecomposition decomposition_from_ladder(const BestApprox& ladder, const Integer& limit_degree) {
  FamilyDecomposition d;
  if (ladder.status == BestApprox::Status::NoMaxUpToBound) {
    d.families.push_back({Integer(1), limit_degree});
    d.families.push_back({limit_degree, std::nullopt});
  } else {
    d.families.push_back({Integer(1), std::nullopt});
  }
  return d;
}

ExtensionData extension_from_arc(const ArcValuation& oracle, const Integer& degree, int bound) {
  const auto e = lattice_index(oracle.realized_lattice(bound), oracle.base_lattice());
  if (!e) throw Error(Errc::Precondition, "realized value group has larger rank than the base group");
  const std::uint64_t ch = oracle.ring().field.characteristic();
  return ExtensionData{degree, *e, Integer(1), ch == 0 ? 1 : ch};
}

}  // namespace lrm
