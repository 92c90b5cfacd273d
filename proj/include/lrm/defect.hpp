#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrm/oracle.hpp"
#include "lrm/scalar.hpp"

namespace lrm {

/// Degree data of a finite extension K*/K with a unique extension of nu.
struct ExtensionData {
  Integer degree{1};
  Integer e{1};     // ramification index [Phi_nu* : Phi_nu]
  Integer fres{1};  // residue degree
  std::uint64_t p = 1;  // residue characteristic, 1 for characteristic 0

  void validate() const;
};

/// delta with degree = e * fres * p^delta; throws NOT-OSTROWSKI otherwise.
unsigned long ostrowski(const ExtensionData& x);

/// |G^s| = e * fres * p^delta; for a unique extension this equals the degree.
Integer splitting_group_order(const ExtensionData& x, unsigned long delta);

/// One simple family of key polynomials: the common degree of its members
/// and, except for the last family, the degree of the limit key polynomial
/// that opens the next family.
struct SimpleFamily {
  Integer degree;
  std::optional<Integer> next_limit_degree;
};

struct FamilyDecomposition {
  std::vector<SimpleFamily> families;

  void validate() const;
};

/// Product of the jumps deg phi_1^{(j+1)} / deg phi^{(j)}; each must exceed 1.
Rational jump_total(const FamilyDecomposition& d);

/// p^delta == jump_total(d).
bool consistency(const ExtensionData& x, const FamilyDecomposition& d);

/// Decomposition read off an arc's best-approximation ladder: one family of
/// degree-1 keys, and when the ladder has no maximum a second family opened
/// by a limit key polynomial of degree `limit_degree` (the x_m-degree of f).
FamilyDecomposition decomposition_from_ladder(const BestApprox& ladder, const Integer& limit_degree);

/// Extension data for an arc oracle: e from lattice-index on the realized
/// value lattices, fres = 1, p from the field.
ExtensionData extension_from_arc(const ArcValuation& oracle, const Integer& degree, int bound);

}  // namespace lrm
