#pragma once

#include <optional>
#include <vector>

#include "lrm/scalar.hpp"

namespace lrm {

using ZMatrix = std::vector<std::vector<Integer>>;  // row-major

struct ColumnHermite {
  ZMatrix h;  // M * u, column echelon form; columns >= rank are zero
  ZMatrix u;  // unimodular
  int rank = 0;
  std::vector<int> pivot_rows;
};

/// Column-style Hermite normal form of a rows x cols matrix.
ColumnHermite column_hermite(const ZMatrix& m, int rows, int cols);

/// Integer solution of M c = v, or nullopt. Among all solutions the one
/// reduced modulo the Hermite form of the kernel lattice is returned.
std::optional<std::vector<Integer>> solve_integer(const ZMatrix& m, int rows, int cols, const std::vector<Integer>& v);

/// Nonzero Smith invariants d_1 | d_2 | ... (all positive).
std::vector<Integer> smith_invariants(ZMatrix m, int rows, int cols);

}  // namespace lrm
