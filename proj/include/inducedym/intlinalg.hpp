#pragma once

#include "inducedym/numeric.hpp"

#include <vector>

namespace inducedym {

using BigMatrix = std::vector<std::vector<BigInt>>;  // row-major

// Column echelon form A*V = [H | 0] with V unimodular.
struct ColumnEchelon {
  BigMatrix h;                      // rows x cols, first `rank` columns nonzero
  BigMatrix v;                      // cols x cols
  std::vector<std::size_t> pivot_rows;  // pivot row of each of the first rank columns
  std::size_t rank = 0;
};
ColumnEchelon column_echelon(const BigMatrix& a);

// Row Hermite normal form: positive pivots, entries above each pivot reduced into (-p/2, p/2].
struct RowHermite {
  BigMatrix rows;
  std::vector<std::size_t> pivots;
};
RowHermite row_hermite(BigMatrix rows);

}  // namespace inducedym
