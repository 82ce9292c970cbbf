#pragma once

#include <vector>

#include "lafed/rational.hpp"

namespace lafed {

using Vec = std::vector<Q>;
using Matrix = std::vector<Vec>;  // row major, all rows of equal length

struct Echelon {
  int rank = 0;
  std::vector<int> pivot_cols;
  std::vector<std::vector<Z>> rows;  // nonzero echelon rows, integer entries
};

// Fraction-free (Bareiss) row echelon form over the integers after clearing
// row denominators.
Echelon echelon(const Matrix& m, std::size_t cols);

int rank(const Matrix& m);
// Basis of {v : m v = 0}; `cols` is needed when m has no rows.
std::vector<Vec> kernel_basis(const Matrix& m, std::size_t cols);
std::vector<Vec> kernel_basis(const Matrix& m);

}  // namespace lafed
