#pragma once

#include <optional>
#include <vector>

#include "pv/matrix.hpp"

namespace pv {

// Row-reduced form with the pivot columns; pivots chosen as the first nonzero
// entry scanning rows top-down, columns left to right.
struct RowEchelon {
  RatMatrix rref;
  std::vector<std::size_t> pivot_cols;
};

RowEchelon row_reduce(RatMatrix m);
std::size_t rank(const RatMatrix& m);
Rational determinant(RatMatrix m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

// Solve m x = b for square invertible m; b may have entries in any ring that
// supports scaling by rationals.
template <class T>
std::vector<T> solve_with_inverse(const RatMatrix& inv, const std::vector<T>& b) {
  std::vector<T> x(inv.rows());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j)
      if (!is_zero(inv(i, j)) && !is_zero(b[j])) x[i] += b[j] * inv(i, j);
  return x;
}

// True if the row spaces of a and b coincide.
bool same_row_space(const RatMatrix& a, const RatMatrix& b);

}  // namespace pv
