#pragma once

#include <cstddef>
#include <vector>

#include "skelpot/rational.hpp"

namespace skelpot {

// Dense row-major rational matrix, just enough for desk-scale exact solves.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Solves A x = b exactly. Each row of [A | b] is scaled to integers and
// reduced with fraction-free (Bareiss) elimination; row pivoting only picks a
// nonzero pivot. Throws Error if A is singular.
std::vector<Rational> bareiss_solve(const RationalMatrix& a, const std::vector<Rational>& b);

// Exact determinant, by the same elimination.
Rational determinant(const RationalMatrix& a);

}  // namespace skelpot
