#pragma once

#include <optional>
#include <vector>

#include "czk/rational.hpp"

namespace czk {

// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

struct ExactSolution {
  std::vector<Rational> x;  // free variables set to zero
  std::size_t rank = 0;
  bool unique = false;
};

// Gauss-Jordan elimination of A x = b over Q. Returns nullopt when the system
// is inconsistent. Works for any shape (over- or under-determined).
std::optional<ExactSolution> solve_exact(RationalMatrix a, std::vector<Rational> b);

}  // namespace czk
