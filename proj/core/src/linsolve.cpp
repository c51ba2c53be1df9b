#include "czk/linsolve.hpp"

#include <stdexcept>

namespace czk {

std::optional<ExactSolution> solve_exact(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw std::invalid_argument("solve_exact: rhs length != rows");

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && a(piv, col) == 0) ++piv;
    if (piv == m) continue;
    if (piv != row) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(row, c));
      std::swap(b[piv], b[row]);
    }
    const Rational inv = 1 / a(row, col);
    for (std::size_t c = col; c < n; ++c) a(row, c) *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = col; c < n; ++c)
        if (a(row, c) != 0) a(r, c) -= f * a(row, c);
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (b[r] != 0) return std::nullopt;

  ExactSolution sol;
  sol.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r) sol.x[pivot_col[r]] = b[r];
  sol.rank = pivot_col.size();
  sol.unique = sol.rank == n;
  return sol;
}

}  // namespace czk
