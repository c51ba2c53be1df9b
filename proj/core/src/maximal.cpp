#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "czk/fft.hpp"
#include "czk/numerics.hpp"

namespace czk {

namespace {

GridField maximal_once(const GridField& f) {
  const Grid& grid = f.grid;
  const int n = grid.dim(), g = grid.points_per_axis();
  const double h = grid.spacing();

  // Radii h 2^k until one ball covers the whole box.
  const double diameter = 2.0 * grid.half_extent() * std::sqrt(static_cast<double>(n));
  std::vector<double> radii;
  for (double r = h;; r *= 2.0) {
    radii.push_back(r);
    if (r >= diameter) break;
  }
  cvec mag(grid.size()), ones(grid.size(), 1.0);
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(f.samples[i]);
  std::vector<double> best(grid.size());
  for (std::size_t i = 0; i < mag.size(); ++i) best[i] = mag[i].real();  // r = 0

  // One radius at a time, padded only as far as that ball reaches.
  for (double r : radii) {
    const int hw = std::min(g - 1, static_cast<int>(std::floor(r / h * (1.0 + 1e-12))));
    const int side = 2 * hw + 1;
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(side);
    cvec w(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t t = idx;
      double r2 = 0.0;
      for (int d = n - 1; d >= 0; --d) {
        const int k = static_cast<int>(t % side) - hw;
        t /= side;
        r2 += static_cast<double>(k) * k;
      }
      // closed ball, with a relative guard for nodes exactly on the sphere
      if (std::sqrt(r2) * h <= r * (1.0 + 1e-12)) w[idx] = 1.0;
    }
    const std::vector<cvec> ball{std::move(w)};
    const auto sums = convolve_same(mag, n, g, ball, hw);
    const auto counts = convolve_same(ones, n, g, ball, hw);
    for (std::size_t i = 0; i < best.size(); ++i) {
      const double c = std::round(counts[0][i].real());
      if (c < 1.0) continue;
      best[i] = std::max(best[i], std::max(0.0, sums[0][i].real()) / c);
    }
  }

  GridField out(grid);
  for (std::size_t i = 0; i < best.size(); ++i) out.samples[i] = best[i];
  return out;
}

}  // namespace

GridField hl_maximal(const GridField& f, int iterate) {
  if (iterate != 1 && iterate != 2) throw std::invalid_argument("hl_maximal: iterate must be 1 or 2");
  GridField m = maximal_once(f);
  if (iterate == 2) m = maximal_once(m);
  return m;
}

}  // namespace czk
