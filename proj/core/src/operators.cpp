#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "czk/fft.hpp"
#include "czk/numerics.hpp"
#include "czk/parallel.hpp"

namespace czk {

namespace {

constexpr int kSubcells = 4;

// Offsets k in [-H, H]^n, row-major; weights h^n * mean over subcells of
// K * 1[r_lo < |y| <= r_hi]. Cells clear of both spheres use the center value.
cvec annulus_weights(const KernelEvaluator& kern, const Grid& grid, int half_width, double r_lo, double r_hi) {
  const int n = grid.dim();
  const double h = grid.spacing();
  const double vol = grid.cell_volume();
  const int side = 2 * half_width + 1;
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(side);
  cvec w(total);

  int subtotal = 1;
  for (int d = 0; d < n; ++d) subtotal *= kSubcells;

  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    std::vector<int> k(n);
    std::vector<double> y(n), z(n);
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t t = idx;
      for (int d = n - 1; d >= 0; --d) {
        k[d] = static_cast<int>(t % side) - half_width;
        t /= side;
      }
      double dmin2 = 0.0, dmax2 = 0.0;
      for (int d = 0; d < n; ++d) {
        const double a = std::abs(k[d]) * h;
        y[d] = k[d] * h;
        const double lo = std::max(0.0, a - 0.5 * h), hi = a + 0.5 * h;
        dmin2 += lo * lo;
        dmax2 += hi * hi;
      }
      const double dmin = std::sqrt(dmin2), dmax = std::sqrt(dmax2);
      if (dmax <= r_lo || dmin > r_hi) continue;
      if (dmin > r_lo && dmax <= r_hi) {
        w[idx] = vol * kern(y);
        continue;
      }
      double acc = 0.0;
      for (int s = 0; s < subtotal; ++s) {
        int q = s;
        double z2 = 0.0;
        for (int d = 0; d < n; ++d) {
          const int sub = q % kSubcells;
          q /= kSubcells;
          z[d] = y[d] + h * ((sub + 0.5) / kSubcells - 0.5);
          z2 += z[d] * z[d];
        }
        const double rz = std::sqrt(z2);
        if (rz > r_lo && rz <= r_hi) acc += kern(z);
      }
      w[idx] = vol * acc / subtotal;
    }
  });
  return w;
}

void check_levels(const Grid& grid, const std::vector<double>& eps) {
  if (eps.empty()) throw std::invalid_argument("truncation levels: empty set");
  const double h = grid.spacing();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] >= h * (1.0 - 1e-12))) throw std::invalid_argument("truncation level below the grid spacing");
    if (!(eps[i] < grid.half_extent())) throw std::invalid_argument("truncation level must be below the box half extent");
    if (i > 0 && !(eps[i] > eps[i - 1])) throw std::invalid_argument("truncation levels must be strictly ascending");
  }
}

}  // namespace

std::vector<double> truncated_weights(const KernelEvaluator& k, const Grid& grid, double eps) {
  const cvec w = annulus_weights(k, grid, grid.points_per_axis() / 2, eps, grid.half_extent());
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i].real();
  return out;
}

std::vector<GridField> truncated_family(const KernelExpansion& k, const GridField& f,
                                        const std::vector<double>& eps_levels) {
  const Grid& grid = f.grid;
  if (k.dim() != grid.dim()) throw std::invalid_argument("truncated_family: dimension mismatch");
  check_levels(grid, eps_levels);
  const KernelEvaluator kern(k);
  const int hw = grid.points_per_axis() / 2;

  // Piece i is W(eps_i) - W(eps_{i+1}), so the partial sums telescope to the
  // single-level weights exactly. Cells outside both spheres cancel to zero.
  std::vector<cvec> kernels;
  for (double e : eps_levels) kernels.push_back(annulus_weights(kern, grid, hw, e, grid.half_extent()));
  for (std::size_t i = 0; i + 1 < kernels.size(); ++i)
    for (std::size_t j = 0; j < kernels[i].size(); ++j) kernels[i][j] -= kernels[i + 1][j];
  const auto pieces = convolve_same(f.samples, grid.dim(), grid.points_per_axis(), kernels, hw);

  // Outermost piece first; T^{eps_i} is the partial sum down to eps_i.
  cvec acc(grid.size());
  std::vector<GridField> out(eps_levels.size(), GridField(grid));
  for (std::size_t i = pieces.size(); i-- > 0;) {
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += pieces[i][j];
    out[i].samples = acc;
  }
  return out;
}

GridField truncated_transform(const KernelExpansion& k, const GridField& f, double eps) {
  return std::move(truncated_family(k, f, {eps}).front());
}

GridField truncated_transform_direct(const KernelExpansion& k, const GridField& f, double eps) {
  const Grid& grid = f.grid;
  if (k.dim() != grid.dim()) throw std::invalid_argument("truncated_transform_direct: dimension mismatch");
  check_levels(grid, {eps});
  const KernelEvaluator kern(k);
  const int n = grid.dim(), g = grid.points_per_axis(), hw = g / 2, side = 2 * hw + 1;
  const cvec w = annulus_weights(kern, grid, hw, eps, grid.half_extent());
  GridField out(grid);
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<int> c(n), k(n), src(n);
    for (std::size_t i = begin; i < end; ++i) {
      grid.indices(i, c);
      std::complex<double> acc = 0.0;
      for (std::size_t widx = 0; widx < w.size(); ++widx) {
        if (w[widx] == 0.0) continue;
        std::size_t t = widx;
        bool inside = true;
        for (int d = n - 1; d >= 0; --d) {
          k[d] = static_cast<int>(t % side) - hw;
          t /= side;
          src[d] = c[d] - k[d];
          if (src[d] < 0 || src[d] >= g) inside = false;
        }
        if (inside) acc += w[widx] * f.samples[grid.flat(src)];
      }
      out.samples[i] = acc;
    }
  });
  return out;
}

std::vector<double> dyadic_levels(const Grid& grid, int k_max) {
  std::vector<double> out;
  const double h = grid.spacing();
  for (int k = 0; k_max < 0 || k <= k_max; ++k) {
    const double e = h * std::ldexp(1.0, k);
    if (!(e < grid.half_extent())) break;
    out.push_back(e);
  }
  return out;
}

GridField maximal_transform(const KernelExpansion& k, const GridField& f, const std::vector<double>& eps_set) {
  if (eps_set.empty()) throw std::invalid_argument("maximal_transform: empty truncation set");
  const auto family = truncated_family(k, f, eps_set);
  GridField out(f.grid);
  for (const auto& t : family)
    for (std::size_t i = 0; i < out.samples.size(); ++i)
      out.samples[i] = std::max(out.samples[i].real(), std::abs(t.samples[i]));
  return out;
}

}  // namespace czk
