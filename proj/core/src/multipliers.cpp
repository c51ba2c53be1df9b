#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "czk/fft.hpp"
#include "czk/numerics.hpp"
#include "czk/parallel.hpp"
#include "czk/quadrature.hpp"

namespace czk {

MultiplierSampler kernel_multiplier(const KernelExpansion& k) {
  auto m = std::make_shared<Multiplier>(k);
  return [m](std::span<const double> xi) { return (*m)(xi); };
}

GridField multiplier_apply(const MultiplierSampler& m, const GridField& f, std::complex<double> value_at_zero) {
  const Grid& grid = f.grid;
  const int n = grid.dim(), g = grid.points_per_axis();
  const double dxi = 1.0 / (2.0 * grid.half_extent());
  cvec data = f.samples;
  const std::vector<int> dims(n, g);
  fft_inplace(data, dims, false);
  parallel_for(data.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<int> idx(n);
    std::vector<double> xi(n);
    for (std::size_t i = begin; i < end; ++i) {
      grid.indices(i, idx);
      bool zero = true;
      for (int d = 0; d < n; ++d) {
        const int k = idx[d] < g / 2 ? idx[d] : idx[d] - g;
        xi[d] = k * dxi;
        zero = zero && k == 0;
      }
      data[i] *= zero ? value_at_zero : m(xi);
    }
  });
  fft_inplace(data, dims, true);
  GridField out(grid);
  out.samples = std::move(data);
  return out;
}

namespace {

// All multi-indices of length n with |alpha| <= l.
std::vector<std::vector<int>> multi_indices(int n, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int d, int left) {
    if (d == n) {
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[d] = v;
      rec(d + 1, left - v);
    }
    a[d] = 0;
  };
  rec(0, l);
  return out;
}

double binomial(int k, int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r = r * (k - j + i) / i;
  return r;
}

// Tensor central difference D^alpha m(x), step s per axis.
double difference(const MultiplierSampler& m, std::span<const double> x, const std::vector<int>& alpha, double step) {
  const int n = static_cast<int>(x.size());
  std::vector<int> j(n, 0);
  std::vector<double> y(n);
  std::complex<double> acc = 0.0;
  for (;;) {
    double coeff = 1.0;
    for (int d = 0; d < n; ++d) {
      coeff *= ((j[d] % 2) ? -1.0 : 1.0) * binomial(alpha[d], j[d]);
      y[d] = x[d] + (0.5 * alpha[d] - j[d]) * step;
    }
    acc += coeff * m(y);
    int d = 0;
    while (d < n && ++j[d] > alpha[d]) j[d++] = 0;
    if (d == n) break;
  }
  int order = 0;
  for (int a : alpha) order += a;
  return std::abs(acc) / std::pow(step, order);
}

}  // namespace

MslResult msl_estimate(const MultiplierSampler& m, int n, double s, int l, const std::vector<double>& radii,
                       const MslOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("msl_estimate: empty radius set");
  if (n != 2 && n != 3) throw std::invalid_argument("msl_estimate: n must be 2 or 3");
  if (!(s > 1.0 && s <= 2.0)) throw std::invalid_argument("msl_estimate: s must lie in (1, 2]");
  if (l < 0 || l > n) throw std::invalid_argument("msl_estimate: l must lie in [0, n]");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("msl_estimate: radii must be positive");

  std::vector<double> gx, gw;
  gauss_legendre(opts.radial_order, gx, gw);
  std::vector<double> px, pw;
  if (n == 3) gauss_legendre(opts.polar_points, px, pw);
  const auto alphas = multi_indices(n, l);

  // Directions and their surface weights.
  std::vector<std::vector<double>> dirs;
  std::vector<double> dw;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int a = 0; a < opts.angular_points; ++a) {
    const double phi = two_pi * a / opts.angular_points;
    if (n == 2) {
      dirs.push_back({std::cos(phi), std::sin(phi)});
      dw.push_back(two_pi / opts.angular_points);
    } else {
      for (std::size_t q = 0; q < px.size(); ++q) {
        const double ct = px[q], st = std::sqrt(1.0 - ct * ct);
        dirs.push_back({st * std::cos(phi), st * std::sin(phi), ct});
        dw.push_back(pw[q] * two_pi / opts.angular_points);
      }
    }
  }

  MslResult res;
  res.value = -1.0;
  for (double radius : radii) {
    const double step = radius * opts.step_fraction;
    double best = -1.0;
    std::vector<int> best_alpha;
    for (const auto& alpha : alphas) {
      int order = 0;
      for (int a : alpha) order += a;
      const double panel = radius / opts.radial_panels;
      std::vector<double> shell(static_cast<std::size_t>(opts.radial_panels) * gx.size());
      parallel_for(shell.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> x(n);
        for (std::size_t i = begin; i < end; ++i) {
          const std::size_t pnl = i / gx.size(), q = i % gx.size();
          const double r = radius + panel * (pnl + 0.5 * (1.0 + gx[q]));
          double ang = 0.0;
          for (std::size_t di = 0; di < dirs.size(); ++di) {
            for (int d = 0; d < n; ++d) x[d] = r * dirs[di][d];
            ang += dw[di] * std::pow(difference(m, x, alpha, step), s);
          }
          shell[i] = 0.5 * panel * gw[q] * std::pow(r, n - 1) * ang;
        }
      });
      double integral = 0.0;
      for (double v : shell) integral += v;
      const double value = std::pow(std::pow(radius, s * order - n) * integral, 1.0 / s);
      if (value > best) {
        best = value;
        best_alpha = alpha;
      }
    }
    res.per_radius.push_back(best);
    if (best > res.value) {
      res.value = best;
      res.argmax_alpha = best_alpha;
      res.argmax_radius = radius;
    }
  }
  return res;
}

MultiplierSampler localized_multiplier(const MultiplierSampler& m, std::vector<double> xi0, double window_delta) {
  const std::complex<double> at_xi0 = m(xi0);
  if (window_delta < 0.0) throw std::invalid_argument("localized_multiplier: negative window scale");
  return [m, xi0 = std::move(xi0), window_delta, at_xi0](std::span<const double> xi) -> std::complex<double> {
    if (window_delta > 0.0) {
      const double w = window_at(xi, xi0, window_delta);
      if (w == 0.0) return 0.0;
      return (m(xi) - at_xi0) * w;
    }
    return m(xi) - at_xi0;
  };
}

}  // namespace czk
