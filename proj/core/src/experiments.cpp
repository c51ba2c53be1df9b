#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "czk/numerics.hpp"

namespace czk {

namespace {

// sup |E| over the closed ball |xi - xi0| <= radius, on a polar sample set.
double sup_on_ball(const MultiplierSampler& e, const std::vector<double>& xi0, double radius) {
  const int n = static_cast<int>(xi0.size());
  constexpr int kRadial = 64, kAngular = 256, kPolar = 64;
  double best = std::abs(e(xi0));
  std::vector<double> xi(n);
  for (int ri = 1; ri <= kRadial; ++ri) {
    const double r = radius * ri / kRadial;
    for (int a = 0; a < kAngular; ++a) {
      const double phi = 2.0 * std::numbers::pi * a / kAngular;
      if (n == 2) {
        xi[0] = xi0[0] + r * std::cos(phi);
        xi[1] = xi0[1] + r * std::sin(phi);
        best = std::max(best, std::abs(e(xi)));
        continue;
      }
      for (int q = 0; q <= kPolar; ++q) {
        const double th = std::numbers::pi * q / kPolar;
        xi[0] = xi0[0] + r * std::sin(th) * std::cos(phi);
        xi[1] = xi0[1] + r * std::sin(th) * std::sin(phi);
        xi[2] = xi0[2] + r * std::cos(th);
        best = std::max(best, std::abs(e(xi)));
      }
    }
  }
  return best;
}

}  // namespace

std::vector<LocalizationRow> localization_decay_experiment(const MultiplierSampler& m, const std::vector<double>& xi0,
                                                           const std::vector<double>& deltas, double p,
                                                           const std::optional<PowerWeight>& w, const Grid& grid) {
  if (static_cast<int>(xi0.size()) != grid.dim()) throw std::invalid_argument("localization: xi0 dimension mismatch");
  if (deltas.empty()) throw std::invalid_argument("localization: empty delta list");
  double xr = 0.0;
  for (double v : xi0) xr += v * v;
  xr = std::sqrt(xr);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0 && deltas[i] < xr)) throw std::invalid_argument("localization: need 0 < delta < |xi0|");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw std::invalid_argument("localization: delta list must decrease");
  }
  if (w && !w->in_ap(grid.dim(), p)) throw std::invalid_argument("localization: weight exponent outside the A_p range");

  const MultiplierSampler e = localized_multiplier(m, xi0, 0.0);
  std::vector<LocalizationRow> rows;
  for (double delta : deltas) {
    const GridField g = make_field(TestFunctionSpec::gdelta(xi0, delta), grid);
    const MultiplierSampler windowed = localized_multiplier(m, xi0, 2.0 * delta);
    const GridField tg = multiplier_apply(windowed, g, 0.0);
    LocalizationRow row;
    row.delta = delta;
    row.ratio = norm(tg, p, w) / norm(g, p, w);
    row.window_sup = sup_on_ball(e, xi0, 2.0 * delta);
    rows.push_back(row);
  }
  return rows;
}

std::vector<RatioRow> pointwise_ratio_report(const KernelExpansion& k, const std::vector<TestFunctionSpec>& fields,
                                             int s, int n, double half_extent, const std::vector<int>& resolutions,
                                             double noise_floor) {
  if (s != 1 && s != 2) throw std::invalid_argument("pointwise_ratio_report: s must be 1 or 2");
  if (k.dim() != n) throw std::invalid_argument("pointwise_ratio_report: dimension mismatch");
  std::vector<RatioRow> rows;
  for (const auto& spec : fields) {
    for (int g : resolutions) {
      const Grid grid(n, g, half_extent);
      const GridField f = make_field(spec, grid);
      const auto levels = dyadic_levels(grid);
      const auto family = truncated_family(k, f, levels);
      GridField tstar(grid);
      for (const auto& t : family)
        for (std::size_t i = 0; i < grid.size(); ++i)
          tstar.samples[i] = std::max(tstar.samples[i].real(), std::abs(t.samples[i]));
      const GridField mtf = hl_maximal(family.front(), s);

      RatioRow row;
      row.field = describe(spec);
      row.points_per_axis = g;
      row.spacing = grid.spacing();
      row.max_tstar = tstar.max_abs();
      row.max_mtf = mtf.max_abs();
      const double floor = noise_floor * row.max_mtf;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double denom = mtf.samples[i].real();
        if (!(denom > floor)) continue;
        row.sup_ratio = std::max(row.sup_ratio, tstar.samples[i].real() / denom);
        ++row.points_used;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace czk
