#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

#include "czk/numerics.hpp"
#include "czk/quadrature.hpp"

namespace czk {

namespace {

constexpr int kOrder = 6;
constexpr int kMaxDepth = 40;

using BoxFn = std::function<double(std::span<const double>)>;

double tensor_gl(const BoxFn& f, std::span<const double> lo, std::span<const double> hi) {
  static const auto rule = [] {
    std::pair<std::vector<double>, std::vector<double>> r;
    gauss_legendre(kOrder, r.first, r.second);
    return r;
  }();
  const std::size_t dim = lo.size();
  std::size_t count = 1;
  for (std::size_t d = 0; d < dim; ++d) count *= kOrder;
  std::vector<double> x(dim);
  double sum = 0.0;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t t = idx;
    double w = 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const std::size_t q = t % kOrder;
      t /= kOrder;
      const double half = 0.5 * (hi[d] - lo[d]);
      x[d] = lo[d] + half * (1.0 + rule.first[q]);
      w *= half * rule.second[q];
    }
    sum += w * f(x);
  }
  return sum;
}

double adaptive_box(const BoxFn& f, std::span<const double> lo, std::span<const double> hi, double coarse,
                    double tol, int depth) {
  const std::size_t dim = lo.size();
  const std::size_t children = std::size_t{1} << dim;
  std::vector<std::vector<double>> clo(children, std::vector<double>(dim)), chi = clo;
  std::vector<double> parts(children);
  double fine = 0.0;
  for (std::size_t c = 0; c < children; ++c) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double mid = 0.5 * (lo[d] + hi[d]);
      const bool upper = (c >> d) & 1u;
      clo[c][d] = upper ? mid : lo[d];
      chi[c][d] = upper ? hi[d] : mid;
    }
    parts[c] = tensor_gl(f, clo[c], chi[c]);
    fine += parts[c];
  }
  if (std::abs(fine - coarse) <= tol * std::abs(fine) || depth >= kMaxDepth) return fine;
  double sum = 0.0;
  for (std::size_t c = 0; c < children; ++c) sum += adaptive_box(f, clo[c], chi[c], parts[c], tol, depth + 1);
  return sum;
}

double integrate_box(const BoxFn& f, std::span<const double> lo, std::span<const double> hi, double tol) {
  if (lo.empty()) return f(lo);
  return adaptive_box(f, lo, hi, tensor_gl(f, lo, hi), tol, 0);
}

}  // namespace

double power_box_integral(std::span<const double> lo, std::span<const double> hi, double a, double tol) {
  const std::size_t n = lo.size();
  if (hi.size() != n || n == 0) throw std::invalid_argument("power_box_integral: dimension mismatch");
  double volume = 1.0;
  for (std::size_t d = 0; d < n; ++d) {
    if (!(hi[d] > lo[d])) throw std::invalid_argument("power_box_integral: empty box");
    volume *= hi[d] - lo[d];
  }
  if (a == 0.0) return volume;
  if (!(a > -static_cast<double>(n))) throw std::invalid_argument("power_box_integral: |x|^a not integrable");

  bool contains_origin = true;
  for (std::size_t d = 0; d < n; ++d) contains_origin = contains_origin && lo[d] <= 0.0 && hi[d] >= 0.0;
  if (!contains_origin) {
    const BoxFn f = [a](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return std::pow(r2, 0.5 * a);
    };
    return integrate_box(f, lo, hi, tol);
  }

  // div(x |x|^a) = (n + a) |x|^a: sum of |b| * (face integral) over faces.
  double total = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> flo, fhi;
    for (std::size_t e = 0; e < n; ++e)
      if (e != d) {
        flo.push_back(lo[e]);
        fhi.push_back(hi[e]);
      }
    for (double b : {lo[d], hi[d]}) {
      if (b == 0.0) continue;
      const BoxFn f = [a, b](std::span<const double> y) {
        double r2 = b * b;
        for (double v : y) r2 += v * v;
        return std::pow(r2, 0.5 * a);
      };
      total += std::abs(b) * integrate_box(f, flo, fhi, tol);
    }
  }
  return total / (a + static_cast<double>(n));
}

std::vector<double> weight_samples(const Grid& grid, const PowerWeight& w) {
  std::vector<double> out(grid.size(), 1.0);
  if (w.trivial()) return out;
  const int n = grid.dim();
  if (!(w.exponent > -n)) throw std::invalid_argument("weight_samples: |x|^a not locally integrable");
  std::vector<double> x(n);
  std::vector<int> c(n);
  const double h = grid.spacing();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.indices(i, c);
    bool origin = true;
    for (int d = 0; d < n; ++d) origin = origin && c[d] == grid.points_per_axis() / 2;
    if (origin) {
      const std::vector<double> lo(n, -0.5 * h), hi(n, 0.5 * h);
      out[i] = power_box_integral(lo, hi, w.exponent) / grid.cell_volume();
      continue;
    }
    grid.point(i, x);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    out[i] = std::pow(r2, 0.5 * w.exponent);
  }
  return out;
}

double norm(const GridField& f, double p, const std::optional<PowerWeight>& w, NormKind kind) {
  const double vol = f.grid.cell_volume();
  const std::vector<double> ws =
      w ? weight_samples(f.grid, *w) : std::vector<double>(f.grid.size(), 1.0);

  if (kind == NormKind::weak) {
    if (p != 1.0) throw std::invalid_argument("norm: the weak norm is defined for p = 1");
    std::vector<std::pair<double, double>> vals(f.samples.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = {std::abs(f.samples[i]), ws[i]};
    std::sort(vals.begin(), vals.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    // sup over lambda < v of lambda * w{|f| > lambda} = v * w{|f| >= v}
    double best = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      mass += vals[i].second;
      if (i + 1 < vals.size() && vals[i + 1].first == vals[i].first) continue;
      best = std::max(best, vals[i].first * mass * vol);
    }
    return best;
  }

  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("norm: p must be finite and >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    const double v = std::abs(f.samples[i]);
    sum += (p == 1.0 ? v : std::pow(v, p)) * ws[i];
  }
  return p == 1.0 ? sum * vol : std::pow(sum * vol, 1.0 / p);
}

double ap_constant_estimate(const PowerWeight& w, int n, double p, int cube_budget, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("ap_constant_estimate: dimension must be positive");
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("ap_constant_estimate: p must be > 1");
  if (cube_budget < 1) throw std::invalid_argument("ap_constant_estimate: cube budget must be positive");
  if (!w.in_ap(n, p))
    throw std::invalid_argument("ap_constant_estimate: exponent outside -n < a < n(p-1)");
  if (w.trivial()) return 1.0;

  const double dual = -w.exponent / (p - 1.0);
  std::vector<std::pair<std::vector<double>, std::vector<double>>> cubes;
  const auto budget = static_cast<std::size_t>(cube_budget);

  // centered unit cube, then unit dyadic cubes with a corner near the origin
  cubes.emplace_back(std::vector<double>(n, -0.5), std::vector<double>(n, 0.5));
  std::size_t grid_cubes = 1;
  for (int d = 0; d < n; ++d) grid_cubes *= 4;
  for (std::size_t idx = 0; idx < grid_cubes && cubes.size() < budget; ++idx) {
    std::vector<double> lo(n), hi(n);
    std::size_t t = idx;
    for (int d = 0; d < n; ++d) {
      lo[d] = static_cast<double>(static_cast<int>(t % 4) - 2);
      hi[d] = lo[d] + 1.0;
      t /= 4;
    }
    cubes.emplace_back(std::move(lo), std::move(hi));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> center(-3.0, 3.0), log_side(-3.0, 2.0);
  while (cubes.size() < budget) {
    const double side = std::exp2(log_side(rng));
    std::vector<double> lo(n), hi(n);
    for (int d = 0; d < n; ++d) {
      const double c = center(rng);
      lo[d] = c - 0.5 * side;
      hi[d] = c + 0.5 * side;
    }
    cubes.emplace_back(std::move(lo), std::move(hi));
  }
  if (cubes.size() > budget) cubes.resize(budget);

  double best = 0.0;
  for (const auto& [lo, hi] : cubes) {
    double vol = 1.0;
    for (int d = 0; d < n; ++d) vol *= hi[d] - lo[d];
    const double avg_w = power_box_integral(lo, hi, w.exponent, 1e-9) / vol;
    const double avg_dual = power_box_integral(lo, hi, dual, 1e-9) / vol;
    best = std::max(best, avg_w * std::pow(avg_dual, p - 1.0));
  }
  return best;
}

}  // namespace czk
