#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "czk/grid.hpp"
#include "czk/kernel.hpp"

namespace czk {

// ---- singular integrals ----------------------------------------------------

// Discrete kernel weight of the offset cell k h for the region eps < |y| <= L:
// h^n K(k h) for cells clear of both spheres, and h^n times the mean over 4^n
// subcell centers of K * 1[eps < |y| <= L] for cells the spheres cut.
std::vector<double> truncated_weights(const KernelEvaluator& k, const Grid& grid, double eps);

// T^eps f for every eps in `eps_levels` (ascending, each >= h). Built from
// the annuli between consecutive levels, then dyadic annuli up to R_max = L,
// accumulated from the outermost annulus inward; T^{eps_i} is the partial
// sum down to eps_i. Shares one FFT of f across annuli.
std::vector<GridField> truncated_family(const KernelExpansion& k, const GridField& f,
                                        const std::vector<double>& eps_levels);

GridField truncated_transform(const KernelExpansion& k, const GridField& f, double eps);

// Direct O(G^{2n}) summation with the same weights; reference for small grids.
GridField truncated_transform_direct(const KernelExpansion& k, const GridField& f, double eps);

// eps_set = {h 2^k : k = 0..k_max}, truncated at R_max = L.
std::vector<double> dyadic_levels(const Grid& grid, int k_max = -1);

// max_eps |T^eps f| pointwise (real field stored as complex).
GridField maximal_transform(const KernelExpansion& k, const GridField& f, const std::vector<double>& eps_set);

// ---- Hardy-Littlewood ---------------------------------------------------------

// Mf(x) = max over r in {0} U {h 2^k} of the mean of |f| over grid nodes in
// the closed ball B(x, r) (clipped to the grid). iterate = 2 gives M(Mf).
GridField hl_maximal(const GridField& f, int iterate = 1);

// ---- weights and norms -------------------------------------------------------

struct PowerWeight {
  double exponent = 0.0;  // w(x) = |x|^a
  bool trivial() const { return exponent == 0.0; }
  // A_p validity for dimension n: -n < a < n (p - 1)
  bool in_ap(int n, double p) const { return exponent > -static_cast<double>(n) && exponent < n * (p - 1.0); }
};

// Integral of |x|^a over the box [lo, hi] (a > -n), to relative accuracy tol.
double power_box_integral(std::span<const double> lo, std::span<const double> hi, double a, double tol = 1e-10);

// Per-node weight values: |x|^a at nodes, the cell average for the cell at the origin.
std::vector<double> weight_samples(const Grid& grid, const PowerWeight& w);

enum class NormKind { strong, weak };

// strong: (h^n sum |f|^p w)^{1/p}; weak (p = 1): sup_lambda lambda w{|f| > lambda}.
double norm(const GridField& f, double p, const std::optional<PowerWeight>& w = std::nullopt,
            NormKind kind = NormKind::strong);

// max over a cube family of (avg w)(avg w^{-1/(p-1)})^{p-1}.
double ap_constant_estimate(const PowerWeight& w, int n, double p, int cube_budget, std::uint64_t seed = 1);

// ---- multipliers -------------------------------------------------------------

using MultiplierSampler = std::function<std::complex<double>(std::span<const double>)>;

MultiplierSampler kernel_multiplier(const KernelExpansion& k);

// (f^ m)^v on the periodic grid; frequencies k / (2L). m(0) is taken as
// `value_at_zero` (0 for homogeneous degree-0 multipliers).
GridField multiplier_apply(const MultiplierSampler& m, const GridField& f, std::complex<double> value_at_zero = 0.0);

struct MslOptions {
  int radial_panels = 32;
  int radial_order = 8;
  int angular_points = 1024;  // n = 2: per circle; n = 3: azimuthal count
  int polar_points = 256;     // n = 3 only
  double step_fraction = 1.0 / 64.0;
};

struct MslResult {
  double value = 0.0;  // max over alpha and R
  std::vector<double> per_radius;  // max over alpha, per R
  std::vector<int> argmax_alpha;
  double argmax_radius = 0.0;
};

// sup_{|alpha| <= l, R} (R^{s|alpha| - n} int_{R<|x|<2R} |D^alpha m|^s)^{1/s}
// with central differences at step R/64.
MslResult msl_estimate(const MultiplierSampler& m, int n, double s, int l, const std::vector<double>& radii,
                       const MslOptions& opts = {});

// E(xi) = m(xi) - m(xi0), optionally times phi_{delta}(xi).
MultiplierSampler localized_multiplier(const MultiplierSampler& m, std::vector<double> xi0, double window_delta);

// ---- experiments ----------------------------------------------------------------

struct LocalizationRow {
  double delta = 0.0;
  double ratio = 0.0;          // ||T g_delta||_{p,w} / ||g_delta||_{p,w}
  double window_sup = 0.0;     // sup |E| on |xi - xi0| <= 2 delta (Plancherel bound at p = 2)
};

std::vector<LocalizationRow> localization_decay_experiment(const MultiplierSampler& m, const std::vector<double>& xi0,
                                                           const std::vector<double>& deltas, double p,
                                                           const std::optional<PowerWeight>& w, const Grid& grid);

struct RatioRow {
  std::string field;
  int points_per_axis = 0;
  double spacing = 0.0;
  double sup_ratio = 0.0;  // sup T*f / M^s(Tf) above the noise floor
  double max_tstar = 0.0;
  double max_mtf = 0.0;
  std::size_t points_used = 0;
};

// For each field spec and each G in `resolutions` (fixed L): Tf ~ T^h f,
// T*f over dyadic levels, M^s(Tf), and the sup of their ratio where
// M^s(Tf) > noise_floor * max M^s(Tf).
std::vector<RatioRow> pointwise_ratio_report(const KernelExpansion& k, const std::vector<TestFunctionSpec>& fields,
                                             int s, int n, double half_extent, const std::vector<int>& resolutions,
                                             double noise_floor = 1e-3);

}  // namespace czk
