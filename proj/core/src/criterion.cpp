#include "czk/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "czk/sphere_grid.hpp"

namespace czk {

using nlohmann::json;

DivisibilityResult divisibility_chain(const KernelExpansion& k) {
  DivisibilityResult r;
  const HomPoly& base = k.terms().front().harmonic;
  for (const auto& t : k.terms()) {
    auto q = exact_divide(t.harmonic, base);
    if (!q) {
      r.failing_degree = t.degree;
      return r;
    }
    r.quotients.push_back({t.degree, std::move(*q)});
  }
  return r;
}

CriterionFunction criterion_function(const KernelExpansion& k, const std::vector<Quotient>& quotients) {
  if (quotients.empty()) throw std::invalid_argument("criterion_function: no quotients");
  const int n = k.dim();
  const int j0 = k.lowest_degree();
  const int jmax = quotients.back().degree;
  CriterionFunction f;
  f.n = n;
  f.homogenized = HomPoly(n, jmax - j0);
  for (const auto& q : quotients) {
    const GammaCoeff g = gamma(q.degree, n);
    // even: gamma_j = (-1)^{j/2} |gamma_j|; odd: i*gamma_j = (-1)^{(j-1)/2} |gamma_j|
    const int half = k.parity() == Parity::even ? q.degree / 2 : (q.degree - 1) / 2;
    const Rational c = half % 2 == 0 ? g.rational_part : Rational(-g.rational_part);
    f.sqrt_pi_power = g.sqrt_pi_power;
    f.coefficients.emplace_back(q.degree, c);
    f.homogenized += c * (q.q * HomPoly::norm_power(n, (jmax - q.degree) / 2));
  }
  return f;
}

double CriterionFunction::scale() const { return std::pow(std::numbers::pi, 0.5 * sqrt_pi_power); }

double CriterionFunction::eval(std::span<const double> unit_xi) const {
  return scale() * FastPoly(homogenized)(unit_xi);
}

double CriterionFunction::eval_exact_projected(std::span<const double> q) const {
  std::vector<Rational> x;
  Rational r2(0);
  for (double v : q) {
    x.push_back(from_double(v));
    r2 += x.back() * x.back();
  }
  // degree is even (all j share parity), so |q|^D = (|q|^2)^{D/2} is rational
  const int deg = homogenized.degree();
  Rational v = homogenized.eval_exact(x);
  if (!homogenized.is_zero()) v /= pow(r2, static_cast<unsigned>(deg / 2));
  return scale() * v.get_d();
}

double CriterionFunction::coefficient_norm() const { return scale() * homogenized.l1_norm().get_d(); }

double CriterionFunction::lipschitz_bound() const { return scale() * gradient_bound(homogenized).get_d(); }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_pass: return "certified_pass";
    case Verdict::certified_fail: return "certified_fail";
    case Verdict::fail_divisibility: return "fail_divisibility";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::inconclusive_sampled: return "inconclusive_sampled";
  }
  return "unknown";
}

namespace {

// Tangential Newton iteration for F = 0 on the sphere, F homogeneous of
// degree D: step along grad_T F = grad F - D F x, then renormalize.
std::pair<std::vector<double>, double> newton_on_sphere(const FastPoly& f, double scale, std::vector<double> x,
                                                        int iterations) {
  const int n = static_cast<int>(x.size());
  std::vector<double> grad(n), best = x;
  double best_val = std::abs(f(x));
  for (int it = 0; it < iterations && best_val > 0.0; ++it) {
    const double v = f.value_and_gradient(x, grad);
    double xg = 0.0;
    for (int i = 0; i < n; ++i) xg += x[i] * grad[i];
    double g2 = 0.0;
    for (int i = 0; i < n; ++i) {
      grad[i] -= xg * x[i];
      g2 += grad[i] * grad[i];
    }
    if (g2 == 0.0) break;
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] -= v * grad[i] / g2;
      r2 += x[i] * x[i];
    }
    const double r = std::sqrt(r2);
    for (auto& xi : x) xi /= r;
    const double val = std::abs(f(x));
    if (val < best_val) {
      best_val = val;
      best = x;
    }
  }
  return {best, best_val * scale};
}

}  // namespace

Certification certify_nonvanishing(const CriterionFunction& f, const CertifyOptions& opts) {
  Certification c;
  const int n = f.n;
  const FastPoly fast(f.homogenized);
  const double scale = f.scale();
  const double fail_threshold = opts.fail_relative_threshold * f.coefficient_norm();
  c.lipschitz_bound = f.lipschitz_bound();

  for (int level = opts.start_level; level <= opts.max_level; ++level) {
    const SphereGrid grid = make_sphere_grid(n, level);
    const std::size_t count = grid.size();
    std::vector<double> vals(count);
    for (std::size_t i = 0; i < count; ++i) vals[i] = std::abs(fast(grid.point(i))) * scale;

    // first index wins ties: deterministic argmin
    const auto min_it = std::min_element(vals.begin(), vals.end());
    const std::size_t arg = static_cast<std::size_t>(min_it - vals.begin());
    c.min_abs_sampled = *min_it;
    c.argmin.assign(grid.point(arg).begin(), grid.point(arg).end());
    c.grid_spacing = grid.covering_radius;
    c.grid_level = level;
    c.grid_points = count;
    c.grid_certified = grid.certified;

    if (grid.certified && c.min_abs_sampled > c.lipschitz_bound * grid.covering_radius) {
      c.verdict = Verdict::certified_pass;
      return c;
    }

    // Local search from the smallest samples.
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(opts.newton_starts), count);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts), order.end(),
                      [&](std::size_t a, std::size_t b) { return vals[a] < vals[b] || (vals[a] == vals[b] && a < b); });
    for (std::size_t s = 0; s < starts; ++s) {
      auto p = grid.point(order[s]);
      auto [x, v] = newton_on_sphere(fast, scale, std::vector<double>(p.begin(), p.end()), opts.newton_iterations);
      if (v > fail_threshold) continue;
      const double exact = std::abs(f.eval_exact_projected(x));
      if (exact <= fail_threshold) {
        c.verdict = Verdict::certified_fail;
        c.witness = std::move(x);
        c.witness_abs_value = exact;
        return c;
      }
    }
  }
  c.verdict = c.grid_certified ? Verdict::inconclusive : Verdict::inconclusive_sampled;
  return c;
}

CriterionReport check_condition_c(const KernelExpansion& k, const CertifyOptions& opts) {
  CriterionReport r;
  r.parity = k.parity();
  r.theorem = k.parity() == Parity::even ? 1 : 2;
  r.n = k.dim();
  r.j0 = k.lowest_degree();
  r.divisibility = divisibility_chain(k);
  if (!r.divisibility.ok()) {
    r.verdict = Verdict::fail_divisibility;
    return r;
  }
  r.function = criterion_function(k, r.divisibility.quotients);
  r.certification = certify_nonvanishing(*r.function, opts);
  r.verdict = r.certification.verdict;
  return r;
}

std::string report_to_json(const CriterionReport& r) {
  json j;
  j["theorem"] = r.theorem;
  j["parity"] = std::string(to_string(r.parity));
  j["n"] = r.n;
  j["j0"] = r.j0;
  j["verdict"] = std::string(to_string(r.verdict));
  json quotients = json::array();
  for (const auto& q : r.divisibility.quotients)
    quotients.push_back({{"j", q.degree}, {"degree", q.q.degree()}, {"Q", to_text(q.q)}});
  j["quotients"] = quotients;
  j["failing_degree"] = r.divisibility.failing_degree ? json(*r.divisibility.failing_degree) : json(nullptr);
  if (r.function) {
    const auto& f = *r.function;
    json coeffs = json::array();
    for (const auto& [deg, c] : f.coefficients) coeffs.push_back({{"j", deg}, {"c", to_string(c)}});
    j["criterion_function"] = {{"coefficients", coeffs},
                               {"sqrt_pi_power", f.sqrt_pi_power},
                               {"homogenized", to_text(f.homogenized)},
                               {"homogenized_degree", f.homogenized.degree()}};
    const auto& c = r.certification;
    j["min_abs_sampled"] = c.min_abs_sampled;
    j["argmin"] = c.argmin;
    j["lipschitz_bound"] = c.lipschitz_bound;
    j["grid_spacing"] = c.grid_spacing;
    j["grid_level"] = c.grid_level;
    j["grid_points"] = c.grid_points;
    j["grid_certified"] = c.grid_certified;
    j["witness"] = c.witness ? json(*c.witness) : json(nullptr);
    if (c.witness) j["witness_abs_value"] = c.witness_abs_value;
  }
  return j.dump(2);
}

}  // namespace czk
