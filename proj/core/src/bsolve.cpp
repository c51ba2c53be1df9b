#include "czk/bsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "czk/linsolve.hpp"
#include "czk/quadrature.hpp"

namespace czk {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

// Lap^m (r^{2i}) = radial_lap_coeff(i, m, n) r^{2i-2m}.
Rational radial_lap_coeff(int i, int m, int n) {
  Rational c(1);
  for (int t = 0; t < m; ++t) c *= Rational((2 * i - 2 * t) * (2 * i - 2 * t + n - 2));
  return c;
}

// Lap (r^t (a + b log r^2)) = r^{t-2} (a' + b' log r^2).
std::pair<Rational, Rational> radial_lap_step(int t, int n, const Rational& a, const Rational& b) {
  const Rational k(t * (t + n - 2));
  return {a * k + b * Rational(4 * t + 2 * n - 4), b * k};
}

// Coefficients (in rho) of q(rho)^i for q = rho^2 + p rho + c.
std::vector<double> quad_power(double p, double c, int i) {
  std::vector<double> out{1.0};
  for (int e = 0; e < i; ++e) {
    std::vector<double> nxt(out.size() + 2, 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
      nxt[k] += c * out[k];
      nxt[k + 1] += p * out[k];
      nxt[k + 2] += out[k];
    }
    out = std::move(nxt);
  }
  return out;
}

}  // namespace

double sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

double ball_volume(int n) { return sphere_area(n) / n; }

double FundamentalSolution::eval(double r) const {
  double v = a_const.get_d();
  if (has_log) v += b_const.get_d() * std::log(r * r);
  return unit() * std::pow(r, s) * v;
}

FundamentalSolution fundamental_solution(int n, int N) {
  if (n < 2) throw std::invalid_argument("fundamental_solution: n must be >= 2");
  if (N < 1) throw std::invalid_argument("fundamental_solution: N must be >= 1");
  FundamentalSolution e;
  e.n = n;
  e.N = N;
  // Lap: n = 2 -> u/2 log r^2 (u = 1/2pi); n >= 3 -> u r^{2-n} / (2-n)
  Rational a, b;
  if (n == 2) {
    a = 0;
    b = Rational(1, 2);
  } else {
    a = Rational(1) / Rational(2 - n);
    b = 0;
  }
  for (int level = 2; level <= N; ++level) {
    const int t = 2 * level - n;
    const Rational k(t * (t + n - 2));
    Rational na, nb;
    if (k != 0) {
      nb = b / k;
      na = (a - nb * Rational(4 * t + 2 * n - 4)) / k;
    } else {
      // t = 0 (n = 2*level): previous level has no log term
      if (b != 0) throw std::logic_error("fundamental_solution: unexpected log term at t = 0");
      nb = a / Rational(2 * n - 4);
      na = 0;
    }
    a = na;
    b = nb;
    // r^t is polyharmonic of order `level` whenever t is even and >= 0
    if (b != 0) a = 0;
  }
  e.s = 2 * N - n;
  e.a_const = a;
  e.b_const = b;
  e.has_log = b != 0;
  return e;
}

std::vector<std::pair<Rational, Rational>> fundamental_laplacian_chain(const FundamentalSolution& e, int count) {
  std::vector<std::pair<Rational, Rational>> chain;
  Rational a = e.a_const, b = e.b_const;
  for (int m = 0; m < count; ++m) {
    chain.emplace_back(a, b);
    std::tie(a, b) = radial_lap_step(e.s - 2 * m, e.n, a, b);
  }
  return chain;
}

FundamentalCheck verify_fundamental(const FundamentalSolution& e, const TestBump& bump, double tol) {
  if (bump.power < 2 * e.N) throw std::invalid_argument("verify_fundamental: bump power must be >= 2N");
  const int n = e.n, N = e.N, p = bump.power;
  const double lam = bump.scale;
  // Lap^N psi(r) = sum_i c_i r^{2i-2N}, psi = sum_i binom(p,i) (-1)^i lam^{-2i} r^{2i}
  std::vector<double> coeff(p + 1, 0.0);
  Rational binom(1);
  for (int i = 0; i <= p; ++i) {
    if (i > 0) binom = binom * Rational(p - i + 1) / Rational(i);
    const Rational c = (i % 2 ? Rational(-binom) : binom) * radial_lap_coeff(i, N, n);
    coeff[i] = c.get_d() * std::pow(lam, -2.0 * i);
  }
  auto lap_psi = [&](double r) {
    double s = 0.0;
    for (int i = N; i <= p; ++i) s += coeff[i] * std::pow(r, 2 * i - 2 * N);
    return s;
  };
  const double area = sphere_area(n);
  auto integrand = [&](double r) { return r == 0.0 ? 0.0 : area * e.eval(r) * lap_psi(r) * std::pow(r, n - 1); };
  const QuadResult q = integrate(integrand, 0.0, lam, tol, 0.0, 5000);
  FundamentalCheck c;
  c.integral = q.value;
  c.expected = 1.0;  // psi(0)
  c.residual = std::abs(q.value - c.expected);
  c.converged = q.converged;
  return c;
}

// ---------------------------------------------------------------------------

double BConstruction::b_value(double r) const {
  if (r >= 1.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += alpha[i].get_d() * std::pow(r, 2.0 * static_cast<double>(i));
  return unit() * s;
}

double BConstruction::b_sup_bound() const {
  Rational s(0);
  for (const auto& a : alpha) s += abs(a);
  return unit() * s.get_d();
}

Poly BConstruction::interior_polynomial() const {
  Poly p(n);
  for (std::size_t i = 0; i < A.size(); ++i) p += A[i] * HomPoly::norm_power(n, static_cast<int>(i));
  return p;
}

BConstruction solve_matching(int n, int N) {
  BConstruction bc;
  bc.n = n;
  bc.N = N;
  bc.fundamental = fundamental_solution(n, N);
  const auto chain = fundamental_laplacian_chain(bc.fundamental, N);
  const int s = bc.fundamental.s;
  const int unknowns = 2 * N;

  RationalMatrix m(unknowns, unknowns);
  std::vector<Rational> rhs(unknowns);
  for (int lvl = 0; lvl < N; ++lvl) {
    const auto& [a, b] = chain[lvl];
    for (int i = 0; i < unknowns; ++i) {
      const Rational c = radial_lap_coeff(i, lvl, n);
      m(2 * lvl, i) = c;
      m(2 * lvl + 1, i) = c * Rational(2 * i - 2 * lvl);
    }
    rhs[2 * lvl] = a;                                         // value at r = 1 (log 1 = 0)
    rhs[2 * lvl + 1] = Rational(s - 2 * lvl) * a + 2 * b;  // d/dr at r = 1
  }
  const auto sol = solve_exact(m, rhs);
  if (!sol || !sol->unique) throw std::logic_error("solve_matching: singular matching system");
  bc.A = sol->x;

  for (int lvl = 0; lvl < N; ++lvl) {
    Rational val(0), der(0);
    for (int i = 0; i < unknowns; ++i) {
      const Rational c = radial_lap_coeff(i, lvl, n);
      val += bc.A[i] * c;
      der += bc.A[i] * c * Rational(2 * i - 2 * lvl);
    }
    const auto& [a, b] = chain[lvl];
    bc.matching_residuals.push_back(val - a);
    bc.matching_residuals.push_back(der - (Rational(s - 2 * lvl) * a + 2 * b));
  }
  for (int i = N; i < unknowns; ++i) bc.alpha.push_back(bc.A[i] * radial_lap_coeff(i, N, n));
  return bc;
}

// ---------------------------------------------------------------------------

HomPoly symbol_numerator(const KernelExpansion& k, int* sqrt_pi_power) {
  if (k.parity() != Parity::even) throw std::invalid_argument("symbol_numerator: kernel must be even");
  const int n = k.dim(), top = k.top_degree();
  HomPoly q(n, top);
  int power = 0;
  for (const auto& t : k.terms()) {
    const GammaCoeff g = gamma(t.degree, n);
    const Rational c = g.phase_class == 0 ? g.rational_part : Rational(-g.rational_part);
    power = g.sqrt_pi_power;
    q += c * (t.harmonic * HomPoly::norm_power(n, (top - t.degree) / 2));
  }
  if (sqrt_pi_power) *sqrt_pi_power = power;
  return q;
}

double SPolynomial::eval(std::span<const double> x) const {
  return unit * std::pow(kPi, 0.5 * sqrt_pi_power) * rational_part.eval(x);
}

SPolynomial compute_S(const KernelExpansion& k, const BConstruction& bc) {
  if (k.parity() != Parity::even) throw std::invalid_argument("compute_S: kernel must be even");
  if (k.dim() != bc.n) throw std::invalid_argument("compute_S: dimension mismatch");
  if (k.top_degree() != 2 * bc.N)
    throw std::invalid_argument("compute_S: kernel top degree " + std::to_string(k.top_degree()) + " != 2N = " +
                                std::to_string(2 * bc.N));
  SPolynomial s;
  const HomPoly q = symbol_numerator(k, &s.sqrt_pi_power);
  s.rational_part = apply_diff_op(q, bc.interior_polynomial());
  s.rational_part *= Rational(-1);
  s.unit = bc.unit();
  return s;
}

// ---------------------------------------------------------------------------

double convolve_with_b(const KernelExpansion& k, const BConstruction& bc, std::span<const double> x, double tol,
                       bool* converged) {
  const int n = k.dim();
  if (n != 2 && n != 3) throw std::invalid_argument("convolve_with_b: only n = 2, 3 supported");
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("convolve_with_b: dimension mismatch");
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double R = std::sqrt(r2);
  if (std::abs(R - 1.0) < 1e-12) throw std::domain_error("convolve_with_b: point on the unit sphere");

  const KernelEvaluator kernel(k);
  std::vector<double> alpha;
  for (const auto& a : bc.alpha) alpha.push_back(a.get_d() * bc.unit());

  // Orthonormal frame: w = -x/|x| (or e_1 at the origin) and its complement.
  std::vector<double> w(n, 0.0), e1(n, 0.0), e2(n, 0.0);
  if (R > 0.0) {
    for (int i = 0; i < n; ++i) w[i] = -x[i] / R;
  } else {
    w[0] = 1.0;
  }
  if (n == 2) {
    e1 = {-w[1], w[0]};
  } else {
    const int k0 = std::abs(w[0]) < 0.9 ? 0 : 1;
    std::vector<double> t(3, 0.0);
    t[k0] = 1.0;
    const double d = t[0] * w[0] + t[1] * w[1] + t[2] * w[2];
    for (int i = 0; i < 3; ++i) e1[i] = t[i] - d * w[i];
    const double nn = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (auto& v : e1) v /= nn;
    e2 = {w[1] * e1[2] - w[2] * e1[1], w[2] * e1[0] - w[0] * e1[2], w[0] * e1[1] - w[1] * e1[0]};
  }

  // Angular mass of Omega(-u) on the circle/ring at polar angle theta from w.
  const int ring = 4 * (k.top_degree() + 2);
  std::vector<double> u(n), mu(n);
  auto omega_ring = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    if (n == 2) {
      double acc = 0.0;
      for (int sign : {1, -1}) {
        for (int i = 0; i < 2; ++i) mu[i] = -(c * w[i] + sign * s * e1[i]);
        acc += kernel.omega_on_sphere(mu);
      }
      return acc;  // both half-planes share the radial factor
    }
    double acc = 0.0;
    for (int q = 0; q < ring; ++q) {
      const double ph = 2.0 * kPi * q / ring;
      for (int i = 0; i < 3; ++i) mu[i] = -(c * w[i] + s * (std::cos(ph) * e1[i] + std::sin(ph) * e2[i]));
      acc += kernel.omega_on_sphere(mu);
    }
    return acc * (2.0 * kPi / ring) * s;  // sin(theta) from the surface measure
  };

  // b(x + rho u) as a polynomial in rho: coefficients beta_k.
  auto beta_for = [&](double theta) {
    const double p = -2.0 * R * std::cos(theta), c = R * R;
    std::vector<double> beta(2 * alpha.size() - 1, 0.0);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const auto qp = quad_power(p, c, static_cast<int>(i));
      for (std::size_t j = 0; j < qp.size(); ++j) beta[j] += alpha[i] * qp[j];
    }
    return beta;
  };

  QuadResult q;
  if (R > 1.0) {
    // Directions that meet B: theta in [0, asin(1/R)]. Substitute
    // sin(theta) = sin(t)/R so the chord length 2 cos(t) is smooth in t.
    auto f = [&](double t) {
      const double st = std::sin(t) / R;
      const double theta = std::asin(st);
      const double ct = std::sqrt(1.0 - st * st);
      const double half = std::cos(t);
      const double rho1 = R * ct - half, rho2 = R * ct + half;
      const auto beta = beta_for(theta);
      double radial = beta[0] * std::log(rho2 / rho1);
      for (std::size_t j = 1; j < beta.size(); ++j)
        radial += beta[j] * (std::pow(rho2, static_cast<double>(j)) - std::pow(rho1, static_cast<double>(j))) / j;
      const double jac = std::cos(t) / (R * ct);
      return omega_ring(theta) * radial * jac;
    };
    q = integrate(f, 0.0, kPi / 2, tol, 0.0, 4000);
  } else {
    // Principal value: the b(x)/rho part integrates Omega against log(rho2);
    // the log(eps) piece vanishes because Omega has zero mean.
    auto f = [&](double theta) {
      const double c = std::cos(theta), s = std::sin(theta);
      const double rho2 = R * c + std::sqrt(1.0 - R * R * s * s);
      const auto beta = beta_for(theta);
      double radial = beta[0] * std::log(rho2);
      for (std::size_t j = 1; j < beta.size(); ++j) radial += beta[j] * std::pow(rho2, static_cast<double>(j)) / j;
      return omega_ring(theta) * radial;
    };
    q = integrate(f, 0.0, kPi, tol, 0.0, 4000);
  }
  if (converged) *converged = q.converged;
  return q.value;
}

ExpressioResult verify_expressio(const KernelExpansion& k, const BConstruction& bc, const SPolynomial& s,
                                 const std::vector<std::vector<double>>& points, double tol) {
  ExpressioResult res;
  const KernelEvaluator kernel(k);
  for (const auto& x : points) {
    ExpressioPoint p;
    p.x = x;
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    const bool outside = r2 > 1.0;
    p.lhs = outside ? kernel(x) : 0.0;
    p.tb = convolve_with_b(k, bc, x, tol, &p.converged);
    p.s = outside ? 0.0 : s.eval(x);
    p.residual = std::abs(p.lhs - p.tb - p.s);
    res.max_residual = std::max(res.max_residual, p.residual);
    res.all_converged = res.all_converged && p.converged;
    res.points.push_back(std::move(p));
  }
  return res;
}

std::vector<std::vector<double>> expressio_sample_points() {
  std::vector<std::vector<double>> pts;
  for (double r : {1.1, 1.6, 2.2, 3.0})
    for (double a : {0.2, 1.3, 2.5, 3.7}) pts.push_back({r * std::cos(a), r * std::sin(a)});
  pts.push_back({1.5, 1.5});
  pts.push_back({2.0, 0.0});
  pts.push_back({0.0, -1.25});
  pts.push_back({-2.9, 0.5});
  return pts;
}

double b_fourier_abs(const BConstruction& bc, double rho) {
  const int n = bc.n;
  if (rho == 0.0) {
    auto f = [&](double r) { return bc.b_value(r) * std::pow(r, n - 1); };
    return std::abs(sphere_area(n) * integrate(f, 0.0, 1.0, 1e-13).value);
  }
  const double nu = 0.5 * n - 1.0;
  auto f = [&](double r) { return bc.b_value(r) * std::cyl_bessel_j(nu, 2.0 * kPi * rho * r) * std::pow(r, 0.5 * n); };
  const double v = integrate(f, 0.0, 1.0, 1e-13, 0.0, 4000).value;
  return std::abs(2.0 * kPi * std::pow(rho, 1.0 - 0.5 * n) * v);
}

std::string bfun_to_json(const BConstruction& bc, const std::optional<SPolynomial>& s,
                         const std::optional<ExpressioResult>& verify) {
  json j;
  j["n"] = bc.n;
  j["N"] = bc.N;
  j["unit"] = "1/|S^{n-1}|";
  j["unit_value"] = bc.unit();
  j["fundamental"] = {{"s", bc.fundamental.s},
                      {"a", to_string(bc.fundamental.a_const)},
                      {"b", to_string(bc.fundamental.b_const)},
                      {"has_log", bc.fundamental.has_log}};
  json a = json::array(), al = json::array(), alv = json::array(), res = json::array();
  for (const auto& x : bc.A) a.push_back(to_string(x));
  for (const auto& x : bc.alpha) {
    al.push_back(to_string(x));
    alv.push_back(x.get_d() * bc.unit());
  }
  for (const auto& x : bc.matching_residuals) res.push_back(to_string(x));
  j["A"] = a;
  j["alpha"] = al;
  j["alpha_value"] = alv;
  j["matching_residuals"] = res;
  j["b_sup_bound"] = bc.b_sup_bound();
  if (s) {
    json parts = json::array();
    for (const auto& [d, h] : s->rational_part.parts()) parts.push_back({{"degree", d}, {"poly", to_text(h)}});
    j["S"] = {{"rational_part", parts}, {"sqrt_pi_power", s->sqrt_pi_power}, {"is_zero", s->is_zero()}};
  }
  if (verify) {
    json rows = json::array();
    for (const auto& p : verify->points)
      rows.push_back({{"x", p.x}, {"lhs", p.lhs}, {"Tb", p.tb}, {"S", p.s}, {"residual", p.residual},
                      {"converged", p.converged}});
    j["verify"] = {{"points", rows}, {"max_residual", verify->max_residual}, {"all_converged", verify->all_converged}};
  }
  return j.dump(2);
}

}  // namespace czk
