#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "czk/kernel.hpp"

namespace czk {

// Surface area of S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);
// Volume of the unit ball in R^n.
double ball_volume(int n);

// Fundamental solution of Lap^N in R^n,
//   E(x) = u |x|^s (a + b log |x|^2),  s = 2N - n,  u = 1 / |S^{n-1}|,
// with a, b exact rationals. When the log term is present the r^s part is
// polyharmonic of order N and the gauge a = 0 is used.
struct FundamentalSolution {
  int n = 0;
  int N = 0;
  int s = 0;
  Rational a_const;
  Rational b_const;
  bool has_log = false;

  double unit() const { return 1.0 / sphere_area(n); }
  double eval(double r) const;
};

FundamentalSolution fundamental_solution(int n, int N);

// Radial coefficients of Lap^m E = u r^{s-2m} (a_m + b_m log r^2), m = 0..count-1.
std::vector<std::pair<Rational, Rational>> fundamental_laplacian_chain(const FundamentalSolution& e, int count);

// psi(x) = (1 - |x/scale|^2)^power on the ball of radius scale; needs power >= 2N
// for Lap^N psi to be a function.
struct TestBump {
  int power = 4;
  double scale = 1.0;
};

struct FundamentalCheck {
  double integral = 0.0;  // int E Lap^N psi
  double expected = 0.0;  // psi(0)
  double residual = 0.0;
  bool converged = false;
};

FundamentalCheck verify_fundamental(const FundamentalSolution& e, const TestBump& bump = {}, double tol = 1e-12);

// phi = E outside the unit ball, sum_i A_i |x|^{2i} inside (i < 2N), glued so
// that Lap^m phi and its radial derivative are continuous at r = 1 for
// m < N; then Lap^N phi = b = sum_i alpha_i |x|^{2i} chi_B. All coefficients
// are exact multiples of u = 1/|S^{n-1}|.
struct BConstruction {
  int n = 0;
  int N = 0;
  FundamentalSolution fundamental;
  std::vector<Rational> A;      // 2N entries
  std::vector<Rational> alpha;  // N entries
  // interior minus exterior: value and radial derivative of Lap^m, m < N
  std::vector<Rational> matching_residuals;

  double unit() const { return fundamental.unit(); }
  // b(x) for |x| = r
  double b_value(double r) const;
  // sup_B |b| <= u * sum |alpha_i|
  double b_sup_bound() const;
  // Interior polynomial sum_i A_i |x|^{2i} as an exact Poly (units of u).
  Poly interior_polynomial() const;
};

BConstruction solve_matching(int n, int N);

// S = -Q(partial)(sum_i A_i |x|^{2i}) where Q = sum_j gamma_j P_j |x|^{2N-j}.
// Exact form: S = u * pi^{sqrt_pi_power/2} * rational_part.
struct SPolynomial {
  Poly rational_part{1};
  int sqrt_pi_power = 0;
  double unit = 1.0;

  double eval(std::span<const double> x) const;
  bool is_zero() const { return rational_part.is_zero(); }
  int degree() const { return rational_part.max_degree(); }
};

// Q(x) with the gamma magnitudes' common pi power factored out.
HomPoly symbol_numerator(const KernelExpansion& k, int* sqrt_pi_power = nullptr);

SPolynomial compute_S(const KernelExpansion& k, const BConstruction& bc);

// Checks K chi_{|x|>1} = T(b) + S chi_B at sample points; T(b)(x) is the
// (principal value) convolution of K with b computed in polar coordinates
// centered at x with adaptive quadrature. n in {2, 3}.
struct ExpressioPoint {
  std::vector<double> x;
  double lhs = 0.0;  // K(x) chi_{B^c}(x)
  double tb = 0.0;   // T(b)(x)
  double s = 0.0;    // S(x) chi_B(x)
  double residual = 0.0;
  bool converged = false;
};

struct ExpressioResult {
  std::vector<ExpressioPoint> points;
  double max_residual = 0.0;
  bool all_converged = true;
};

double convolve_with_b(const KernelExpansion& k, const BConstruction& bc, std::span<const double> x, double tol,
                       bool* converged = nullptr);

ExpressioResult verify_expressio(const KernelExpansion& k, const BConstruction& bc, const SPolynomial& s,
                                 const std::vector<std::vector<double>>& points, double tol = 1e-10);

// Shipped sample set: 20 points in the plane with 1.1 <= |x| <= 3.
std::vector<std::vector<double>> expressio_sample_points();

// |b^(xi)| for radial b via the Hankel transform, |xi| = rho.
double b_fourier_abs(const BConstruction& bc, double rho);

std::string bfun_to_json(const BConstruction& bc, const std::optional<SPolynomial>& s,
                         const std::optional<ExpressioResult>& verify);

}  // namespace czk
