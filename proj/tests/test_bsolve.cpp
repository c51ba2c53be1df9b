#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "czk/bsolve.hpp"
#include "czk/quadrature.hpp"
#include "oracles.hpp"

using namespace czk;
using std::numbers::pi;

namespace {

HomPoly x(int n, int i) { return HomPoly::variable(n, i); }

KernelExpansion cfamily(const Rational& c) {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  return kernel_from_numerator(x1 * x2 * (x1 * x1 - x2 * x2 - c * HomPoly::norm_power(2, 1)), 4);
}

// T(b)(x) = int_B K(x - y) b(y) dy for |x| > 1, by tensor Gauss-Legendre in
// polar coordinates about the origin (n = 2).
double tb_reference(const KernelExpansion& k, const BConstruction& bc, double x0, double x1) {
  std::vector<double> gx, gw;
  gauss_legendre(48, gx, gw);
  const KernelEvaluator kern(k);
  const int panels = 8, angles = 2048;
  double total = 0.0;
  for (int pnl = 0; pnl < panels; ++pnl) {
    const double a = static_cast<double>(pnl) / panels, b = static_cast<double>(pnl + 1) / panels;
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double r = a + 0.5 * (b - a) * (1.0 + gx[q]);
      const double w = 0.5 * (b - a) * gw[q] * r * bc.b_value(r);
      double ring = 0.0;
      for (int t = 0; t < angles; ++t) {
        const double th = 2 * pi * t / angles;
        ring += kern(std::vector<double>{x0 - r * std::cos(th), x1 - r * std::sin(th)});
      }
      total += w * ring * 2 * pi / angles;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("fundamental solution examples") {
  auto e = fundamental_solution(2, 1);
  CHECK(e.has_log);
  CHECK(e.b_const == Rational(1, 2));
  CHECK(e.a_const == 0);
  CHECK(e.b_const.get_d() * e.unit() == doctest::Approx(1 / (4 * pi)).epsilon(1e-15));

  e = fundamental_solution(3, 1);
  CHECK_FALSE(e.has_log);
  CHECK(e.a_const == -1);
  CHECK(e.eval(2.0) == doctest::Approx(-1 / (4 * pi * 2.0)).epsilon(1e-14));

  e = fundamental_solution(2, 2);
  CHECK(e.has_log);
  CHECK(e.s == 2);
  CHECK(e.a_const == 0);
  CHECK(e.b_const != 0);

  // has_log iff 2N - n is a nonnegative even integer
  for (int n = 2; n <= 7; ++n)
    for (int N = 1; N <= 5; ++N) {
      const auto f = fundamental_solution(n, N);
      const int s = 2 * N - n;
      CHECK(f.has_log == (s >= 0 && s % 2 == 0));
      if (f.has_log) CHECK(f.b_const != 0);
    }
  CHECK_THROWS(fundamental_solution(1, 1));
  CHECK_THROWS(fundamental_solution(2, 0));
}

TEST_CASE("Laplacian chain ends at the Laplacian fundamental solution") {
  for (int n = 2; n <= 6; ++n)
    for (int N = 1; N <= 4; ++N) {
      const auto e = fundamental_solution(n, N);
      const auto chain = fundamental_laplacian_chain(e, N);
      const auto base = fundamental_solution(n, 1);
      // n = 2 may land on log r^2 plus a harmonic constant
      if (n > 2) CHECK(chain.back().first == base.a_const);
      CHECK(chain.back().second == base.b_const);
    }
}

TEST_CASE("verify_fundamental oracle") {
  for (auto [n, N] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 2}, {2, 3}}) {
    const auto e = fundamental_solution(n, N);
    TestBump bump;
    bump.power = std::max(4, 2 * N + 2);
    for (double scale : {0.5, 1.0, 2.0}) {
      bump.scale = scale;
      const auto chk = verify_fundamental(e, bump);
      CHECK(chk.converged);
      CHECK(chk.expected == 1.0);
      CHECK(chk.residual <= 1e-6);
    }
  }
  // doubling the constant leaves a defect equal to psi(0)
  auto wrong = fundamental_solution(2, 1);
  wrong.b_const *= 2;
  CHECK(verify_fundamental(wrong).residual == doctest::Approx(1.0).epsilon(1e-6));
  auto wrong3 = fundamental_solution(3, 1);
  wrong3.a_const *= 2;
  CHECK(verify_fundamental(wrong3).residual == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("solve_matching examples") {
  auto bc = solve_matching(2, 1);
  REQUIRE(bc.A.size() == 2);
  CHECK(bc.A[0] == Rational(-1, 2));
  CHECK(bc.A[1] == Rational(1, 2));
  CHECK(bc.A[0].get_d() * bc.unit() == doctest::Approx(-1 / (4 * pi)));
  REQUIRE(bc.alpha.size() == 1);
  CHECK(bc.b_value(0.3) == doctest::Approx(1 / pi).epsilon(1e-15));
  CHECK(bc.b_value(1.2) == 0.0);

  bc = solve_matching(3, 1);
  CHECK(bc.b_value(0.5) == doctest::Approx(3 / (4 * pi)).epsilon(1e-15));

  // alpha_0 = 1/|B| = n/omega_{n-1} exactly for N = 1
  for (int n = 2; n <= 6; ++n) {
    const auto b = solve_matching(n, 1);
    REQUIRE(b.alpha.size() == 1);
    CHECK(b.alpha[0] == n);
    CHECK(b.alpha[0].get_d() * b.unit() == doctest::Approx(1.0 / ball_volume(n)).epsilon(1e-14));
  }
}

TEST_CASE("matching residuals vanish exactly and the glued function is consistent") {
  for (int n = 2; n <= 4; ++n)
    for (int N = 1; N <= 4; ++N) {
      const auto bc = solve_matching(n, N);
      CHECK(bc.A.size() == static_cast<std::size_t>(2 * N));
      CHECK(bc.alpha.size() == static_cast<std::size_t>(N));
      for (const auto& r : bc.matching_residuals) CHECK(r == 0);
      // Independent check: Lap^N of the interior polynomial is sum alpha_i |x|^{2i}
      Poly lap = bc.interior_polynomial();
      for (int m = 0; m < N; ++m) lap = laplacian(lap);
      Poly expected(n);
      for (int i = 0; i < N; ++i) expected += bc.alpha[i] * HomPoly::norm_power(n, i);
      CHECK(lap == expected);
    }
}

TEST_CASE("b depends only on (n, N)") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  const auto ka = cfamily(1);
  const auto kb = KernelExpansion(2, {{4, x1 * x2 * (x1 * x1 - x2 * x2)}});
  REQUIRE(ka.top_degree() == kb.top_degree());
  const auto ba = solve_matching(2, ka.top_degree() / 2), bb = solve_matching(2, kb.top_degree() / 2);
  CHECK(ba.alpha == bb.alpha);
  CHECK(ba.A == bb.A);
  CHECK_NOTHROW(compute_S(ka, ba));
  CHECK_NOTHROW(compute_S(kb, bb));
}

TEST_CASE("compute_S examples") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  const auto k2 = KernelExpansion(2, {{2, x1 * x2}});
  CHECK(compute_S(k2, solve_matching(2, 1)).is_zero());
  const auto k4 = KernelExpansion(2, {{4, x1 * x2 * (x1 * x1 - x2 * x2)}});
  CHECK(compute_S(k4, solve_matching(2, 2)).is_zero());
  const auto s = compute_S(cfamily(1), solve_matching(2, 2));
  CHECK_FALSE(s.is_zero());
  CHECK(s.degree() <= 2);

  CHECK_THROWS(compute_S(KernelExpansion(2, {{1, x1}}), solve_matching(2, 1)));
  CHECK_THROWS(compute_S(k2, solve_matching(2, 2)));
}

TEST_CASE("decomposition identity at the shipped points") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  const auto k = KernelExpansion(2, {{2, x1 * x2}});
  const auto bc = solve_matching(2, 1);
  const auto s = compute_S(k, bc);
  const auto pts = expressio_sample_points();
  REQUIRE(pts.size() == 20);
  for (const auto& p : pts) {
    const double r = std::hypot(p[0], p[1]);
    CHECK(r >= 1.1 - 1e-12);
    CHECK(r <= 3.0 + 1e-12);
  }
  const auto res = verify_expressio(k, bc, s, pts);
  CHECK(res.all_converged);
  CHECK(res.max_residual <= 1e-6);

  const auto spot = verify_expressio(k, bc, s, {{1.5, 1.5}, {2.0, 0.0}});
  CHECK(spot.points[0].lhs == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(std::abs(spot.points[0].tb - 1.0 / 9.0) <= 1e-6);
  CHECK(std::abs(spot.points[1].tb) <= 1e-6);
}

TEST_CASE("T(b) agrees with an origin-centered quadrature") {
  const auto k = cfamily(1);
  const auto bc = solve_matching(2, 2);
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1.6, 0.4}, {-0.9, 1.7}, {0.3, -2.4}}) {
    const double got = convolve_with_b(k, bc, std::vector<double>{a, b}, 1e-10);
    CHECK(std::abs(got - tb_reference(k, bc, a, b)) <= 1e-8);
  }
}

TEST_CASE("decomposition identity with a nonzero S, inside and outside the ball") {
  const auto k = cfamily(1);
  const auto bc = solve_matching(2, 2);
  const auto s = compute_S(k, bc);
  const std::vector<std::vector<double>> pts{{1.3, 0.4}, {-1.1, 1.9}, {0.2, 0.3}, {-0.5, -0.1}, {0.0, 0.7}};
  const auto res = verify_expressio(k, bc, s, pts);
  CHECK(res.all_converged);
  CHECK(res.max_residual <= 1e-6);
}

TEST_CASE("decomposition identity in three dimensions") {
  const auto x1 = x(3, 0), x3 = x(3, 2);
  const auto k = KernelExpansion(3, {{2, x1 * x3}});
  const auto bc = solve_matching(3, 1);
  const auto s = compute_S(k, bc);
  const auto res = verify_expressio(k, bc, s, {{1.2, 0.5, 0.9}, {-0.4, 2.0, 1.0}});
  CHECK(res.all_converged);
  CHECK(res.max_residual <= 1e-6);
}

TEST_CASE("decomposition residual does not grow when the tolerance tightens") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  const auto k = KernelExpansion(2, {{2, x1 * x2}});
  const auto bc = solve_matching(2, 1);
  const auto s = compute_S(k, bc);
  const std::vector<std::vector<double>> pts{{1.05, 0.3}, {0.9, 0.8}};
  const double loose = verify_expressio(k, bc, s, pts, 1e-5).max_residual;
  const double tight = verify_expressio(k, bc, s, pts, 1e-6).max_residual;
  CHECK(tight <= loose + 1e-12);
  CHECK(tight <= 1e-6);
}

TEST_CASE("b transform is bounded and the sup norm grows polynomially") {
  std::vector<double> sup_norm;
  for (int N = 1; N <= 4; ++N) {
    const auto bc = solve_matching(2, N);
    double l1 = 0.0;
    {
      const auto f = [&](double r) { return std::abs(bc.b_value(r)) * 2 * pi * r; };
      l1 = integrate(f, 0.0, 1.0, 1e-12).value;
    }
    double mx = 0.0;
    for (double rho = 0.0; rho <= 8.0; rho += 0.25) mx = std::max(mx, b_fourier_abs(bc, rho));
    CHECK(mx <= l1 * (1 + 1e-9));
    CHECK(b_fourier_abs(bc, 0.0) == doctest::Approx(1.0).epsilon(1e-9));  // int b = 1
    sup_norm.push_back(bc.b_sup_bound());
  }
  // log-log slope of ||b||_inf against 2N stays below 2n + 2 + 1/2
  const double slope = std::log(sup_norm.back() / sup_norm.front()) / std::log(8.0 / 2.0);
  MESSAGE("sup-norm growth exponent over N = 1..4: " << slope);
  CHECK(slope <= 2 * 2 + 2 + 0.5);
}
