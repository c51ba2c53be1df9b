#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "czk/hompoly.hpp"
#include "czk/linsolve.hpp"
#include "czk/rational.hpp"
#include "czk/sphere_grid.hpp"
#include "oracles.hpp"

using namespace czk;

namespace {

HomPoly x(int n, int i) { return HomPoly::variable(n, i); }
HomPoly c(int n, const Rational& v) { return HomPoly::constant(n, v); }

std::vector<Rational> random_point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  std::vector<Rational> p(n);
  for (auto& v : p) {
    v = num(rng);
    v /= den(rng);
  }
  return p;
}

}  // namespace

TEST_CASE("rational parsing is canonical") {
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("+7")) == "7/1");
  CHECK(parse_rational(" 3/9 ").get_den() == 3);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(czk::pow(Rational(-2, 3), 3) == Rational(-8, 27));
  CHECK(from_double(0.375) == Rational(3, 8));
}

TEST_CASE("HomPoly invariants") {
  HomPoly p(2, 2);
  p.add_term({1, 1}, 3);
  CHECK_THROWS_AS(p.add_term({1, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.add_term({1, 1, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.add_term({-1, 3}, 1), std::invalid_argument);
  p.add_term({1, 1}, -3);
  CHECK(p.is_zero());
  CHECK(p.size() == 0);
  // zero adopts any degree in arithmetic
  HomPoly z(2, 5);
  z += x(2, 0) * x(2, 1);
  CHECK(z == x(2, 0) * x(2, 1));
  CHECK(HomPoly(2, 3) == HomPoly(2, 7));
}

TEST_CASE("eval examples") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  CHECK((x1 * x2).eval(std::vector<double>{3, 4}) == 12.0);
  CHECK((x1 * x1 - x2 * x2).eval(std::vector<double>{1, 1}) == 0.0);
  CHECK((x1 * x2 * (x1 * x1 - x2 * x2)).eval(std::vector<double>{2, 1}) == 6.0);
  CHECK_THROWS((x1 * x2).eval(std::vector<double>{1, 2, 3}));
}

TEST_CASE("laplacian examples") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  CHECK(laplacian(x1 * x2).is_zero());
  CHECK(laplacian(HomPoly::norm_power(3, 1)) == c(3, 6));
  CHECK(laplacian(x1 * x1 * x1 * x1) == Rational(12) * x1 * x1);
  CHECK(laplacian(x1).is_zero());
}

TEST_CASE("laplacian is linear") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 3, d = t % 7;
    const auto p = oracle::random_hompoly(rng, n, d), r = oracle::random_hompoly(rng, n, d);
    const Rational a = Rational(t - 4) / 3, b = Rational(5) / (t + 1);
    CHECK(laplacian(a * p + b * r) == a * laplacian(p) + b * laplacian(r));
  }
}

TEST_CASE("harmonic_decompose examples") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  auto d = harmonic_decompose(x1 * x2);
  REQUIRE(d.size() == 1);
  CHECK(d[0].k == 0);
  CHECK(d[0].harmonic == x1 * x2);

  d = harmonic_decompose(x1 * x1);
  REQUIRE(d.size() == 2);
  CHECK(d[0].k == 0);
  CHECK(d[0].harmonic == Rational(1, 2) * (x1 * x1 - x2 * x2));
  CHECK(d[1].k == 1);
  CHECK(d[1].harmonic == c(2, Rational(1, 2)));

  d = harmonic_decompose(HomPoly::norm_power(3, 1));
  REQUIRE(d.size() == 1);
  CHECK(d[0].k == 1);
  CHECK(d[0].harmonic == c(3, 1));

  CHECK(harmonic_decompose(HomPoly(3, 4)).empty());
}

TEST_CASE("harmonic_decompose agrees with an independent linear solve") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 3;
    const int d = t % (n == 4 ? 6 : 8) + 1;
    const auto p = oracle::random_hompoly(rng, n, d, 0.6);
    const auto expected = oracle::harmonic_by_linear_solve(p);
    const auto got = harmonic_decompose(p);
    REQUIRE(got.size() == expected.size());
    for (const auto& comp : got) {
      REQUIRE(expected.count(comp.k) == 1);
      CHECK(comp.harmonic == expected.at(comp.k));
    }
  }
}

TEST_CASE("harmonic_decompose reconstructs exactly (random, n <= 4, d <= 8)") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 3, d = t % 9;
    const auto p = oracle::random_hompoly(rng, n, d);
    HomPoly sum(n, d);
    int last_k = -1;
    for (const auto& comp : harmonic_decompose(p)) {
      CHECK(comp.k > last_k);
      last_k = comp.k;
      CHECK(comp.harmonic.degree() == d - 2 * comp.k);
      CHECK(laplacian(comp.harmonic).is_zero());
      CHECK_FALSE(comp.harmonic.is_zero());
      sum += HomPoly::norm_power(n, comp.k) * comp.harmonic;
    }
    CHECK(sum == p);
  }
}

TEST_CASE("exact_divide examples") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  const auto d = x1 * x2;
  const auto q = exact_divide(d * (x1 * x1 - x2 * x2), d);
  REQUIRE(q);
  CHECK(*q == x1 * x1 - x2 * x2);

  const auto p4 = x1 * x1 * x1 * x1 - Rational(6) * x1 * x1 * x2 * x2 + x2 * x2 * x2 * x2;
  CHECK_FALSE(exact_divide(p4, d).has_value());

  const auto self = exact_divide(p4, p4);
  REQUIRE(self);
  CHECK(*self == c(2, 1));

  // Zero dividend divides to zero; lower-degree dividends do not divide.
  const auto z = exact_divide(HomPoly(2, 4), d);
  REQUIRE(z);
  CHECK(z->is_zero());
  CHECK_FALSE(exact_divide(x1, d).has_value());
  CHECK_THROWS(exact_divide(d, HomPoly(2, 1)));
}

TEST_CASE("exact_divide agrees with brute-force solvability") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 2;
    const auto dvs = oracle::random_hompoly(rng, n, 1 + t % 3, 0.7);
    if (dvs.is_zero()) continue;
    const auto p = oracle::random_hompoly(rng, n, dvs.degree() + 2, 0.7);
    // Brute force: solve the monomial matching system for Q directly.
    const auto qbasis = oracle::monomials(n, 2);
    const auto pbasis = oracle::monomials(n, p.degree());
    std::vector<std::vector<Rational>> a(pbasis.size(), std::vector<Rational>(qbasis.size()));
    std::vector<Rational> b(pbasis.size());
    for (std::size_t r = 0; r < pbasis.size(); ++r) b[r] = p.coeff(pbasis[r]);
    for (std::size_t u = 0; u < qbasis.size(); ++u)
      for (const auto& [e, cf] : dvs.terms()) {
        Exponent s = e;
        for (int i = 0; i < n; ++i) s[i] += qbasis[u][i];
        a[oracle::index_of(pbasis, s)][u] += cf;
      }
    const bool solvable = !oracle::gauss_solve(a, b).empty() || p.is_zero();
    CHECK(exact_divide(p, dvs).has_value() == solvable);
  }
}

TEST_CASE("exact_divide round-trips random products") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 3;
    const auto dvs = oracle::random_hompoly(rng, n, 1 + t % 4, 0.6);
    const auto q = oracle::random_hompoly(rng, n, t % 5, 0.6);
    if (dvs.is_zero()) continue;
    const auto got = exact_divide(dvs * q, dvs);
    REQUIRE(got);
    CHECK(*got == q);
    CHECK(dvs * *got == dvs * q);
  }
}

TEST_CASE("apply_diff_op examples") {
  const auto x1 = x(2, 0), x2 = x(2, 1);
  CHECK(apply_diff_op(x1, Poly(x1 * x1)) == Poly(Rational(2) * x1));
  CHECK(apply_diff_op(x1 * x2, Poly(HomPoly::norm_power(2, 1))).is_zero());
  CHECK(apply_diff_op(x1 * x1 + x2 * x2, Poly(x1 * x1 * x2 * x2)) ==
        Poly(Rational(2) * x2 * x2 + Rational(2) * x1 * x1));
  // mixed-degree target
  Poly target(HomPoly::norm_power(2, 1));
  target += HomPoly::norm_power(2, 2);
  Poly expected(c(2, 4));
  expected += Rational(16) * x1 * x1 + Rational(16) * x2 * x2;
  CHECK(apply_diff_op(x1 * x1 + x2 * x2, target) == expected);
}

TEST_CASE("Euler identity at random rational points") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 3, d = t % 8;
    const auto p = oracle::random_hompoly(rng, n, d);
    const auto pt = random_point(rng, n);
    Rational lhs = 0;
    for (int i = 0; i < n; ++i) lhs += pt[i] * p.partial(i).eval_exact(pt);
    CHECK(lhs == Rational(d) * p.eval_exact(pt));
  }
}

TEST_CASE("eval rounds the exact value once") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 3;
    const auto p = oracle::random_hompoly(rng, n, 1 + t % 8);
    std::vector<double> pt(n);
    for (auto& v : pt) v = u(rng);
    const double got = p.eval(pt);
    const long double ref = oracle::eval_direct(p, pt);
    CHECK(std::abs(got - static_cast<double>(ref)) <= 1e-12 * (1.0 + std::abs(static_cast<double>(ref))));
  }
}

TEST_CASE("FastPoly matches exact evaluation and gradient") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 3;
    const auto p = oracle::random_hompoly(rng, n, 1 + t % 6);
    const FastPoly fp(p);
    std::vector<double> pt(n), grad(n);
    for (auto& v : pt) v = u(rng);
    const double val = fp.value_and_gradient(pt, grad);
    CHECK(val == doctest::Approx(p.eval(pt)).epsilon(1e-12));
    CHECK(fp(pt) == doctest::Approx(p.eval(pt)).epsilon(1e-12));
    for (int i = 0; i < n; ++i) CHECK(grad[i] == doctest::Approx(p.partial(i).eval(pt)).epsilon(1e-11));
  }
}

TEST_CASE("sphere_sup examples") {
  auto b = sphere_sup(c(2, 1));
  CHECK(b.sampled_sup == 1.0);
  CHECK(b.certified_upper == 1.0);

  b = sphere_sup(x(2, 0));
  CHECK(b.sampled_sup == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.certified_upper >= 1.0);

  b = sphere_sup(x(2, 0) * x(2, 1));
  CHECK(b.sampled_sup == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(b.certified_upper >= 0.5);
}

TEST_CASE("sphere_sup bracket tightens under refinement") {
  std::mt19937_64 rng(17);
  for (int n : {2, 3, 4}) {
    const auto p = oracle::random_hompoly(rng, n, 3, 0.8);
    if (p.is_zero()) continue;
    const auto coarse = sphere_sup(p, 0), fine = sphere_sup(p, 3);
    CHECK(coarse.sampled_sup <= coarse.certified_upper);
    CHECK(fine.sampled_sup <= fine.certified_upper);
    CHECK(fine.certified_upper - fine.sampled_sup <= coarse.certified_upper - coarse.sampled_sup + 1e-12);
  }
}

TEST_CASE("sphere grids cover the sphere") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  for (int n : {2, 3, 4}) {
    const auto grid = make_sphere_grid(n, 1);
    REQUIRE(grid.certified);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double r2 = 0.0;
      for (double v : grid.point(i)) r2 += v * v;
      CHECK(r2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    // random unit vectors are within the covering radius of some grid point
    for (int t = 0; t < 200; ++t) {
      std::vector<double> u(n);
      double r2 = 0.0;
      for (auto& v : u) r2 += (v = g(rng)) * v;
      for (auto& v : u) v /= std::sqrt(r2);
      double best = 1e9;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        double d2 = 0.0;
        for (int k = 0; k < n; ++k) d2 += (u[k] - grid.point(i)[k]) * (u[k] - grid.point(i)[k]);
        best = std::min(best, std::sqrt(d2));
      }
      CHECK(best <= grid.covering_radius + 1e-12);
    }
  }
  CHECK_FALSE(make_sphere_grid(5, 0).certified);
}

TEST_CASE("canonical text round-trips") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3, d = t % 6;
    const auto p = oracle::random_hompoly(rng, n, d);
    CHECK(hompoly_from_text(to_text(p), n, d) == p);
  }
  const auto x1 = x(2, 0), x2 = x(2, 1);
  CHECK(to_text(x1 * x1 - Rational(1, 2) * x2 * x2) == "2,0:1/1; 0,2:-1/2");
  CHECK(to_text(HomPoly(2, 3)) == "0");
}

TEST_CASE("solve_exact handles unique, singular and inconsistent systems") {
  RationalMatrix a(2, 2);
  a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 3;
  auto s = solve_exact(a, {3, 4});
  REQUIRE(s);
  CHECK(s->unique);
  CHECK(s->x[0] == 1);
  CHECK(s->x[1] == 1);

  RationalMatrix b(2, 2);
  b(0, 0) = 1; b(0, 1) = 1; b(1, 0) = 2; b(1, 1) = 2;
  CHECK_FALSE(solve_exact(b, {1, 3}).has_value());
  s = solve_exact(b, {1, 2});
  REQUIRE(s);
  CHECK_FALSE(s->unique);
  CHECK(s->rank == 1);
}
