// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "czk/bsolve.hpp"
#include "czk/criterion.hpp"
#include "czk/numerics.hpp"
#include "oracles.hpp"

using namespace czk;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

HomPoly x(int n, int i) { return HomPoly::variable(n, i); }

KernelExpansion load(const std::string& name) {
  std::ifstream in(std::string(CZK_DATA_DIR) + "/kernels/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_kernel(ss.str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double l2(const GridField& f) { return norm(f, 2.0); }

double l2_diff(const GridField& a, const GridField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) s += std::norm(a.samples[i] - b.samples[i]);
  return std::sqrt(s * a.grid.cell_volume());
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

void criterion1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(2, 4), deg(0, 8);
  int checked = 0, bad_recon = 0, bad_harm = 0, bad_oracle = 0, bad_div = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = dim(rng), d = deg(rng);
    HomPoly p = oracle::random_hompoly(rng, n, d, 0.6);
    while (p.is_zero()) p = oracle::random_hompoly(rng, n, d, 1.0);

    const auto parts = harmonic_decompose(p);
    HomPoly recon(n, p.degree());
    for (const auto& c : parts) {
      if (!laplacian(c.harmonic).is_zero()) ++bad_harm;
      recon += HomPoly::norm_power(n, c.k) * c.harmonic;
    }
    if (!(recon == p)) ++bad_recon;

    const auto ref = oracle::harmonic_by_linear_solve(p);
    std::map<int, HomPoly> got;
    for (const auto& c : parts) got.emplace(c.k, c.harmonic);
    if (got != ref) ++bad_oracle;

    // exact_divide round trip on P = D * Q with a random nonzero divisor
    HomPoly dv(n, 0);
    do dv = oracle::random_hompoly(rng, n, 1 + trial % 3, 0.7);
    while (dv.is_zero());
    const auto q = exact_divide(p * dv, dv);
    if (!q || !(*q == p)) ++bad_div;
    ++checked;
  }
  const double secs = seconds_since(t0);
  o.detail << checked << " polynomials; reconstruction " << bad_recon << " bad, harmonicity " << bad_harm
           << " bad, oracle " << bad_oracle << " bad, exact_divide " << bad_div << " bad; " << secs << " s";
  o.require(bad_recon == 0 && bad_harm == 0 && bad_oracle == 0 && bad_div == 0, "exactness");
  o.require(secs <= 60.0, "runtime <= 60 s");
}

void criterion2(Outcome& o) {
  const std::complex<double> i(0.0, 1.0);
  struct Case {
    int k;
    std::complex<double> expected;
    int phase;
    Rational rational;
  } cases[] = {{1, -2.0 * pi * i, 1, Rational(2)}, {2, -pi, 2, Rational(1)}, {4, pi / 2, 0, Rational(1) / Rational(2)}};
  for (const auto& c : cases) {
    const auto g = gamma(c.k, 2);
    const double err = std::abs(g.value() - c.expected);
    // independent closed form: pi^{n/2} Gamma(k/2) / Gamma((n+k)/2)
    const double mag = pi * oracle::gamma_ratio(c.k / 2.0, (2 + c.k) / 2.0);
    o.detail << "gamma_" << c.k << " err " << err << "; ";
    o.require(err <= 1e-10, "gamma_" + std::to_string(c.k) + " value");
    o.require(std::abs(g.magnitude() - mag) <= 1e-10 * mag, "gamma_" + std::to_string(c.k) + " closed form");
    o.require(g.phase_class == c.phase, "gamma_" + std::to_string(c.k) + " phase class");
    o.require(g.rational_part == c.rational && g.sqrt_pi_power == 2, "gamma_" + std::to_string(c.k) + " exact form");
  }
}

void criterion3(Outcome& o) {
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = check_condition_c(load("cfamily_c1.json"));
    const double secs = seconds_since(t0);
    o.detail << "c=1 " << to_string(r.verdict) << " min " << r.certification.min_abs_sampled << " (" << secs
             << " s); ";
    o.require(r.verdict == Verdict::certified_pass, "c=1 verdict");
    o.require(std::abs(r.certification.min_abs_sampled - pi / 2) <= 1e-6, "c=1 min |F|");
    o.require(secs <= 10.0, "c=1 runtime");
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = check_condition_c(load("cfamily_c1_2.json"));
    const double secs = seconds_since(t0);
    const auto& w = r.certification.witness;
    double dist = 1e300;
    if (w) dist = std::min(std::hypot((*w)[0], (*w)[1] - 1.0), std::hypot((*w)[0], (*w)[1] + 1.0));
    o.detail << "c=1/2 " << to_string(r.verdict) << " witness distance " << dist << " (" << secs << " s); ";
    o.require(r.verdict == Verdict::certified_fail, "c=1/2 verdict");
    o.require(dist <= 1e-3, "c=1/2 witness");
    o.require(secs <= 10.0, "c=1/2 runtime");
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = check_condition_c(load("divisibility_failure.json"));
    const double secs = seconds_since(t0);
    const int deg = r.divisibility.failing_degree.value_or(-1);
    o.detail << "divisibility " << to_string(r.verdict) << "(" << deg << ") (" << secs << " s)";
    o.require(r.verdict == Verdict::fail_divisibility && deg == 4, "divisibility failure at degree 4");
    o.require(secs <= 10.0, "divisibility runtime");
  }
}

void criterion4(Outcome& o) {
  for (int n = 2; n <= 6; ++n) {
    const auto bc = solve_matching(n, 1);
    // 1/|B| = n / |S^{n-1}|, i.e. n in units of 1/omega
    o.require(bc.alpha.size() == 1 && bc.alpha[0] == Rational(n), "alpha_0 for n=" + std::to_string(n));
    o.require(std::abs(bc.alpha[0].get_d() * bc.unit() - 1.0 / ball_volume(n)) <= 1e-14 / ball_volume(n),
              "alpha_0 value for n=" + std::to_string(n));
  }
  int nonzero = 0, cases = 0;
  for (int n = 2; n <= 4; ++n)
    for (int big_n = 1; big_n <= 4; ++big_n) {
      const auto bc = solve_matching(n, big_n);
      for (const auto& r : bc.matching_residuals)
        if (r != 0) ++nonzero;
      ++cases;
    }
  o.detail << "alpha_0 = n/omega for n=2..6; " << cases << " (n,N) pairs with " << nonzero
           << " nonzero residuals; ";
  o.require(nonzero == 0, "matching residuals");

  int identical = 0;
  for (int n = 2; n <= 4; ++n)
    for (int big_n = 1; big_n <= 4; ++big_n) {
      // Re and Im of (x1 + i x2)^{2N} are harmonic of degree 2N in any dimension
      HomPoly re = HomPoly::norm_power(n, 0), im(n, 0);
      for (int j = 0; j < 2 * big_n; ++j) {
        HomPoly nre = re * x(n, 0) - im * x(n, 1);
        im = re * x(n, 1) + im * x(n, 0);
        re = std::move(nre);
      }
      const KernelExpansion ka(n, {{2 * big_n, re}});
      std::vector<KernelTerm> terms{{2 * big_n, im}};
      if (big_n > 1) terms.insert(terms.begin(), KernelTerm{2, x(n, 0) * x(n, 1)});
      const KernelExpansion kb(n, terms);
      if (ka.top_degree() != kb.top_degree()) continue;
      const auto ba = solve_matching(n, ka.top_degree() / 2), bb = solve_matching(n, kb.top_degree() / 2);
      bool same = ba.alpha == bb.alpha && ba.A == bb.A;
      for (double r : {0.0, 0.25, 0.5, 0.999}) {
        const double va = ba.b_value(r), vb = bb.b_value(r);
        same = same && std::memcmp(&va, &vb, sizeof va) == 0;
      }
      compute_S(ka, ba);
      compute_S(kb, bb);
      if (same) ++identical;
    }
  o.detail << "b identical for " << identical << "/12 kernel pairs";
  o.require(identical == 12, "b independent of the kernel");
}

void criterion5(Outcome& o) {
  const int cases[][2] = {{2, 1}, {3, 1}, {2, 2}, {3, 2}};
  for (const auto& c : cases) {
    const auto chk = verify_fundamental(fundamental_solution(c[0], c[1]), TestBump{});
    o.detail << "(" << c[0] << "," << c[1] << ") " << chk.residual << "; ";
    o.require(chk.converged && chk.residual <= 1e-6, "residual for (" + std::to_string(c[0]) + "," +
                                                         std::to_string(c[1]) + ")");
  }
}

void criterion6(Outcome& o) {
  const KernelExpansion k(2, {{2, x(2, 0) * x(2, 1)}});
  const auto bc = solve_matching(2, 1);
  const auto s = compute_S(k, bc);
  o.require(s.is_zero(), "S = 0");
  o.require(std::abs(bc.b_value(0.5) - 1.0 / pi) <= 1e-15, "b = chi_B / pi");
  const auto pts = expressio_sample_points();
  const auto res = verify_expressio(k, bc, s, pts);
  const auto spot = verify_expressio(k, bc, s, {{1.5, 1.5}});
  const double spot_err = std::abs(spot.points[0].tb - 1.0 / 9.0);
  o.detail << pts.size() << " points, max residual " << res.max_residual << "; T(b)(1.5,1.5) - 1/9 = " << spot_err;
  o.require(pts.size() == 20 && res.all_converged, "20 converged points");
  o.require(res.max_residual <= 1e-6, "max residual");
  o.require(spot_err <= 1e-6, "spot value");
}

void criterion7(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const KernelExpansion k(2, {{2, x(2, 0) * x(2, 1)}});
  const auto m = kernel_multiplier(k);
  std::vector<double> rel;
  for (int g : {256, 512}) {
    const Grid grid(2, g, 32.0);
    const auto f = make_field(TestFunctionSpec::gaussian(1.0), grid);
    const auto t = truncated_transform(k, f, grid.spacing());
    const auto tm = multiplier_apply(m, f);
    rel.push_back(l2_diff(t, tm) / l2(f));
  }
  const double secs = seconds_since(t0);
  o.detail << "x1x2/|x|^4, gaussian, L=32: G=256 " << rel[0] << ", G=512 " << rel[1] << "; " << secs << " s";
  o.require(rel[0] <= 0.05, "G=256 within 5%");
  o.require(rel[1] < rel[0], "decrease at G=512");
  o.require(secs <= 300.0, "runtime");
}

void criterion8(Outcome& o) {
  const Grid grid(2, 512, 80.0);
  const auto m = kernel_multiplier(KernelExpansion(2, {{1, x(2, 0)}}));
  const std::vector<double> deltas{0.4, 0.2, 0.1};
  for (double p : {2.0, 3.0})
    for (const auto& w : {std::optional<PowerWeight>{}, std::optional<PowerWeight>{PowerWeight{0.5}}}) {
      const auto rows = localization_decay_experiment(m, {1.0, 0.0}, deltas, p, w, grid);
      std::vector<double> r;
      for (const auto& row : rows) r.push_back(row.ratio);
      o.detail << "p=" << p << (w ? " a=0.5" : " a=0") << ": " << r[0] << " " << r[1] << " " << r[2] << "; ";
      o.require(strictly_decreasing(r), "decreasing for p=" + std::to_string(p));
    }
}

void criterion9(Outcome& o) {
  const MultiplierSampler one = [](std::span<const double>) { return std::complex<double>(1.0); };
  const std::vector<double> radii{0.25, 0.5, 1.0, 2.0, 4.0};
  const auto est = msl_estimate(one, 2, 2.0, 0, radii);
  double worst = 0.0;
  for (double v : est.per_radius) worst = std::max(worst, std::abs(v / std::sqrt(3 * pi) - 1.0));
  o.detail << "m=1 worst relative deviation " << worst << "; windowed:";
  o.require(worst <= 0.01, "constant sqrt(3 pi)");

  const auto m = kernel_multiplier(KernelExpansion(2, {{1, x(2, 0)}}));
  std::vector<double> vals;
  for (double d : {0.4, 0.2, 0.1}) vals.push_back(msl_estimate(localized_multiplier(m, {1.0, 0.0}, d), 2, 1.5, 2, radii).value);
  for (double v : vals) o.detail << " " << v;
  o.require(strictly_decreasing(vals), "windowed decrease");
}

void criterion10(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<TestFunctionSpec> fields{TestFunctionSpec::gaussian(1.0), TestFunctionSpec::bump(2.0),
                                             TestFunctionSpec::gaussian(0.5)};
  const auto rows = pointwise_ratio_report(load("cfamily_c1.json"), fields, 1, 2, 8.0, {128, 256});
  double worst = 0.0;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const double a = rows[2 * f].sup_ratio, b = rows[2 * f + 1].sup_ratio;
    const double var = std::max(a, b) / std::min(a, b) - 1.0;
    worst = std::max(worst, var);
    o.detail << rows[2 * f].field << " " << a << " -> " << b << "; ";
    o.require(std::isfinite(var), "finite ratios");
  }
  o.require(worst < 0.5, "variation < 50%");
  const auto fail = pointwise_ratio_report(load("cfamily_c1_2.json"), fields, 1, 2, 8.0, {128, 256});
  o.detail << "c=1/2:";
  for (const auto& r : fail) o.detail << " " << r.sup_ratio;
  o.detail << " (" << seconds_since(t0) << " s)";
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                             criterion5, criterion6, criterion7, criterion8,
                                                             criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::printf("[PRIMARY] criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
