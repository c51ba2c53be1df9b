#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "czk/kernel.hpp"

namespace czk {

struct Quotient {
  int degree;  // j
  HomPoly q;   // Q_{j - j0} with P_j = P_{j0} * Q
};

struct DivisibilityResult {
  std::vector<Quotient> quotients;  // complete when ok()
  std::optional<int> failing_degree;
  bool ok() const { return !failing_degree; }
};

DivisibilityResult divisibility_chain(const KernelExpansion& k);

// Real form of sum_j gamma_j Q_{j-j0} on the sphere after removing the common
// phase (1 for even kernels, -i for odd ones). Held exactly:
//   F = pi^{sqrt_pi_power/2} * homogenized(xi)
// where homogenized = sum_j c_j Q_{j-j0} |xi|^{j_max - j}, c_j rational.
struct CriterionFunction {
  int n = 0;
  std::vector<std::pair<int, Rational>> coefficients;  // (j, c_j)
  HomPoly homogenized{1, 0};
  int sqrt_pi_power = 0;

  double scale() const;  // pi^{sqrt_pi_power/2}
  double eval(std::span<const double> unit_xi) const;
  // Exact value of homogenized at q/|q| (then scaled); q need not be unit.
  double eval_exact_projected(std::span<const double> q) const;
  // scale * sum|coeffs of homogenized|
  double coefficient_norm() const;
  // scale * degree * sum|coeffs|: Lipschitz bound on the unit ball.
  double lipschitz_bound() const;
};

CriterionFunction criterion_function(const KernelExpansion& k, const std::vector<Quotient>& quotients);

enum class Verdict { certified_pass, certified_fail, fail_divisibility, inconclusive, inconclusive_sampled };

std::string_view to_string(Verdict v);

struct CertifyOptions {
  int start_level = 0;
  int max_level = 6;
  double fail_relative_threshold = 1e-9;
  int newton_starts = 8;
  int newton_iterations = 200;
};

struct Certification {
  Verdict verdict = Verdict::inconclusive;
  double min_abs_sampled = 0.0;
  std::vector<double> argmin;
  double lipschitz_bound = 0.0;
  double grid_spacing = 0.0;  // covering radius of the final grid
  int grid_level = 0;
  std::size_t grid_points = 0;
  bool grid_certified = false;
  std::optional<std::vector<double>> witness;
  double witness_abs_value = 0.0;  // exact re-evaluation
};

Certification certify_nonvanishing(const CriterionFunction& f, const CertifyOptions& opts = {});

struct CriterionReport {
  int theorem = 1;  // 1 for even kernels, 2 for odd
  Parity parity = Parity::even;
  int n = 0;
  int j0 = 0;
  DivisibilityResult divisibility;
  std::optional<CriterionFunction> function;
  Certification certification;
  Verdict verdict = Verdict::inconclusive;
};

CriterionReport check_condition_c(const KernelExpansion& k, const CertifyOptions& opts = {});

std::string report_to_json(const CriterionReport& r);

}  // namespace czk
