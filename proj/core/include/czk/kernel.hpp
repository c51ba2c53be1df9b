#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "czk/hompoly.hpp"

namespace czk {

enum class Parity { even, odd };

std::string_view to_string(Parity p);

struct KernelTerm {
  int degree;  // j >= 1
  HomPoly harmonic;  // P_j, homogeneous harmonic of degree j
};

// Omega(x) = sum_j P_j(x) / |x|^j, i.e. K(x) = sum_j P_j(x) / |x|^{j+n}.
//
// Invariants (checked on construction): at least one term; degrees strictly
// increasing, >= 1, all of the declared parity; each P_j nonzero, of degree
// j and exactly harmonic.
class KernelExpansion {
 public:
  KernelExpansion(int n, std::vector<KernelTerm> terms);

  int dim() const { return n_; }
  Parity parity() const { return parity_; }
  const std::vector<KernelTerm>& terms() const { return terms_; }
  int lowest_degree() const { return terms_.front().degree; }
  int top_degree() const { return terms_.back().degree; }

  KernelExpansion scaled(const Rational& c) const;

  // sum_j P_j(x) |x|^{d - j} with d = top_degree(): the numerator R of
  // Omega = R / |x|^d.
  HomPoly numerator() const;

  friend bool operator==(const KernelExpansion& a, const KernelExpansion& b);

 private:
  int n_;
  Parity parity_;
  std::vector<KernelTerm> terms_;
};

class KernelSpecError : public std::runtime_error {
 public:
  enum class Kind { malformed, inhomogeneous, mixed_parity, nonzero_mean, zero_kernel };
  KernelSpecError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Kernel-spec document (JSON):
//   { "n": 2,
//     "numerator": [ {"exponents": [1,1], "coeff": "1/1"}, ... ],
//     "denominator_power": 2 }
// describing Omega = R(x) / |x|^d. R is split into spherical harmonics; a
// constant component (nonzero sphere mean) is rejected.
KernelExpansion parse_kernel(std::string_view json_text);
KernelExpansion kernel_from_numerator(const HomPoly& numerator, int denominator_power);

// Inverse of parse_kernel: emits the numerator/denominator form.
std::string serialize_kernel(const KernelExpansion& k);

// gamma_k = i^{-k} pi^{n/2} Gamma(k/2) / Gamma((n+k)/2), held exactly as
// phase * rational * pi^{sqrt_pi_power / 2}.
struct GammaCoeff {
  int k = 0;
  int n = 0;
  int phase_class = 0;  // k mod 4: i^{-k} = 1, -i, -1, i
  Rational rational_part;
  int sqrt_pi_power = 0;

  double magnitude() const;
  std::complex<double> phase() const;
  std::complex<double> value() const { return phase() * magnitude(); }
};

GammaCoeff gamma(int k, int n);

// Exact Gamma(m/2) = rational * sqrt(pi)^{m mod 2} for integer m >= 1.
Rational gamma_half_rational(int m);

// Fourier multiplier m(xi) = sum_j gamma_j P_j(xi) / |xi|^j (xi != 0).
// Transform convention: f^(xi) = int f(x) exp(-2 pi i x.xi) dx.
class Multiplier {
 public:
  explicit Multiplier(const KernelExpansion& k);
  std::complex<double> operator()(std::span<const double> xi) const;
  int dim() const { return n_; }

 private:
  int n_;
  std::vector<int> degrees_;
  std::vector<std::complex<double>> gammas_;
  std::vector<FastPoly> polys_;
};

std::complex<double> multiplier_eval(const KernelExpansion& k, std::span<const double> xi);

// Pointwise K(x) = Omega(x)/|x|^n for x != 0, in double precision.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const KernelExpansion& k);
  double operator()(std::span<const double> x) const;
  // Omega(u) for |u| = 1.
  double omega_on_sphere(std::span<const double> u) const;
  int dim() const { return n_; }

 private:
  int n_;
  std::vector<int> degrees_;
  std::vector<FastPoly> polys_;
};

// sum_j j^M * (certified upper bound of sup_{S^{n-1}} |P_j|).
double smoothness_report(const KernelExpansion& k, int m);

}  // namespace czk
