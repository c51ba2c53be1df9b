#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "czk/rational.hpp"

namespace czk {

using Exponent = std::vector<int>;

// Descending lexicographic order. Every term of a HomPoly has the same total
// degree, so this coincides with graded-lex; the leading term comes first.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

// Homogeneous polynomial in n variables with exact rational coefficients.
//
// Invariants: every stored exponent has length n and sums to degree(); no zero
// coefficient is stored. The zero polynomial has an empty term map and a
// nominal degree that is compatible with any degree in arithmetic.
class HomPoly {
 public:
  using Terms = std::map<Exponent, Rational, GrlexGreater>;

  HomPoly(int n, int degree);

  static HomPoly constant(int n, const Rational& c);
  static HomPoly variable(int n, int i);
  static HomPoly monomial(const Exponent& e, const Rational& c);
  // |x|^{2k}
  static HomPoly norm_power(int n, int k);

  int dim() const { return n_; }
  int degree() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const Exponent& e) const;

  // Adds c*x^e. Throws std::invalid_argument if e has the wrong length, a
  // negative entry, or a total degree different from degree() (a zero
  // polynomial adopts the degree of the first term added).
  void add_term(const Exponent& e, const Rational& c);

  HomPoly& operator+=(const HomPoly& o);
  HomPoly& operator-=(const HomPoly& o);
  HomPoly& operator*=(const Rational& c);

  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator*(HomPoly a, const Rational& c) { return a *= c; }
  friend HomPoly operator*(const Rational& c, HomPoly a) { return a *= c; }
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
  HomPoly operator-() const;

  // Equal iff the term maps are equal (nominal degree of zero is ignored).
  friend bool operator==(const HomPoly& a, const HomPoly& b);

  HomPoly partial(int i) const;

  Rational eval_exact(std::span<const Rational> x) const;
  // Exact rational accumulation of the sample point, rounded once at the end.
  double eval(std::span<const double> x) const;

  // Sum of |coefficients|.
  Rational l1_norm() const;

 private:
  int n_;
  int d_;
  Terms terms_;
};

// Sum of homogeneous parts, keyed by degree; zero parts are not stored.
class Poly {
 public:
  explicit Poly(int n) : n_(n) {}
  Poly(const HomPoly& p);  // NOLINT(google-explicit-constructor)

  int dim() const { return n_; }
  bool is_zero() const { return parts_.empty(); }
  const std::map<int, HomPoly>& parts() const { return parts_; }
  int max_degree() const { return parts_.empty() ? -1 : parts_.rbegin()->first; }

  // Homogeneous part of degree d (a zero HomPoly if absent).
  HomPoly part(int d) const;

  Poly& operator+=(const HomPoly& p);
  Poly& operator+=(const Poly& p);
  Poly& operator*=(const Rational& c);
  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.parts_ == b.parts_; }

  double eval(std::span<const double> x) const;

 private:
  int n_;
  std::map<int, HomPoly> parts_;
};

// Double-precision evaluator for hot sampling loops. Built from a HomPoly (or a
// sum of them) once; the exact object remains the source of truth.
class FastPoly {
 public:
  FastPoly() = default;
  explicit FastPoly(const HomPoly& p, double scale = 1.0);
  explicit FastPoly(const Poly& p, double scale = 1.0);

  int dim() const { return n_; }
  double operator()(std::span<const double> x) const;
  // Value and gradient (gradient written to grad, length n).
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const;

 private:
  void append(const HomPoly& p, double scale);

  int n_ = 0;
  int max_exp_ = 0;
  std::vector<double> coeffs_;
  std::vector<int> exps_;  // row-major, n_ entries per term
};

HomPoly laplacian(const HomPoly& p);
Poly laplacian(const Poly& p);

struct HarmonicComponent {
  int k;           // power of |x|^2
  HomPoly harmonic;  // degree d - 2k, exactly harmonic
};

// Unique decomposition P = sum_k |x|^{2k} H_{d-2k} with every H harmonic.
// Only nonzero components are returned, in increasing k.
std::vector<HarmonicComponent> harmonic_decompose(const HomPoly& p);

// Q with P = D*Q exactly, or nullopt if D does not divide P.
std::optional<HomPoly> exact_divide(const HomPoly& p, const HomPoly& d);

// Q(partial) applied to target: each monomial x^a of Q acts as d^a.
Poly apply_diff_op(const HomPoly& q, const Poly& target);

struct SphereBound {
  double sampled_sup;
  double certified_upper;
};

// Bounds on sup_{S^{n-1}} |P|; n >= 2. `level` controls sampling density.
SphereBound sphere_sup(const HomPoly& p, int level = 4);

// Lipschitz constant of P on the closed unit ball: degree * sum|coeff|.
Rational gradient_bound(const HomPoly& p);

// Canonical text: "e1,...,en:num/den" entries in graded-lex order joined by
// "; "; the zero polynomial is "0".
std::string to_text(const HomPoly& p);
HomPoly hompoly_from_text(std::string_view text, int n, int degree);

}  // namespace czk
