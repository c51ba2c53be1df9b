#include "czk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <json.hpp>

namespace czk {

using nlohmann::json;

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

KernelExpansion::KernelExpansion(int n, std::vector<KernelTerm> terms) : n_(n), terms_(std::move(terms)) {
  if (n < 1) throw std::invalid_argument("KernelExpansion: n must be >= 1");
  if (terms_.empty()) throw std::invalid_argument("KernelExpansion: no terms");
  parity_ = terms_.front().degree % 2 == 0 ? Parity::even : Parity::odd;
  int prev = 0;
  for (const auto& t : terms_) {
    if (t.degree < 1) throw std::invalid_argument("KernelExpansion: term degree must be >= 1");
    if (t.degree <= prev) throw std::invalid_argument("KernelExpansion: degrees must be strictly increasing");
    if ((t.degree - terms_.front().degree) % 2 != 0)
      throw std::invalid_argument("KernelExpansion: terms of mixed parity");
    if (t.harmonic.dim() != n) throw std::invalid_argument("KernelExpansion: term dimension mismatch");
    if (t.harmonic.is_zero()) throw std::invalid_argument("KernelExpansion: zero term");
    if (t.harmonic.degree() != t.degree) throw std::invalid_argument("KernelExpansion: term degree mismatch");
    if (!laplacian(t.harmonic).is_zero()) throw std::invalid_argument("KernelExpansion: term is not harmonic");
    prev = t.degree;
  }
}

KernelExpansion KernelExpansion::scaled(const Rational& c) const {
  if (c == 0) throw std::invalid_argument("KernelExpansion::scaled: zero factor");
  auto t = terms_;
  for (auto& term : t) term.harmonic *= c;
  return KernelExpansion(n_, std::move(t));
}

HomPoly KernelExpansion::numerator() const {
  const int d = top_degree();
  HomPoly r(n_, d);
  for (const auto& t : terms_) r += t.harmonic * HomPoly::norm_power(n_, (d - t.degree) / 2);
  return r;
}

bool operator==(const KernelExpansion& a, const KernelExpansion& b) {
  if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].degree != b.terms_[i].degree || !(a.terms_[i].harmonic == b.terms_[i].harmonic)) return false;
  return true;
}

KernelExpansion kernel_from_numerator(const HomPoly& numerator, int denominator_power) {
  using K = KernelSpecError::Kind;
  if (numerator.is_zero()) throw KernelSpecError(K::zero_kernel, "kernel numerator is zero");
  if (numerator.degree() != denominator_power)
    throw KernelSpecError(K::inhomogeneous, "numerator degree " + std::to_string(numerator.degree()) +
                                                " != denominator_power " + std::to_string(denominator_power));
  const int n = numerator.dim();
  std::vector<KernelTerm> terms;
  for (const auto& c : harmonic_decompose(numerator)) {
    const int j = numerator.degree() - 2 * c.k;
    if (j == 0)
      throw KernelSpecError(K::nonzero_mean, "kernel has a constant spherical-harmonic component " +
                                                 to_text(c.harmonic) + " (nonzero mean on the sphere)");
    terms.push_back({j, c.harmonic});
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
  return KernelExpansion(n, std::move(terms));
}

KernelExpansion parse_kernel(std::string_view json_text) {
  using K = KernelSpecError::Kind;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw KernelSpecError(K::malformed, std::string("kernel spec is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw KernelSpecError(K::malformed, "kernel spec must be a JSON object");
    const int n = doc.at("n").get<int>();
    const int d = doc.at("denominator_power").get<int>();
    if (n < 1) throw KernelSpecError(K::malformed, "n must be >= 1");
    if (d < 0) throw KernelSpecError(K::malformed, "denominator_power must be >= 0");
    const auto& num = doc.at("numerator");
    if (!num.is_array() || num.empty()) throw KernelSpecError(K::malformed, "numerator must be a nonempty array");

    std::vector<std::pair<Exponent, Rational>> entries;
    std::set<int> degrees;
    for (const auto& term : num) {
      auto e = term.at("exponents").get<Exponent>();
      if (static_cast<int>(e.size()) != n) throw KernelSpecError(K::malformed, "exponent length != n");
      if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
        throw KernelSpecError(K::malformed, "negative exponent");
      const auto& cj = term.at("coeff");
      Rational c = cj.is_string() ? parse_rational(cj.get<std::string>())
                 : cj.is_number_integer() ? Rational(cj.get<long>())
                 : throw KernelSpecError(K::malformed, "coeff must be a \"num/den\" string or an integer");
      if (c == 0) continue;
      int deg = 0;
      for (int x : e) deg += x;
      degrees.insert(deg);
      entries.emplace_back(std::move(e), std::move(c));
    }
    if (entries.empty()) throw KernelSpecError(K::zero_kernel, "kernel numerator is zero");
    if (degrees.size() > 1) {
      const int first = *degrees.begin() % 2;
      const bool mixed = std::any_of(degrees.begin(), degrees.end(), [&](int x) { return x % 2 != first; });
      if (mixed) throw KernelSpecError(K::mixed_parity, "numerator mixes even and odd degrees");
      throw KernelSpecError(K::inhomogeneous, "numerator is not homogeneous");
    }
    HomPoly r(n, *degrees.begin());
    for (const auto& [e, c] : entries) r.add_term(e, c);
    return kernel_from_numerator(r, d);
  } catch (const json::exception& e) {
    throw KernelSpecError(K::malformed, std::string("kernel spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const KernelSpecError*>(&e)) throw;
    throw KernelSpecError(K::malformed, std::string("kernel spec: ") + e.what());
  }
}

std::string serialize_kernel(const KernelExpansion& k) {
  const HomPoly r = k.numerator();
  json num = json::array();
  for (const auto& [e, c] : r.terms()) num.push_back({{"exponents", e}, {"coeff", to_string(c)}});
  json doc{{"n", k.dim()}, {"numerator", num}, {"denominator_power", k.top_degree()}};
  return doc.dump(2);
}

// ---------------------------------------------------------------------------

Rational gamma_half_rational(int m) {
  if (m < 1) throw std::invalid_argument("gamma_half_rational: m must be >= 1");
  Rational r(1);
  if (m % 2 == 0) {
    for (int i = 2; i < m / 2; ++i) r *= i;  // (m/2 - 1)!
  } else {
    // Gamma(m/2) = (m-2)!! / 2^{(m-1)/2} * sqrt(pi)
    for (int i = m - 2; i > 1; i -= 2) r *= i;
    r /= Rational(mpz_class(1) << ((m - 1) / 2));
  }
  return r;
}

GammaCoeff gamma(int k, int n) {
  if (k < 1) throw std::invalid_argument("gamma: k must be >= 1");
  if (n < 1) throw std::invalid_argument("gamma: n must be >= 1");
  GammaCoeff g;
  g.k = k;
  g.n = n;
  g.phase_class = k % 4;
  g.rational_part = gamma_half_rational(k) / gamma_half_rational(n + k);
  g.sqrt_pi_power = n + (k % 2) - ((n + k) % 2);
  return g;
}

double GammaCoeff::magnitude() const {
  return rational_part.get_d() * std::pow(std::numbers::pi, 0.5 * sqrt_pi_power);
}

std::complex<double> GammaCoeff::phase() const {
  switch (phase_class) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

Multiplier::Multiplier(const KernelExpansion& k) : n_(k.dim()) {
  for (const auto& t : k.terms()) {
    degrees_.push_back(t.degree);
    gammas_.push_back(gamma(t.degree, n_).value());
    polys_.emplace_back(t.harmonic);
  }
}

std::complex<double> Multiplier::operator()(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != n_) throw std::invalid_argument("multiplier: dimension mismatch");
  double r2 = 0.0;
  for (double v : xi) r2 += v * v;
  if (r2 == 0.0) throw std::domain_error("multiplier: xi = 0");
  const double r = std::sqrt(r2);
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < polys_.size(); ++i) s += gammas_[i] * (polys_[i](xi) / std::pow(r, degrees_[i]));
  return s;
}

std::complex<double> multiplier_eval(const KernelExpansion& k, std::span<const double> xi) {
  return Multiplier(k)(xi);
}

KernelEvaluator::KernelEvaluator(const KernelExpansion& k) : n_(k.dim()) {
  for (const auto& t : k.terms()) {
    degrees_.push_back(t.degree);
    polys_.emplace_back(t.harmonic);
  }
}

double KernelEvaluator::operator()(std::span<const double> x) const {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (r2 == 0.0) throw std::domain_error("kernel: x = 0");
  const double r = std::sqrt(r2);
  double s = 0.0;
  for (std::size_t i = 0; i < polys_.size(); ++i) s += polys_[i](x) / std::pow(r, degrees_[i] + n_);
  return s;
}

double KernelEvaluator::omega_on_sphere(std::span<const double> u) const {
  double s = 0.0;
  for (const auto& p : polys_) s += p(u);
  return s;
}

double smoothness_report(const KernelExpansion& k, int m) {
  double s = 0.0;
  for (const auto& t : k.terms()) s += std::pow(static_cast<double>(t.degree), m) * sphere_sup(t.harmonic).certified_upper;
  return s;
}

}  // namespace czk
