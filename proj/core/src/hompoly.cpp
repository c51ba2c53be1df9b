#include "czk/hompoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "czk/sphere_grid.hpp"

namespace czk {

namespace {

void require_same_dim(const HomPoly& a, const HomPoly& b, const char* what) {
  if (a.dim() != b.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Falling factorial b (b-1) ... (b-a+1), zero if a > b.
long long falling(int b, int a) {
  if (a > b) return 0;
  long long r = 1;
  for (int i = 0; i < a; ++i) r *= (b - i);
  return r;
}

}  // namespace

HomPoly::HomPoly(int n, int degree) : n_(n), d_(degree) {
  if (n < 1) throw std::invalid_argument("HomPoly: dimension must be >= 1");
  if (degree < 0) throw std::invalid_argument("HomPoly: negative degree");
}

HomPoly HomPoly::constant(int n, const Rational& c) {
  HomPoly p(n, 0);
  p.add_term(Exponent(n, 0), c);
  return p;
}

HomPoly HomPoly::variable(int n, int i) {
  if (i < 0 || i >= n) throw std::out_of_range("HomPoly::variable: index out of range");
  Exponent e(n, 0);
  e[i] = 1;
  return monomial(e, Rational(1));
}

HomPoly HomPoly::monomial(const Exponent& e, const Rational& c) {
  HomPoly p(static_cast<int>(e.size()), std::accumulate(e.begin(), e.end(), 0));
  p.add_term(e, c);
  return p;
}

HomPoly HomPoly::norm_power(int n, int k) {
  HomPoly r2(n, 2);
  for (int i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 2;
    r2.add_term(e, Rational(1));
  }
  HomPoly out = constant(n, Rational(1));
  for (int i = 0; i < k; ++i) out = out * r2;
  return out;
}

Rational HomPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomPoly::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("HomPoly::add_term: exponent length != n");
  int deg = 0;
  for (int x : e) {
    if (x < 0) throw std::invalid_argument("HomPoly::add_term: negative exponent");
    deg += x;
  }
  if (c == 0) return;
  if (deg != d_) {
    if (!terms_.empty()) throw std::invalid_argument("HomPoly::add_term: inhomogeneous term");
    d_ = deg;
  }
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HomPoly& HomPoly::operator+=(const HomPoly& o) {
  require_same_dim(*this, o, "HomPoly +");
  if (o.is_zero()) return *this;
  if (is_zero()) {
    d_ = o.d_;
  } else if (d_ != o.d_) {
    throw std::invalid_argument("HomPoly +: degree mismatch");
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o) { return *this += -o; }

HomPoly& HomPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

HomPoly HomPoly::operator-() const {
  HomPoly r(*this);
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  require_same_dim(a, b, "HomPoly *");
  HomPoly r(a.n_, a.d_ + b.d_);
  Exponent e(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

bool operator==(const HomPoly& a, const HomPoly& b) {
  return a.n_ == b.n_ && a.terms_ == b.terms_ && (a.is_zero() || a.d_ == b.d_);
}

HomPoly HomPoly::partial(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("HomPoly::partial: index out of range");
  HomPoly r(n_, std::max(d_ - 1, 0));
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    r.add_term(f, c * e[i]);
  }
  return r;
}

Rational HomPoly::eval_exact(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("HomPoly::eval: dimension mismatch");
  // powers[i][k] = x_i^k
  std::vector<std::vector<Rational>> powers(n_);
  for (int i = 0; i < n_; ++i) {
    powers[i].resize(d_ + 1);
    powers[i][0] = 1;
    for (int k = 1; k <= d_; ++k) powers[i][k] = powers[i][k - 1] * x[i];
  }
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < n_; ++i)
      if (e[i]) t *= powers[i][e[i]];
    sum += t;
  }
  return sum;
}

double HomPoly::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("HomPoly::eval: dimension mismatch");
  std::vector<Rational> q;
  q.reserve(n_);
  for (double v : x) q.push_back(from_double(v));
  return eval_exact(q).get_d();
}

Rational HomPoly::l1_norm() const {
  Rational s(0);
  for (const auto& [e, c] : terms_) s += abs(c);
  return s;
}

// ---------------------------------------------------------------------------

Poly::Poly(const HomPoly& p) : n_(p.dim()) { *this += p; }

HomPoly Poly::part(int d) const {
  auto it = parts_.find(d);
  return it == parts_.end() ? HomPoly(n_, d) : it->second;
}

Poly& Poly::operator+=(const HomPoly& p) {
  if (p.dim() != n_) throw std::invalid_argument("Poly +: dimension mismatch");
  if (p.is_zero()) return *this;
  auto [it, inserted] = parts_.try_emplace(p.degree(), p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) parts_.erase(it);
  }
  return *this;
}

Poly& Poly::operator+=(const Poly& p) {
  for (const auto& [d, h] : p.parts_) *this += h;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) parts_.clear();
  for (auto& [d, h] : parts_) h *= c;
  return *this;
}

double Poly::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("Poly::eval: dimension mismatch");
  std::vector<Rational> q;
  for (double v : x) q.push_back(from_double(v));
  Rational s(0);
  for (const auto& [d, h] : parts_) s += h.eval_exact(q);
  return s.get_d();
}

// ---------------------------------------------------------------------------

FastPoly::FastPoly(const HomPoly& p, double scale) : n_(p.dim()) { append(p, scale); }

FastPoly::FastPoly(const Poly& p, double scale) : n_(p.dim()) {
  for (const auto& [d, h] : p.parts()) append(h, scale);
}

void FastPoly::append(const HomPoly& p, double scale) {
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(c.get_d() * scale);
    exps_.insert(exps_.end(), e.begin(), e.end());
    for (int x : e) max_exp_ = std::max(max_exp_, x);
  }
}

double FastPoly::operator()(std::span<const double> x) const {
  double pw[16][32];
  const bool small = n_ <= 16 && max_exp_ < 32;
  if (small)
    for (int i = 0; i < n_; ++i) {
      pw[i][0] = 1.0;
      for (int k = 1; k <= max_exp_; ++k) pw[i][k] = pw[i][k - 1] * x[i];
    }
  double s = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double v = coeffs_[t];
    const int* e = exps_.data() + t * n_;
    for (int i = 0; i < n_; ++i)
      if (e[i]) v *= small ? pw[i][e[i]] : std::pow(x[i], e[i]);
    s += v;
  }
  return s;
}

double FastPoly::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
  std::fill(grad.begin(), grad.end(), 0.0);
  double s = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const int* e = exps_.data() + t * n_;
    double v = coeffs_[t];
    for (int i = 0; i < n_; ++i) v *= std::pow(x[i], e[i]);
    s += v;
    for (int j = 0; j < n_; ++j) {
      if (!e[j]) continue;
      double g = coeffs_[t] * e[j];
      for (int i = 0; i < n_; ++i) g *= std::pow(x[i], i == j ? e[i] - 1 : e[i]);
      grad[j] += g;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

HomPoly laplacian(const HomPoly& p) {
  const int n = p.dim();
  HomPoly r(n, std::max(p.degree() - 2, 0));
  for (const auto& [e, c] : p.terms())
    for (int i = 0; i < n; ++i) {
      if (e[i] < 2) continue;
      Exponent f = e;
      f[i] -= 2;
      r.add_term(f, c * (e[i] * (e[i] - 1)));
    }
  return r;
}

Poly laplacian(const Poly& p) {
  Poly r(p.dim());
  for (const auto& [d, h] : p.parts()) r += laplacian(h);
  return r;
}

namespace {

// Exact quotient by |x|^2 via the division routine; the caller guarantees
// divisibility.
HomPoly divide_by_norm_squared(const HomPoly& p) {
  auto q = exact_divide(p, HomPoly::norm_power(p.dim(), 1));
  if (!q) throw std::logic_error("harmonic_decompose: remainder not divisible by |x|^2");
  return *q;
}

}  // namespace

std::vector<HarmonicComponent> harmonic_decompose(const HomPoly& p) {
  const int n = p.dim();
  std::vector<HarmonicComponent> out;
  HomPoly rest = p;
  int k = 0;
  for (int d = p.degree(); !rest.is_zero(); d -= 2, ++k) {
    // Harmonic part of a degree-d polynomial R:
    //   H = sum_i a_i |x|^{2i} Lap^i R,  a_0 = 1,
    //   a_{i+1} = -a_i / (2 (i+1) (n + 2d - 2i - 4)),
    // which makes Lap H telescope to zero.
    HomPoly h = rest;
    HomPoly lap_i = rest;
    Rational a(1);
    for (int i = 0; 2 * (i + 1) <= d; ++i) {
      lap_i = laplacian(lap_i);
      if (lap_i.is_zero()) break;
      a = -a / Rational(2 * (i + 1) * (n + 2 * d - 2 * i - 4));
      h += a * (HomPoly::norm_power(n, i + 1) * lap_i);
    }
    if (!h.is_zero()) out.push_back({k, h});
    HomPoly diff = rest - h;
    if (diff.is_zero()) break;
    if (d < 2) throw std::logic_error("harmonic_decompose: nonzero remainder at degree < 2");
    rest = divide_by_norm_squared(diff);
  }
  return out;
}

std::optional<HomPoly> exact_divide(const HomPoly& p, const HomPoly& d) {
  require_same_dim(p, d, "exact_divide");
  if (d.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
  const int n = p.dim();
  if (p.is_zero()) return HomPoly(n, 0);
  if (d.degree() > p.degree()) return std::nullopt;

  // Monomial matching for the coefficients of Q is triangular in the term
  // order: the leading monomial of D*Q is lt(D)*lt(Q). Solve by forward
  // substitution; an unmatched leading monomial means no solution.
  const auto& [lead_e, lead_c] = *d.terms().begin();
  HomPoly q(n, p.degree() - d.degree());
  HomPoly rem = p;
  Exponent e(n);
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().begin();
    for (int i = 0; i < n; ++i) {
      e[i] = re[i] - lead_e[i];
      if (e[i] < 0) return std::nullopt;
    }
    const HomPoly step = HomPoly::monomial(e, rc / lead_c);
    q += step;
    rem -= step * d;
  }
  if (!(q * d == p)) throw std::logic_error("exact_divide: verification multiply failed");
  return q;
}

Poly apply_diff_op(const HomPoly& q, const Poly& target) {
  const int n = q.dim();
  if (target.dim() != n) throw std::invalid_argument("apply_diff_op: dimension mismatch");
  Poly out(n);
  for (const auto& [deg, t] : target.parts()) {
    if (deg < q.degree()) continue;
    HomPoly acc(n, deg - q.degree());
    Exponent f(n);
    for (const auto& [a, qa] : q.terms())
      for (const auto& [b, tb] : t.terms()) {
        Rational c = qa * tb;
        bool zero = false;
        for (int i = 0; i < n && !zero; ++i) {
          const long long ff = falling(b[i], a[i]);
          if (ff == 0) zero = true;
          c *= Rational(static_cast<long>(ff));
          f[i] = b[i] - a[i];
        }
        if (!zero) acc.add_term(f, c);
      }
    out += acc;
  }
  return out;
}

Rational gradient_bound(const HomPoly& p) { return p.l1_norm() * p.degree(); }

SphereBound sphere_sup(const HomPoly& p, int level) {
  if (p.dim() < 2) throw std::invalid_argument("sphere_sup: n must be >= 2");
  const double crude = p.l1_norm().get_d();
  if (p.is_zero()) return {0.0, 0.0};
  const SphereGrid grid = make_sphere_grid(p.dim(), level);
  const FastPoly f(p);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sup = std::max(sup, std::abs(f(grid.point(i))));
  // Guard the double evaluation: the sampled value never exceeds the crude bound.
  sup = std::min(sup, crude);
  double upper = crude;
  if (grid.certified) {
    const double lip = gradient_bound(p).get_d() * grid.covering_radius;
    upper = std::min(crude, sup + lip);
  }
  return {sup, upper};
}

std::string to_text(const HomPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << "; ";
    first = false;
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ':' << to_string(c);
  }
  return os.str();
}

HomPoly hompoly_from_text(std::string_view text, int n, int degree) {
  HomPoly p(n, degree);
  std::string s(text);
  auto trim = [](std::string x) {
    const auto b = x.find_first_not_of(" \t\n");
    const auto e = x.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  if (trim(s) == "0") return p;
  std::stringstream ss(s);
  std::string entry;
  while (std::getline(ss, entry, ';')) {
    entry = trim(entry);
    if (entry.empty()) continue;
    const auto colon = entry.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("polynomial text: missing ':' in '" + entry + "'");
    Exponent e;
    std::stringstream es(entry.substr(0, colon));
    std::string tok;
    while (std::getline(es, tok, ',')) {
      tok = trim(tok);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("polynomial text: bad exponent '" + tok + "'");
      e.push_back(std::stoi(tok));
    }
    if (static_cast<int>(e.size()) != n) throw std::invalid_argument("polynomial text: exponent length != n");
    if (std::accumulate(e.begin(), e.end(), 0) != degree)
      throw std::invalid_argument("polynomial text: term degree != declared degree");
    p.add_term(e, parse_rational(entry.substr(colon + 1)));
  }
  return p;
}

}  // namespace czk
