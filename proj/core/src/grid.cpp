#include "czk/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "czk/fft.hpp"

namespace czk {

Grid::Grid(int n, int points_per_axis, double half_extent, std::size_t budget)
    : n_(n), g_(points_per_axis), l_(half_extent) {
  if (n != 2 && n != 3) throw std::invalid_argument("Grid: n must be 2 or 3");
  if (g_ < 2 || g_ % 2 != 0) throw std::invalid_argument("Grid: points per axis must be even and >= 2");
  if (!(l_ > 0.0) || !std::isfinite(l_)) throw std::invalid_argument("Grid: half extent must be positive");
  size_ = 1;
  for (int d = 0; d < n; ++d) {
    size_ *= static_cast<std::size_t>(g_);
    if (size_ > budget) throw BudgetExceeded("Grid: " + std::to_string(g_) + "^" + std::to_string(n) +
                                             " points exceeds the budget of " + std::to_string(budget));
  }
}

double Grid::cell_volume() const { return std::pow(spacing(), n_); }

void Grid::point(std::size_t idx, std::span<double> x) const {
  for (int d = n_ - 1; d >= 0; --d) {
    x[d] = coordinate(static_cast<int>(idx % g_));
    idx /= g_;
  }
}

void Grid::indices(std::size_t idx, std::span<int> c) const {
  for (int d = n_ - 1; d >= 0; --d) {
    c[d] = static_cast<int>(idx % g_);
    idx /= g_;
  }
}

std::size_t Grid::flat(std::span<const int> c) const {
  std::size_t idx = 0;
  for (int d = 0; d < n_; ++d) idx = idx * g_ + static_cast<std::size_t>(c[d]);
  return idx;
}

GridField& GridField::operator+=(const GridField& o) {
  if (!(grid == o.grid)) throw std::invalid_argument("GridField +=: grid mismatch");
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] += o.samples[i];
  return *this;
}

GridField& GridField::operator*=(double c) {
  for (auto& v : samples) v *= c;
  return *this;
}

GridField GridField::abs() const {
  GridField r(grid);
  for (std::size_t i = 0; i < samples.size(); ++i) r.samples[i] = std::abs(samples[i]);
  return r;
}

double GridField::max_abs() const {
  double m = 0.0;
  for (const auto& v : samples) m = std::max(m, std::abs(v));
  return m;
}

std::string describe(const TestFunctionSpec& s) {
  std::ostringstream os;
  switch (s.kind) {
    case FieldKind::gaussian: os << "gaussian(sigma=" << s.sigma << ")"; break;
    case FieldKind::bump: os << "bump(radius=" << s.radius << ")"; break;
    case FieldKind::ball: os << "ball(radius=" << s.radius << ")"; break;
    case FieldKind::gdelta:
      os << "gdelta(xi0=[";
      for (std::size_t i = 0; i < s.xi0.size(); ++i) os << (i ? "," : "") << s.xi0[i];
      os << "],delta=" << s.delta << ")";
      break;
  }
  if (!s.center.empty()) {
    os << "@[";
    for (std::size_t i = 0; i < s.center.size(); ++i) os << (i ? "," : "") << s.center[i];
    os << "]";
  }
  return os.str();
}

namespace {

// e^{-1/t} for t > 0
double smooth_zero(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double window(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double t = 2.0 * r - 1.0;
  const double a = smooth_zero(1.0 - t), b = smooth_zero(t);
  return a / (a + b);
}

double window_at(std::span<const double> xi, std::span<const double> xi0, double delta) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) r2 += (xi[i] - xi0[i]) * (xi[i] - xi0[i]);
  return window(std::sqrt(r2) / delta);
}

GridField make_field(const TestFunctionSpec& spec, const Grid& grid) {
  const int n = grid.dim();
  const double h = grid.spacing();
  GridField f(grid);
  std::vector<double> c = spec.center.empty() ? std::vector<double>(n, 0.0) : spec.center;
  if (static_cast<int>(c.size()) != n) throw std::invalid_argument("make_field: center dimension mismatch");

  if (spec.kind == FieldKind::gdelta) {
    if (static_cast<int>(spec.xi0.size()) != n) throw std::invalid_argument("make_field: xi0 dimension mismatch");
    double xr = 0.0;
    for (double v : spec.xi0) xr += v * v;
    xr = std::sqrt(xr);
    if (!(spec.delta > 0.0 && spec.delta < xr)) throw std::invalid_argument("make_field: gdelta needs 0 < delta < |xi0|");
    const double nyquist = 0.5 / h;
    if (xr + spec.delta >= nyquist)
      throw std::invalid_argument("make_field: grid does not resolve gdelta frequencies (need |xi0| + delta < 1/(2h))");
    if (h >= 0.25 / spec.delta) throw std::invalid_argument("make_field: grid spacing must be < 1/(4 delta)");
    if (grid.half_extent() * spec.delta < 4.0)
      throw std::invalid_argument("make_field: box too small for gdelta (need L * delta >= 4)");

    // g(x_j) = dxi^n sum_k phi_delta(xi_k) exp(2 pi i xi_k x_j), x_j = -L + j h, xi_k = k / 2L
    const int g = grid.points_per_axis();
    const double dxi = 1.0 / (2.0 * grid.half_extent());
    cvec data(grid.size());
    std::vector<int> idx(n);
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.indices(i, idx);
      int parity = 0;
      for (int d = 0; d < n; ++d) {
        const int k = idx[d] < g / 2 ? idx[d] : idx[d] - g;
        xi[d] = k * dxi;
        parity += k;
      }
      const double v = window_at(xi, spec.xi0, spec.delta);
      data[i] = (parity % 2 == 0 ? 1.0 : -1.0) * v;
    }
    const std::vector<int> dims(n, g);
    fft_inplace(data, dims, true);  // includes 1/G^n
    const double scale = std::pow(dxi * g, n);
    for (std::size_t i = 0; i < grid.size(); ++i) f.samples[i] = data[i] * scale;
    if (!spec.center.empty()) throw std::invalid_argument("make_field: gdelta is always centered at the origin");
    return f;
  }

  if (spec.kind == FieldKind::gaussian && !(h <= spec.sigma))
    throw std::invalid_argument("make_field: grid spacing exceeds the gaussian width");
  if ((spec.kind == FieldKind::bump || spec.kind == FieldKind::ball) && !(h < spec.radius))
    throw std::invalid_argument("make_field: grid spacing must be below the radius");

  std::vector<double> x(n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    double r2 = 0.0;
    for (int d = 0; d < n; ++d) r2 += (x[d] - c[d]) * (x[d] - c[d]);
    double v = 0.0;
    switch (spec.kind) {
      case FieldKind::gaussian: v = std::exp(-r2 / (2.0 * spec.sigma * spec.sigma)); break;
      case FieldKind::bump: {
        const double t = r2 / (spec.radius * spec.radius);
        v = t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t)) : 0.0;
        break;
      }
      case FieldKind::ball: v = r2 < spec.radius * spec.radius ? 1.0 : 0.0; break;
      case FieldKind::gdelta: break;
    }
    f.samples[i] = v;
  }
  return f;
}

void write_field(std::ostream& os, const GridField& f) {
  std::ostringstream header;
  header.precision(17);
  header << f.grid.dim() << ' ' << f.grid.points_per_axis() << ' ' << f.grid.half_extent() << '\n';
  os << header.str();
  for (const auto& v : f.samples) {
    for (double part : {v.real(), v.imag()}) {
      auto bits = std::bit_cast<std::uint64_t>(part);
      unsigned char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xffu);
      os.write(reinterpret_cast<const char*>(bytes), 8);
    }
  }
}

GridField read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_field: missing header");
  std::istringstream hs(line);
  int n = 0, g = 0;
  double l = 0.0;
  if (!(hs >> n >> g >> l)) throw std::runtime_error("read_field: malformed header");
  GridField f(Grid(n, g, l));
  for (auto& v : f.samples) {
    double parts[2];
    for (double& part : parts) {
      unsigned char bytes[8];
      if (!is.read(reinterpret_cast<char*>(bytes), 8)) throw std::runtime_error("read_field: truncated data");
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
      part = std::bit_cast<double>(bits);
    }
    v = {parts[0], parts[1]};
  }
  return f;
}

}  // namespace czk
