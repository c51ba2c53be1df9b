#include "czk/sphere_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace czk {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 normalized(const Vec3& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / r, v[1] / r, v[2] / r};
}

double angle(const Vec3& a, const Vec3& b) {
  // atan2 form is accurate for small angles
  const Vec3 c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  const double s = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  return std::atan2(s, a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}

SphereGrid circle_grid(int level) {
  SphereGrid g;
  g.n = 2;
  const int m = 16 << level;
  g.coords.reserve(2 * static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * std::numbers::pi * k / m;
    g.coords.push_back(std::cos(t));
    g.coords.push_back(std::sin(t));
  }
  // half the angular spacing; chord <= arc
  g.covering_radius = std::numbers::pi / m;
  g.certified = true;
  return g;
}

SphereGrid icosahedral_grid(int level) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const std::array<Vec3, 12> v{{{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
                                {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
                                {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}}};
  const std::array<std::array<int, 3>, 20> faces{{{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
                                                  {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                                  {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
                                                  {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}}};
  const int f = 2 << level;  // subdivision frequency

  SphereGrid g;
  g.n = 3;
  double max_edge = 0.0;
  std::vector<Vec3> pts;
  for (const auto& face : faces) {
    const Vec3& a = v[face[0]];
    const Vec3& b = v[face[1]];
    const Vec3& c = v[face[2]];
    auto node = [&](int i, int j) {
      const double u = static_cast<double>(i) / f, w = static_cast<double>(j) / f, s = 1.0 - u - w;
      return normalized({s * a[0] + u * b[0] + w * c[0], s * a[1] + u * b[1] + w * c[1],
                         s * a[2] + u * b[2] + w * c[2]});
    };
    for (int i = 0; i <= f; ++i)
      for (int j = 0; i + j <= f; ++j) {
        const Vec3 p = node(i, j);
        pts.push_back(p);
        // small triangles (i,j),(i+1,j),(i,j+1) and (i+1,j),(i+1,j+1),(i,j+1)
        if (i + j < f) {
          const Vec3 q = node(i + 1, j), r = node(i, j + 1);
          max_edge = std::max({max_edge, angle(p, q), angle(q, r), angle(r, p)});
          if (i + j + 1 < f) {
            const Vec3 s = node(i + 1, j + 1);
            max_edge = std::max({max_edge, angle(q, s), angle(s, r)});
          }
        }
      }
  }
  g.coords.reserve(3 * pts.size());
  for (const auto& p : pts) g.coords.insert(g.coords.end(), p.begin(), p.end());
  // A small spherical triangle lies in the geodesic ball of radius (longest
  // edge) around each of its vertices.
  g.covering_radius = max_edge;
  g.certified = true;
  return g;
}

SphereGrid hyperspherical_grid(int level) {
  const int m = 8 << level;
  const double da = std::numbers::pi / m, dc = 2.0 * std::numbers::pi / (2 * m);
  SphereGrid g;
  g.n = 4;
  g.coords.reserve(4 * static_cast<std::size_t>(m + 1) * (m + 1) * 2 * m);
  for (int i = 0; i <= m; ++i) {
    const double a = i * da;
    for (int j = 0; j <= m; ++j) {
      const double b = j * da;
      for (int k = 0; k < 2 * m; ++k) {
        const double c = k * dc;
        g.coords.push_back(std::cos(a));
        g.coords.push_back(std::sin(a) * std::cos(b));
        g.coords.push_back(std::sin(a) * std::sin(b) * std::cos(c));
        g.coords.push_back(std::sin(a) * std::sin(b) * std::sin(c));
      }
    }
  }
  // Each angle is 1-Lipschitz; walk coordinate-wise to the nearest node.
  g.covering_radius = da / 2 + da / 2 + dc / 2;
  g.certified = true;
  return g;
}

SphereGrid sampled_grid(int n, int level) {
  SphereGrid g;
  g.n = n;
  const std::size_t count = std::size_t{2000} << std::min(level, 8);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  g.coords.reserve(count * n);
  std::vector<double> x(n);
  for (std::size_t p = 0; p < count; ++p) {
    double r2 = 0.0;
    for (auto& xi : x) {
      xi = gauss(rng);
      r2 += xi * xi;
    }
    const double r = std::sqrt(r2);
    for (double xi : x) g.coords.push_back(xi / r);
  }
  g.covering_radius = std::numeric_limits<double>::quiet_NaN();
  g.certified = false;
  return g;
}

}  // namespace

SphereGrid make_sphere_grid(int n, int level) {
  if (n < 2) throw std::invalid_argument("make_sphere_grid: n must be >= 2");
  if (level < 0) throw std::invalid_argument("make_sphere_grid: negative level");
  switch (n) {
    case 2: return circle_grid(level);
    case 3: return icosahedral_grid(level);
    case 4: return hyperspherical_grid(level);
    default: return sampled_grid(n, level);
  }
}

}  // namespace czk
