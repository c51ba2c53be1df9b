#include "czk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace czk {

namespace {

// Kronrod 15 nodes (positive half) and weights; Gauss 7 weights on the even nodes.
constexpr double kXk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWk[7];
  double g = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXk[i];
    const double s = f(c - dx) + f(c + dx);
    k += kWk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                     int max_intervals) {
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  std::priority_queue<Segment> heap;
  Segment s0 = gk15(f, a, b);
  heap.push(s0);
  double value = s0.value, error = s0.error;
  int count = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && count < max_intervals) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment l = gk15(f, worst.a, mid), rr = gk15(f, mid, worst.b);
    value += l.value + rr.value - worst.value;
    error += l.error + rr.error - worst.error;
    heap.push(l);
    heap.push(rr);
    ++count;
  }
  // Re-sum from the pieces to drop accumulated update rounding.
  value = 0.0;
  error = 0.0;
  std::vector<Segment> parts;
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& p : parts) {
    value += p.value;
    error += p.error;
  }
  r.value = value;
  r.error = error;
  r.intervals = count;
  r.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return r;
}

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[m - 1 - i] = x;
    weights[i] = weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace czk
