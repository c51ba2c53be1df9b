#pragma once

#include <functional>
#include <vector>

namespace czk {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // Kronrod error estimate
  bool converged = false;
  int intervals = 0;
};

// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b]. Subdivides
// the worst interval until error <= max(abs_tol, rel_tol * |value|) or the
// interval budget is spent (converged = false).
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     double rel_tol = 0.0, int max_intervals = 2000);

// Fixed Gauss-Legendre rule on [-1, 1]; nodes/weights for order m.
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace czk
