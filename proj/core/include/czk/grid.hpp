#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace czk {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniform box grid on [-L, L)^n with G points per axis: x_i = -L + i h,
// h = 2L/G. G is even, so the origin is the node with every index G/2.
class Grid {
 public:
  static constexpr std::size_t kDefaultBudget = std::size_t{1} << 24;

  Grid(int n, int points_per_axis, double half_extent, std::size_t budget = kDefaultBudget);

  int dim() const { return n_; }
  int points_per_axis() const { return g_; }
  double half_extent() const { return l_; }
  double spacing() const { return 2.0 * l_ / g_; }
  std::size_t size() const { return size_; }
  double cell_volume() const;

  double coordinate(int i) const { return -l_ + i * spacing(); }
  // Fills x (length n) with the coordinates of flat index idx.
  void point(std::size_t idx, std::span<double> x) const;
  void indices(std::size_t idx, std::span<int> c) const;
  std::size_t flat(std::span<const int> c) const;

  friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_ && a.g_ == b.g_ && a.l_ == b.l_; }

 private:
  int n_;
  int g_;
  double l_;
  std::size_t size_;
};

struct GridField {
  Grid grid;
  std::vector<std::complex<double>> samples;  // row-major, last axis fastest

  explicit GridField(const Grid& g) : grid(g), samples(g.size()) {}

  GridField& operator+=(const GridField& o);
  GridField& operator*=(double c);
  // |samples| as a real-valued field
  GridField abs() const;
  double max_abs() const;
};

enum class FieldKind { gaussian, bump, ball, gdelta };

struct TestFunctionSpec {
  FieldKind kind = FieldKind::gaussian;
  double sigma = 1.0;   // gaussian width: exp(-|x|^2 / (2 sigma^2))
  double radius = 1.0;  // bump / ball radius
  std::vector<double> center;  // optional offset (defaults to origin)
  std::vector<double> xi0;     // gdelta modulation frequency
  double delta = 0.0;          // gdelta scale, 0 < delta < |xi0|

  static TestFunctionSpec gaussian(double sigma) { return {FieldKind::gaussian, sigma, 1.0, {}, {}, 0.0}; }
  static TestFunctionSpec bump(double radius) { return {FieldKind::bump, 1.0, radius, {}, {}, 0.0}; }
  static TestFunctionSpec ball(double radius) { return {FieldKind::ball, 1.0, radius, {}, {}, 0.0}; }
  static TestFunctionSpec gdelta(std::vector<double> xi0, double delta) {
    return {FieldKind::gdelta, 1.0, 1.0, {}, std::move(xi0), delta};
  }
};

std::string describe(const TestFunctionSpec& s);

// Smooth radial cutoff: 1 on r <= 1/2, 0 on r >= 1, C^infinity in between
// (s(t) = f(1-t) / (f(1-t) + f(t)), f(t) = exp(-1/t), t = 2r - 1).
double window(double r);

// phi_delta(xi) = window(|xi - xi0| / delta)
double window_at(std::span<const double> xi, std::span<const double> xi0, double delta);

GridField make_field(const TestFunctionSpec& spec, const Grid& grid);

// Field dump: text header "n G L\n" then little-endian float64 pairs (re, im).
void write_field(std::ostream& os, const GridField& f);
GridField read_field(std::istream& is);

}  // namespace czk
