#pragma once

#include <span>
#include <vector>

namespace czk {

// Quasi-uniform point set on S^{n-1}.
//
// certified == true means covering_radius is a rigorous bound: every point of
// the sphere lies within that Euclidean distance of some grid point.
// n = 2: uniform angles; n = 3: subdivided icosahedron; n = 4: product of
// hyperspherical angles. Other n get a deterministic uncertified point set.
struct SphereGrid {
  int n = 0;
  std::vector<double> coords;  // row-major, n per point
  double covering_radius = 0.0;
  bool certified = false;

  std::size_t size() const { return n ? coords.size() / static_cast<std::size_t>(n) : 0; }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
};

// Refinement level >= 0; each level roughly halves the covering radius.
SphereGrid make_sphere_grid(int n, int level);

}  // namespace czk
