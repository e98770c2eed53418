#ifndef EULERFV_FIELD_HPP
#define EULERFV_FIELD_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace efv {

// One value per cell, in mesh cell order.
using Field = std::vector<double>;

// Point on the torus; coordinates beyond the active dimension are zero.
using Point = std::array<double, 3>;

// Small symmetric matrix for phase-space second moments (dim <= 3).
struct SymMatrix {
  int dim = 1;
  std::array<double, 9> a{}; // row-major, only the dim x dim block is used

  double& at(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += at(i, i);
    return s;
  }
};

} // namespace efv

#endif
