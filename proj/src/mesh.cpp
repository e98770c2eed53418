#include "eulerfv/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace efv {

std::size_t Mesh::linear_index(const std::array<int, 3>& idx) const {
  std::size_t lin = 0;
  for (int a = 0; a < dim; ++a)
    lin = lin * static_cast<std::size_t>(n[a]) + static_cast<std::size_t>(idx[a]);
  return lin;
}

std::array<int, 3> Mesh::multi_index(std::size_t cell) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(cell % static_cast<std::size_t>(n[a]));
    cell /= static_cast<std::size_t>(n[a]);
  }
  return idx;
}

std::size_t Mesh::neighbor_of(std::size_t cell, int axis, int direction) const {
  std::array<int, 3> idx = multi_index(cell);
  idx[axis] = (idx[axis] + direction + n[axis]) % n[axis];
  return linear_index(idx);
}

Mesh build_mesh(const MeshSpec& spec) {
  if (spec.dim < 1 || spec.dim > 3)
    throw std::invalid_argument("mesh: dimension must be 1, 2 or 3");
  Mesh m;
  m.dim = spec.dim;
  std::size_t count = 1;
  for (int a = 0; a < spec.dim; ++a) {
    if (spec.cells[a] < 2)
      throw std::invalid_argument("mesh: need at least 2 cells per axis, got " +
                                  std::to_string(spec.cells[a]));
    m.n[a] = spec.cells[a];
    m.h[a] = 2.0 / static_cast<double>(spec.cells[a]);
    count *= static_cast<std::size_t>(spec.cells[a]);
  }
  m.h_max = 0.0;
  m.h_min = 2.0;
  m.cell_volume = 1.0;
  for (int a = 0; a < m.dim; ++a) {
    m.h_max = std::max(m.h_max, m.h[a]);
    m.h_min = std::min(m.h_min, m.h[a]);
    m.cell_volume *= m.h[a];
  }
  m.anisotropy = m.h_min / m.h_max;
  for (int a = 0; a < m.dim; ++a) {
    double area = 1.0;
    for (int b = 0; b < m.dim; ++b)
      if (b != a) area *= m.h[b];
    m.face_area[a] = area;
  }

  m.centers_.resize(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::array<int, 3> idx = m.multi_index(c);
    Point x{0.0, 0.0, 0.0};
    for (int a = 0; a < m.dim; ++a)
      x[a] = -1.0 + (static_cast<double>(idx[a]) + 0.5) * m.h[a];
    m.centers_[c] = x;
  }

  // One face per (cell, axis): the face on the positive side of the cell.
  m.faces.reserve(count * static_cast<std::size_t>(m.dim));
  for (std::size_t c = 0; c < count; ++c)
    for (int a = 0; a < m.dim; ++a)
      m.faces.push_back(Face{static_cast<std::int32_t>(c),
                             static_cast<std::int32_t>(m.neighbor_of(c, a, +1)),
                             static_cast<std::int32_t>(a)});
  return m;
}

namespace {
constexpr double kGaussNode = 0.7745966692414834; // sqrt(3/5)
constexpr std::array<double, 3> kNodes{-kGaussNode, 0.0, kGaussNode};
constexpr std::array<double, 3> kWeights{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}; // average weights
} // namespace

Field project(const Mesh& mesh, const std::function<double(const Point&)>& f) {
  Field out(mesh.cell_count(), 0.0);
  const int d = mesh.dim;
  const int npts = d == 1 ? 3 : (d == 2 ? 9 : 27);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const Point& xc = mesh.center(c);
    double acc = 0.0;
    for (int q = 0; q < npts; ++q) {
      int rem = q;
      Point x = xc;
      double w = 1.0;
      for (int a = 0; a < d; ++a) {
        const int k = rem % 3;
        rem /= 3;
        x[a] = xc[a] + 0.5 * mesh.h[a] * kNodes[static_cast<std::size_t>(k)];
        w *= kWeights[static_cast<std::size_t>(k)];
      }
      acc += w * f(x);
    }
    out[c] = acc;
  }
  return out;
}

bool is_nested_refinement(const Mesh& fine, const Mesh& coarse) {
  if (fine.dim != coarse.dim) return false;
  for (int a = 0; a < fine.dim; ++a) {
    if (fine.n[a] < coarse.n[a]) return false;
    if (fine.n[a] % coarse.n[a] != 0) return false;
  }
  return true;
}

namespace {
double pairwise_sum(const double* v, std::size_t count) {
  if (count == 1) return v[0];
  const std::size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}
} // namespace

Field restrict_to_coarse(const Mesh& fine, const Field& fine_values, const Mesh& coarse) {
  if (fine_values.size() != fine.cell_count())
    throw std::invalid_argument("restrict: field size does not match fine mesh");
  if (!is_nested_refinement(fine, coarse))
    throw std::invalid_argument("restrict: meshes are not nested");
  std::array<int, 3> ratio{1, 1, 1};
  std::size_t per_cell = 1;
  for (int a = 0; a < fine.dim; ++a) {
    ratio[a] = fine.n[a] / coarse.n[a];
    per_cell *= static_cast<std::size_t>(ratio[a]);
  }
  Field out(coarse.cell_count(), 0.0);
  // pairwise sums over each coarse cell's children keep the dyadic case
  // exact (doublings only), so restrict(inject(v)) == v bit for bit
  std::vector<double> buf(per_cell);
  const double inv = 1.0 / static_cast<double>(per_cell);
  for (std::size_t cc = 0; cc < coarse.cell_count(); ++cc) {
    const std::array<int, 3> cidx = coarse.multi_index(cc);
    std::size_t k = 0;
    std::array<int, 3> fidx{0, 0, 0};
    for (int i0 = 0; i0 < ratio[0]; ++i0) {
      fidx[0] = cidx[0] * ratio[0] + i0;
      for (int i1 = 0; i1 < ratio[1]; ++i1) {
        fidx[1] = cidx[1] * ratio[1] + i1;
        for (int i2 = 0; i2 < ratio[2]; ++i2) {
          fidx[2] = cidx[2] * ratio[2] + i2;
          buf[k++] = fine_values[fine.linear_index(fidx)];
        }
      }
    }
    out[cc] = pairwise_sum(buf.data(), per_cell) * inv;
  }
  return out;
}

Field inject_to_fine(const Mesh& coarse, const Field& coarse_values, const Mesh& fine) {
  if (coarse_values.size() != coarse.cell_count())
    throw std::invalid_argument("inject: field size does not match coarse mesh");
  if (!is_nested_refinement(fine, coarse))
    throw std::invalid_argument("inject: meshes are not nested");
  std::array<int, 3> ratio{1, 1, 1};
  for (int a = 0; a < fine.dim; ++a)
    ratio[a] = fine.n[a] / coarse.n[a];
  Field out(fine.cell_count(), 0.0);
  for (std::size_t fc = 0; fc < fine.cell_count(); ++fc) {
    std::array<int, 3> idx = fine.multi_index(fc);
    for (int a = 0; a < fine.dim; ++a)
      idx[a] /= ratio[a];
    out[fc] = coarse_values[coarse.linear_index(idx)];
  }
  return out;
}

} // namespace efv
