#ifndef EULERFV_MESH_HPP
#define EULERFV_MESH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "eulerfv/field.hpp"

namespace efv {

// Periodic structured grid on the torus [-1,1]^d.
struct MeshSpec {
  int dim = 1;
  std::array<int, 3> cells{2, 1, 1}; // cells per axis; entries beyond dim ignored
};

// Face between owner and neighbor; the unit normal is +e_axis and points
// from owner to neighbor.
struct Face {
  std::int32_t owner;
  std::int32_t neighbor;
  std::int32_t axis;
};

class Mesh {
public:
  int dim = 1;
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> h{0.0, 0.0, 0.0}; // h_i = 2/n_i
  double h_max = 0.0;
  double h_min = 0.0;
  double anisotropy = 1.0; // lambda = h_min / h_max
  double cell_volume = 0.0;
  std::array<double, 3> face_area{0.0, 0.0, 0.0}; // area of a face normal to axis i
  std::vector<Face> faces; // ordered by owner cell index, then axis

  std::size_t cell_count() const { return centers_.size(); }
  double total_volume() const { return cell_volume * static_cast<double>(cell_count()); }
  const Point& center(std::size_t cell) const { return centers_[cell]; }

  std::size_t linear_index(const std::array<int, 3>& idx) const;
  std::array<int, 3> multi_index(std::size_t cell) const;

  // Cell on the other side of the face of `cell` in direction +/-1 along axis.
  std::size_t neighbor_of(std::size_t cell, int axis, int direction) const;

  std::vector<Point> centers_;
};

// Builds the mesh; rejects n_i < 2 (a periodic neighbor would equal the owner).
Mesh build_mesh(const MeshSpec& spec);

// Piecewise-constant projection: cell value = cell average of f, approximated
// by tensor Gauss quadrature with 3 points per axis (exact through degree 5).
Field project(const Mesh& mesh, const std::function<double(const Point&)>& f);

// True when every coarse cell is a union of fine cells (tensor grids: the
// fine per-axis counts are integer multiples of the coarse ones).
bool is_nested_refinement(const Mesh& fine, const Mesh& coarse);

// Volume-weighted average of the fine values inside each coarse cell.
// Preserves total mass; rejects non-nested mesh pairs.
Field restrict_to_coarse(const Mesh& fine, const Field& fine_values, const Mesh& coarse);

// Constant prolongation: each fine cell takes the value of the coarse cell
// containing it. restrict_to_coarse(inject(v)) == v exactly.
Field inject_to_fine(const Mesh& coarse, const Field& coarse_values, const Mesh& fine);

} // namespace efv

#endif
