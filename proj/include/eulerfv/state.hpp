#ifndef EULERFV_STATE_HPP
#define EULERFV_STATE_HPP

#include <functional>
#include <vector>

#include "eulerfv/field.hpp"
#include "eulerfv/mesh.hpp"

namespace efv {

// Cell-wise constant density and velocity; momentum is derived as rho*u.
struct State {
  Field rho;
  std::vector<Field> u; // one Field per velocity component

  int dim() const { return static_cast<int>(u.size()); }
  double momentum(std::size_t cell, int comp) const { return rho[cell] * u[comp][cell]; }
  double min_density() const;
};

// Initial data as functions on the torus.
struct InitialData {
  std::function<double(const Point&)> density;
  std::vector<std::function<double(const Point&)>> velocity;
};

// Projected initial state; adds the +h density shift when requested.
State project_initial_state(const InitialData& data, const Mesh& mesh, bool vacuum_shift);

} // namespace efv

#endif
