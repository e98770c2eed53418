#include "eulerfv/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace efv {

double State::min_density() const {
  return *std::min_element(rho.begin(), rho.end());
}

State project_initial_state(const InitialData& data, const Mesh& mesh, bool vacuum_shift) {
  if (static_cast<int>(data.velocity.size()) != mesh.dim)
    throw std::invalid_argument("initial data: velocity component count does not match mesh dimension");
  State s;
  s.rho = project(mesh, data.density);
  if (vacuum_shift)
    for (double& v : s.rho) v += mesh.h_max;
  s.u.reserve(data.velocity.size());
  for (const auto& comp : data.velocity)
    s.u.push_back(project(mesh, comp));
  return s;
}

} // namespace efv
