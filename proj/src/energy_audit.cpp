#include "eulerfv/energy_audit.hpp"

#include <cmath>
#include <span>
#include <stdexcept>

#include "eulerfv/flux.hpp"

namespace efv {

double discrete_energy(const State& state, const Mesh& mesh, const GasLaw& gas) {
  const int d = state.dim();
  double acc = 0.0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    double q = 0.0;
    for (int j = 0; j < d; ++j) q += state.u[j][c] * state.u[j][c];
    acc += 0.5 * state.rho[c] * q + pressure_potential(gas, state.rho[c]);
  }
  return mesh.cell_volume * acc;
}

EnergyAuditRecord balance_audit(const State& prev, const State& next, double dt,
                                const Mesh& mesh, const GasLaw& gas,
                                double alpha, double beta, double eps_a) {
  if (prev.min_density() <= 0.0 || next.min_density() <= 0.0)
    throw std::invalid_argument("energy audit: states must have positive density");

  const int d = mesh.dim;
  const double h_alpha = std::pow(mesh.h_max, alpha);
  const double h_beta = std::pow(mesh.h_max, beta);

  EnergyAuditRecord rec;
  rec.dt = dt;
  rec.energy_prev = discrete_energy(prev, mesh, gas);
  rec.energy = discrete_energy(next, mesh, gas);
  rec.dt_energy = (rec.energy - rec.energy_prev) / dt;

  // Cell sums: the exact velocity term and the P''(xi) interval term.
  double vel_cell = 0.0;
  double cell_lo = 0.0, cell_hi = 0.0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    double du2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const double du = (next.u[j][c] - prev.u[j][c]) / dt;
      du2 += du * du;
    }
    vel_cell += prev.rho[c] * du2;
    const double drho = (next.rho[c] - prev.rho[c]) / dt;
    const Interval pp = potential_second_derivative_bounds(
        gas, std::min(prev.rho[c], next.rho[c]), std::max(prev.rho[c], next.rho[c]));
    cell_lo += pp.hi * drho * drho;
    cell_hi += pp.lo * drho * drho;
  }
  const double half_dt_vol = 0.5 * dt * mesh.cell_volume;
  vel_cell *= half_dt_vol;
  cell_lo *= half_dt_vol;
  cell_hi *= half_dt_vol;

  // Face sums at the new level: the two dissipation sums on the left and
  // the upwind velocity term plus the P''(eta) interval term on the right.
  double dnum = 0.0;
  double vel_face = 0.0;
  double face_lo = 0.0, face_hi = 0.0;
  for (const Face& f : mesh.faces) {
    const std::size_t o = static_cast<std::size_t>(f.owner);
    const std::size_t n = static_cast<std::size_t>(f.neighbor);
    const double area = mesh.face_area[f.axis];
    const double vn = 0.5 * (next.u[f.axis][o] + next.u[f.axis][n]);
    const double rho_bar = 0.5 * (next.rho[o] + next.rho[n]);
    const double rho_up = vn >= 0.0 ? next.rho[o] : next.rho[n];
    double ju2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const double ju = next.u[j][n] - next.u[j][o];
      ju2 += ju * ju;
    }
    dnum += area * (h_alpha * rho_bar + h_beta) * ju2;
    vel_face += area * rho_up * std::fabs(vn) * ju2;
    const double jrho = next.rho[n] - next.rho[o];
    const Interval pp = potential_second_derivative_bounds(
        gas, std::min(next.rho[o], next.rho[n]), std::max(next.rho[o], next.rho[n]));
    const double coef = area * (h_alpha + 0.5 * std::fabs(vn)) * jrho * jrho;
    face_lo += pp.hi * coef;
    face_hi += pp.lo * coef;
  }
  vel_face *= 0.5;

  rec.numerical_dissipation = dnum;
  rec.lhs = rec.dt_energy + dnum;
  rec.rhs_lo = -(vel_cell + vel_face + cell_lo + face_lo);
  rec.rhs_hi = -(vel_cell + vel_face + cell_hi + face_hi);
  rec.tolerance = eps_a;
  rec.pass = rec.lhs >= rec.rhs_lo - eps_a && rec.lhs <= rec.rhs_hi + eps_a &&
             rec.lhs <= eps_a;
  return rec;
}

} // namespace efv
