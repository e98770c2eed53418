#ifndef EULERFV_ENERGY_AUDIT_HPP
#define EULERFV_ENERGY_AUDIT_HPP

#include "eulerfv/eos.hpp"
#include "eulerfv/mesh.hpp"
#include "eulerfv/state.hpp"

namespace efv {

// Total discrete energy: sum over cells of |K| (1/2 rho |u|^2 + P(rho)).
double discrete_energy(const State& state, const Mesh& mesh, const GasLaw& gas);

// One step of the discrete energy balance. The scheme satisfies, per
// backward Euler step (up to the nonlinear solve tolerance):
//
//   D_t E + sum_faces |s| (h^a rho_bar |[u]|^2 + h^b |[u]|^2)
//     = - dt/2 sum_K |K| P''(xi_K) |D_t rho_K|^2
//       - sum_faces |s| (h^a + |vn|/2) P''(eta_s) [rho]^2
//       - dt/2 sum_K |K| rho_K^{k-1} |D_t u_K|^2
//       - 1/2 sum_faces |s| rho_up |vn| |[u]|^2
//
// with xi_K in co{rho^{k-1}, rho^k} and eta_s in co{rho_K, rho_L}. The two
// P''-bearing sums are bracketed by interval bounds of P'' over those hulls.
struct EnergyAuditRecord {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;
  double energy_prev = 0.0;
  double energy = 0.0;
  double dt_energy = 0.0;               // (E^k - E^{k-1}) / dt
  double numerical_dissipation = 0.0;   // the two left-hand jump sums, >= 0
  double lhs = 0.0;                     // dt_energy + numerical_dissipation
  double rhs_lo = 0.0;
  double rhs_hi = 0.0;
  double tolerance = 0.0;               // eps_a used for the pass decision
  bool pass = false;
};

EnergyAuditRecord balance_audit(const State& prev, const State& next, double dt,
                                const Mesh& mesh, const GasLaw& gas,
                                double alpha, double beta, double eps_a);

} // namespace efv

#endif
