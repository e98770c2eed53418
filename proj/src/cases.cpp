#include "eulerfv/cases.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "eulerfv/energy_audit.hpp"
#include "eulerfv/mesh.hpp"

namespace efv {

InitialData smooth_periodic(int dim, const SmoothPeriodicParams& params) {
  if (!(params.mean_rho - std::fabs(params.amp_rho) > 0.0))
    throw std::invalid_argument("smooth_periodic: mean density must exceed |amplitude|");
  const double pi = std::numbers::pi;
  InitialData data;
  data.density = [params, dim, pi](const Point& x) {
    double phase = 0.0;
    for (int a = 0; a < dim; ++a)
      phase += static_cast<double>(params.freq_rho[a]) * x[a];
    return params.mean_rho + params.amp_rho * std::sin(pi * phase);
  };
  for (int j = 0; j < dim; ++j)
    data.velocity.push_back([params, j, pi](const Point& x) {
      return params.amp_u[j] * std::sin(pi * static_cast<double>(params.freq_u[j]) * x[j]);
    });
  return data;
}

double sound_speed(const GasLaw& gas, double rho) {
  return std::sqrt(gas.a * gas.gamma * std::pow(rho, gas.gamma - 1.0));
}

RiemannCase make_riemann(const GasLaw& gas, RiemannState left, RiemannState right,
                         double window) {
  if (!(left.rho > 0.0) || !(right.rho > 0.0))
    throw std::invalid_argument("riemann: states must have positive density");
  if (!(window > 0.0 && window < 1.0))
    throw std::invalid_argument("riemann: window must lie in (0,1)");
  RiemannCase rc;
  rc.gas = gas;
  rc.left = left;
  rc.right = right;
  rc.window = window;
  rc.sound_left = sound_speed(gas, left.rho);
  rc.sound_right = sound_speed(gas, right.rho);
  const double gm1 = gas.gamma - 1.0;

  // Riemann invariants fix the middle state of a two-rarefaction solution.
  const double w_plus = left.u + 2.0 * rc.sound_left / gm1;
  const double w_minus = right.u - 2.0 * rc.sound_right / gm1;
  const double c_m = 0.25 * gm1 * (w_plus - w_minus);
  if (!(c_m > 0.0))
    throw std::invalid_argument("riemann: states open a vacuum (invariant gap is nonpositive)");
  rc.sound_middle = c_m;
  rc.middle.u = 0.5 * (w_plus + w_minus);
  rc.middle.rho = std::pow(c_m * c_m / (gas.a * gas.gamma), 1.0 / gm1);

  const double slack = 1.0 + 1e-10;
  if (rc.middle.rho > left.rho * slack)
    throw std::invalid_argument("riemann: the 1-wave would be a shock, not a rarefaction");
  if (rc.middle.rho > right.rho * slack)
    throw std::invalid_argument("riemann: the 2-wave would be a shock, not a rarefaction");

  rc.head1 = left.u - rc.sound_left;
  rc.tail1 = rc.middle.u - c_m;
  rc.tail2 = rc.middle.u + c_m;
  rc.head2 = right.u + rc.sound_right;

  double s_max = 0.0;
  for (double s : {rc.head1, rc.tail1, rc.tail2, rc.head2,
                   std::fabs(left.u) + rc.sound_left, std::fabs(right.u) + rc.sound_right,
                   std::fabs(rc.middle.u) + c_m})
    s_max = std::max(s_max, std::fabs(s));
  if (s_max == 0.0) s_max = 1e-12;
  // keep the fans inside the window and the wrap-jump waves outside it;
  // the wrap waves may be shocks, give them a 1.5x speed margin
  rc.t_valid = 0.95 * std::min(window / s_max, (1.0 - window) / (1.5 * s_max));
  return rc;
}

InitialData riemann_initial(const RiemannCase& rc) {
  const RiemannState l = rc.left, r = rc.right;
  InitialData data;
  data.density = [l, r](const Point& x) { return x[0] < 0.0 ? l.rho : r.rho; };
  data.velocity = {[l, r](const Point& x) { return x[0] < 0.0 ? l.u : r.u; }};
  return data;
}

std::pair<double, double> exact_rarefaction(const RiemannCase& rc, double x, double t) {
  if (t < 0.0 || t > rc.t_valid) {
    std::ostringstream os;
    os << "exact_rarefaction: t = " << t << " outside [0, " << rc.t_valid << "]";
    throw std::invalid_argument(os.str());
  }
  if (t == 0.0)
    return x < 0.0 ? std::make_pair(rc.left.rho, rc.left.u)
                   : std::make_pair(rc.right.rho, rc.right.u);
  const double gm1 = rc.gas.gamma - 1.0;
  const double edge = gm1 / (rc.gas.gamma + 1.0);
  const double w_plus = rc.left.u + 2.0 * rc.sound_left / gm1;
  const double w_minus = rc.right.u - 2.0 * rc.sound_right / gm1;
  const double xi = x / t;
  auto rho_of_c = [&](double c) {
    return std::pow(c * c / (rc.gas.a * rc.gas.gamma), 1.0 / gm1);
  };
  if (xi <= rc.head1) return {rc.left.rho, rc.left.u};
  if (xi < rc.tail1) {
    const double c = edge * (w_plus - xi);
    return {rho_of_c(c), xi + c};
  }
  if (xi <= rc.tail2) return {rc.middle.rho, rc.middle.u};
  if (xi < rc.head2) {
    const double c = edge * (xi - w_minus);
    return {rho_of_c(c), xi - c};
  }
  return {rc.right.rho, rc.right.u};
}

double initial_energy_estimate(const InitialData& data, int dim, const GasLaw& gas,
                               int cells_per_axis) {
  MeshSpec spec;
  spec.dim = dim;
  for (int a = 0; a < dim; ++a) spec.cells[a] = cells_per_axis;
  Mesh mesh = build_mesh(spec);
  State s = project_initial_state(data, mesh, false);
  return discrete_energy(s, mesh, gas);
}

} // namespace efv
