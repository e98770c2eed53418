#ifndef EULERFV_CASES_HPP
#define EULERFV_CASES_HPP

#include <array>
#include <utility>

#include "eulerfv/eos.hpp"
#include "eulerfv/state.hpp"

namespace efv {

// rho0 = mean + amp * sin(pi k.x), u0_j = amp_u[j] * sin(pi k'_j x_j)
struct SmoothPeriodicParams {
  double mean_rho = 1.0;
  double amp_rho = 0.2;
  std::array<int, 3> freq_rho{1, 0, 0};
  std::array<double, 3> amp_u{0.3, 0.0, 0.0};
  std::array<int, 3> freq_u{1, 1, 1};
};

InitialData smooth_periodic(int dim, const SmoothPeriodicParams& params);

// 1d Riemann data (jump at x = 0) whose waves are pure rarefactions; the
// periodic wrap at x = +-1 carries the reverse (compressive) jump, so the
// exact solution below is only valid inside a window around the origin and
// before the wrap waves arrive.
struct RiemannState {
  double rho = 1.0;
  double u = 0.0;
};

struct RiemannCase {
  GasLaw gas;
  RiemannState left, right, middle;
  double sound_left = 0.0, sound_right = 0.0, sound_middle = 0.0;
  double head1 = 0.0, tail1 = 0.0; // 1-fan speed range
  double tail2 = 0.0, head2 = 0.0; // 2-fan speed range
  double window = 0.5;             // half width of the comparison window
  double t_valid = 0.0;
};

double sound_speed(const GasLaw& gas, double rho);

// Throws std::invalid_argument when the states would open a vacuum or when
// either wave would be a shock.
RiemannCase make_riemann(const GasLaw& gas, RiemannState left, RiemannState right,
                         double window = 0.5);

InitialData riemann_initial(const RiemannCase& rc);

// Self-similar two-fan solution of the jump at x = 0; valid for t < t_valid
// and |x| <= window. At t = 0 returns the raw data.
std::pair<double, double> exact_rarefaction(const RiemannCase& rc, double x, double t);

// Spatially constant phase-space states for the solver-free diagnostics path.
struct PhaseState {
  double rho = 1.0;
  std::array<double, 3> m{0.0, 0.0, 0.0};
};

struct TwoStatePair {
  PhaseState a;
  PhaseState b;
};

// Discrete energy of the projected data on a fine reference grid; every case
// must have this finite.
double initial_energy_estimate(const InitialData& data, int dim, const GasLaw& gas,
                               int cells_per_axis = 256);

} // namespace efv

#endif
