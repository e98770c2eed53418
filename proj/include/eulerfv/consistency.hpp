#ifndef EULERFV_CONSISTENCY_HPP
#define EULERFV_CONSISTENCY_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "eulerfv/solver.hpp"

namespace efv {

// Smooth time factor (1 - t/t_end)^power: vanishes to high order at t_end,
// has a closed-form antiderivative, so slab integrals are exact.
struct TimeCutoff {
  double t_end = 1.0;
  int power = 4;

  double value(double t) const;
  double derivative(double t) const;
  double integral(double a, double b) const;
  double derivative_sup(int order) const; // sup over [0, t_end] of |d^k/dt^k|
};

// Product of per-axis factors cos(omega x + phase); omega = pi k keeps it
// periodic on [-1,1].
struct TrigFactor {
  double omega = 0.0;
  double phase = 0.0;
};

struct SpatialFactor {
  int dim = 1;
  bool zero = false;                // identically zero component
  std::array<TrigFactor, 3> axes{}; // cos(0) = 1 for inactive/constant axes

  double value(const Point& x) const;
  double partial(const Point& x, int j) const;
  double max_frequency() const;
};

SpatialFactor spatial_zero(int dim);
SpatialFactor spatial_one(int dim);
SpatialFactor spatial_sin(int dim, int axis, int freq);
SpatialFactor spatial_cos(int dim, int axis, int freq);
// cos(pi freq x_axis + phase)
SpatialFactor spatial_wave(int dim, int axis, int freq, double phase);

// phi(t,x) = cutoff(t) * space(x), with an upper bound for the C^3 norm.
struct ScalarTestFunction {
  std::string name;
  TimeCutoff cutoff;
  SpatialFactor space;
  double c3_bound = 1.0;
};

struct VectorTestFunction {
  std::string name;
  TimeCutoff cutoff;
  std::vector<SpatialFactor> components;
  double c3_bound = 1.0;

  double divergence(const Point& x) const;
};

ScalarTestFunction make_scalar_test_function(std::string name, TimeCutoff cutoff,
                                             SpatialFactor space);
VectorTestFunction make_vector_test_function(std::string name, TimeCutoff cutoff,
                                             std::vector<SpatialFactor> components);

std::vector<ScalarTestFunction> default_scalar_bank(int dim, double t_end);
std::vector<VectorTestFunction> default_vector_bank(int dim, double t_end);

// Total weak-form residual of the mass equation against phi:
//   int int [rho dphi/dt + rho u . grad phi] + int rho^0 phi(0,.)
// Cell-center quadrature in space, exact slab integration of the time factor.
double residual_continuity(const Trajectory& traj, const ScalarTestFunction& phi);

// Same for the momentum equation; `diffusion` is the explicit correction
//   -h^beta int sum_faces [u].[Pi phi] dS dt
// and is included in `total`.
struct MomentumResidual {
  double total = 0.0;
  double diffusion = 0.0;
};
MomentumResidual residual_momentum(const Trajectory& traj, const VectorTestFunction& phi);

// Face error integrals for r in {rho, rho u_i}:
//   E1(r) = 1/2 int sum_faces |u_bar.n| [r] [Pi phi] dS dt
//   E2(r) = 1/4 int sum_faces ([u].n) [r] [Pi phi] dS dt
struct ErrorIntegrals {
  double e1_rho = 0.0;
  std::array<double, 3> e1_momentum{0.0, 0.0, 0.0};
  double e2_rho = 0.0;
  std::array<double, 3> e2_momentum{0.0, 0.0, 0.0};
};
ErrorIntegrals error_terms(const Trajectory& traj, const ScalarTestFunction& phi);

// log2 ratios of successive magnitudes; values at h, h/2, h/4, ...
std::vector<double> order_estimate(std::span<const double> values);

// Refinement study used by the consistency command and the acceptance tests.
struct ConsistencyStudy {
  std::vector<int> cells;
  std::vector<double> h;
  std::vector<std::string> scalar_names;
  std::vector<std::string> vector_names;
  // indexed [level][function]
  std::vector<std::vector<double>> continuity_total;
  std::vector<std::vector<double>> e1_rho, e2_rho, e1_m_max, e2_m_max;
  std::vector<std::vector<double>> momentum_total, momentum_diffusion;
};

ConsistencyStudy run_consistency_study(const InitialData& initial, int dim,
                                       const GasLaw& gas, const SchemeParams& params,
                                       const std::vector<int>& cells_per_level,
                                       double t_end,
                                       const std::vector<ScalarTestFunction>& scalars,
                                       const std::vector<VectorTestFunction>& vectors);

} // namespace efv

#endif
