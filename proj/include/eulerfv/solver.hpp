#ifndef EULERFV_SOLVER_HPP
#define EULERFV_SOLVER_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "eulerfv/energy_audit.hpp"
#include "eulerfv/eos.hpp"
#include "eulerfv/mesh.hpp"
#include "eulerfv/state.hpp"

namespace efv {

struct SchemeParams {
  double alpha = 0.5;
  double beta = -0.8;
  double c_t = 0.5;        // dt = c_t * h
  double tol_nl = 1e-11;   // relative nonlinear residual tolerance
  int max_nl_iter = 50;
  int max_dt_halvings = 4;
  bool vacuum_shift = false;
};

struct StepReport {
  int newton_iterations = 0;
  double residual_norm = 0.0;
  int dt_halvings = 0;
  double min_density = 0.0;
};

// Per-cell residual of the implicit step, dim+1 entries per cell in cell
// order: continuity first, then the momentum components. All flux terms are
// evaluated at the candidate level.
std::vector<double> residual(const State& prev, const State& cand, double dt,
                             const Mesh& mesh, const GasLaw& gas, const SchemeParams& params);

// Volume-weighted l2 norm used for the nonlinear convergence test.
double residual_norm(const std::vector<double>& r, const Mesh& mesh);

// One implicit step of length dt. Newton with a positivity-preserving line
// search; on failure the step is bisected (recursively, up to
// max_dt_halvings) and the intermediate states are appended to `trail` so
// the per-step energy ledger stays exact.
struct SubStep {
  State state;
  double dt = 0.0;
  StepReport report;
};

std::pair<State, StepReport> advance(const State& prev, double dt, const Mesh& mesh,
                                     const GasLaw& gas, const SchemeParams& params);
void advance_substeps(const State& prev, double dt, const Mesh& mesh, const GasLaw& gas,
                      const SchemeParams& params, std::vector<SubStep>& trail);

// A complete run: projected initial data, uniform steps dt = c_t*h with the
// last step clipped to land on t_end, and the per-step energy ledger.
// states[k] holds on [times[k], times[k+1]).
struct Trajectory {
  Mesh mesh;
  GasLaw gas;
  SchemeParams params;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<StepReport> reports;
  std::vector<EnergyAuditRecord> ledger;
  double initial_energy = 0.0;

  std::size_t step_count() const { return reports.size(); }
  // index k with times[k] <= t < times[k+1] (last index for t >= t_end)
  std::size_t slab_index(double t) const;
  const State& state_at(double t) const { return states[slab_index(t)]; }
};

Trajectory run(const InitialData& initial, const Mesh& mesh, const GasLaw& gas,
               const SchemeParams& params, double t_end);

} // namespace efv

#endif
