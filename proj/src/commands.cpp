#include "eulerfv/commands.hpp"

#include <filesystem>

#include "eulerfv/errors.hpp"
#include "eulerfv/io.hpp"

namespace efv {
namespace {

InitialData initial_from_config(const StudyConfig& st) {
  switch (st.study_case) {
    case StudyCase::smooth_periodic:
      return smooth_periodic(st.dim, st.smooth);
    case StudyCase::riemann:
      if (!st.riemann.has_value()) throw ConfigError("riemann case not configured");
      return riemann_initial(*st.riemann);
    case StudyCase::two_state_synthetic:
      throw ConfigError("two_state_synthetic bypasses the solver; use the study command");
  }
  throw ConfigError("unknown case");
}

Mesh base_mesh(const StudyConfig& st) {
  MeshSpec spec;
  spec.dim = st.dim;
  for (int a = 0; a < st.dim; ++a) spec.cells[a] = st.base_cells[a];
  return build_mesh(spec);
}

} // namespace

void cmd_solve(const RunConfig& cfg) {
  const InitialData data = initial_from_config(cfg.study);
  const Trajectory traj =
      run(data, base_mesh(cfg.study), cfg.study.gas, cfg.study.scheme, cfg.study.t_end);
  write_solve_result(cfg.output.directory, cfg, traj);
}

Classification cmd_study(const RunConfig& cfg) {
  const StudyResult result = run_study(cfg.study);
  write_study_result(cfg.output.directory, cfg, result);
  return result.diagnostics.classification;
}

void cmd_consistency(const RunConfig& cfg) {
  if (cfg.study.levels < 2)
    throw ConfigError("consistency study needs at least 2 refinement levels");
  const InitialData data = initial_from_config(cfg.study);
  std::vector<int> cells;
  for (int level = 0; level < cfg.study.levels; ++level)
    cells.push_back(cfg.study.base_cells[0] * (1 << level));
  const ConsistencyStudy study = run_consistency_study(
      data, cfg.study.dim, cfg.study.gas, cfg.study.scheme, cells, cfg.study.t_end,
      default_scalar_bank(cfg.study.dim, cfg.study.t_end),
      default_vector_bank(cfg.study.dim, cfg.study.t_end));
  write_consistency_result(cfg.output.directory, cfg, study);
}

AuditSummary cmd_audit(const RunConfig& cfg) {
  const InitialData data = initial_from_config(cfg.study);
  const Trajectory traj =
      run(data, base_mesh(cfg.study), cfg.study.gas, cfg.study.scheme, cfg.study.t_end);
  std::filesystem::create_directories(cfg.output.directory);
  write_text_file(cfg.output.directory + "/resolved_config.ini", cfg.resolved_text);
  write_text_file(cfg.output.directory + "/energy.csv",
                  ledger_csv(traj.ledger, traj.initial_energy));
  AuditSummary summary;
  summary.steps = traj.ledger.size();
  for (const EnergyAuditRecord& rec : traj.ledger)
    if (!rec.pass) ++summary.failures;
  return summary;
}

} // namespace efv
