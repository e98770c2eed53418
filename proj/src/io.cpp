#include "eulerfv/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eulerfv/errors.hpp"

namespace efv {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SolveError("io: cannot write '" + path + "'");
  out << content;
}

namespace {
std::string snapshot_name(const char* stem, std::size_t index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%04zu.csv", stem, index);
  return buf;
}
} // namespace

std::string field_csv(const Mesh& mesh, const State& state, double t) {
  const int d = mesh.dim;
  std::ostringstream os;
  os << "t,cell_index";
  for (int a = 0; a < d; ++a) os << ",x" << a;
  os << ",rho";
  for (int a = 0; a < d; ++a) os << ",u" << a;
  for (int a = 0; a < d; ++a) os << ",m" << a;
  os << "\n";
  const std::string ts = format_g17(t);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    os << ts << "," << c;
    for (int a = 0; a < d; ++a) os << "," << format_g17(mesh.center(c)[a]);
    os << "," << format_g17(state.rho[c]);
    for (int a = 0; a < d; ++a) os << "," << format_g17(state.u[a][c]);
    for (int a = 0; a < d; ++a) os << "," << format_g17(state.rho[c] * state.u[a][c]);
    os << "\n";
  }
  return os.str();
}

std::string common_field_csv(const Mesh& mesh, const CommonFields& fields, double t) {
  const int d = mesh.dim;
  std::ostringstream os;
  os << "t,cell_index";
  for (int a = 0; a < d; ++a) os << ",x" << a;
  os << ",rho";
  for (int a = 0; a < d; ++a) os << ",u" << a;
  for (int a = 0; a < d; ++a) os << ",m" << a;
  os << "\n";
  const std::string ts = format_g17(t);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    os << ts << "," << c;
    for (int a = 0; a < d; ++a) os << "," << format_g17(mesh.center(c)[a]);
    os << "," << format_g17(fields.rho[c]);
    for (int a = 0; a < d; ++a) {
      const double m = fields.m[static_cast<std::size_t>(a)][c];
      os << "," << format_g17(fields.rho[c] > 0.0 ? m / fields.rho[c] : 0.0);
    }
    for (int a = 0; a < d; ++a)
      os << "," << format_g17(fields.m[static_cast<std::size_t>(a)][c]);
    os << "\n";
  }
  return os.str();
}

std::string ledger_csv(const std::vector<EnergyAuditRecord>& ledger, double initial_energy) {
  std::ostringstream os;
  os << "step,t,E,dtE,D_num,rhs_lo,rhs_hi,audit_pass\n";
  os << "0,0," << format_g17(initial_energy) << ",0,0,0,0,1\n";
  for (const EnergyAuditRecord& rec : ledger) {
    os << rec.step << "," << format_g17(rec.t) << "," << format_g17(rec.energy) << ","
       << format_g17(rec.dt_energy) << "," << format_g17(rec.numerical_dissipation) << ","
       << format_g17(rec.rhs_lo) << "," << format_g17(rec.rhs_hi) << ","
       << (rec.pass ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string diagnostics_csv(const StudyResult& result) {
  std::ostringstream os;
  os << "probe,t,g_id,delta_g";
  for (std::size_t l = 0; l < result.levels.size(); ++l) os << ",mu_eps_level" << l;
  os << ",classification\n";
  const std::string label = to_string(result.diagnostics.classification);
  for (std::size_t p = 0; p < result.probes.size(); ++p) {
    const ProbeRef& pr = result.probes[p];
    const std::string t = format_g17(result.snapshot_times[pr.snapshot]);
    for (std::size_t g = 0; g < result.bank.size(); ++g) {
      os << pr.cell << "," << t << "," << result.bank[g].id << ","
         << format_g17(result.delta_g[p][g]);
      for (double mu : result.diagnostics.mu_per_level) os << "," << format_g17(mu);
      os << "," << label << "\n";
    }
  }
  return os.str();
}

std::string young_csv(const StudyResult& result) {
  const int d = result.common_mesh.dim;
  std::ostringstream os;
  os << "probe,t,atom_index";
  os << ",rho";
  for (int a = 0; a < d; ++a) os << ",m" << a;
  os << "\n";
  for (std::size_t p = 0; p < result.probes.size(); ++p) {
    const ProbeRef& pr = result.probes[p];
    const std::string t = format_g17(result.snapshot_times[pr.snapshot]);
    const EmpiricalYoungMeasure& v = result.measures[p];
    for (std::size_t k = 0; k < v.atoms.size(); ++k) {
      os << pr.cell << "," << t << "," << k << "," << format_g17(v.atoms[k].rho);
      for (int a = 0; a < d; ++a) os << "," << format_g17(v.atoms[k].m[a]);
      os << "\n";
    }
  }
  return os.str();
}

std::string defects_csv(const StudyResult& result) {
  const int d = result.common_mesh.dim;
  std::ostringstream os;
  os << "probe,t,d_int,d_kin";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) os << ",conv_" << i << j;
  os << "\n";
  for (std::size_t p = 0; p < result.probes.size(); ++p) {
    const ProbeRef& pr = result.probes[p];
    const DefectEstimates& de = result.probe_defects[p];
    os << pr.cell << "," << format_g17(result.snapshot_times[pr.snapshot]) << ","
       << format_g17(de.d_int) << "," << format_g17(de.d_kin);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) os << "," << format_g17(de.d_conv.at(i, j));
    os << "\n";
  }
  return os.str();
}

namespace {
void append_metric_rows(std::ostringstream& os, const ConsistencyStudy& study,
                        const std::vector<std::string>& names,
                        const std::vector<std::vector<double>>& values,
                        const char* metric) {
  for (std::size_t l = 0; l < study.cells.size(); ++l)
    for (std::size_t f = 0; f < names.size(); ++f)
      os << study.cells[l] << "," << format_g17(study.h[l]) << "," << names[f] << ","
         << metric << "," << format_g17(values[l][f]) << "\n";
}

void append_order_rows(std::ostringstream& os, const ConsistencyStudy& study,
                       const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& values,
                       const char* metric) {
  for (std::size_t f = 0; f < names.size(); ++f) {
    std::vector<double> seq;
    for (std::size_t l = 0; l < study.cells.size(); ++l) seq.push_back(values[l][f]);
    const std::vector<double> orders = order_estimate(seq);
    for (std::size_t l = 0; l + 1 < study.cells.size(); ++l)
      os << study.cells[l] << "->" << study.cells[l + 1] << "," << names[f] << "," << metric
         << "," << format_g17(orders[l]) << "\n";
  }
}
} // namespace

std::string consistency_csv(const ConsistencyStudy& study) {
  std::ostringstream os;
  os << "cells,h,function,metric,value\n";
  append_metric_rows(os, study, study.scalar_names, study.continuity_total, "continuity_total");
  append_metric_rows(os, study, study.scalar_names, study.e1_rho, "E1_rho");
  append_metric_rows(os, study, study.scalar_names, study.e2_rho, "E2_rho");
  append_metric_rows(os, study, study.scalar_names, study.e1_m_max, "E1_m_max");
  append_metric_rows(os, study, study.scalar_names, study.e2_m_max, "E2_m_max");
  append_metric_rows(os, study, study.vector_names, study.momentum_total, "momentum_total");
  append_metric_rows(os, study, study.vector_names, study.momentum_diffusion, "diffusion_d");
  return os.str();
}

std::string consistency_orders_csv(const ConsistencyStudy& study) {
  std::ostringstream os;
  os << "pair,function,metric,order\n";
  append_order_rows(os, study, study.scalar_names, study.continuity_total, "continuity_total");
  append_order_rows(os, study, study.scalar_names, study.e1_rho, "E1_rho");
  append_order_rows(os, study, study.scalar_names, study.e2_rho, "E2_rho");
  append_order_rows(os, study, study.scalar_names, study.e1_m_max, "E1_m_max");
  append_order_rows(os, study, study.scalar_names, study.e2_m_max, "E2_m_max");
  append_order_rows(os, study, study.vector_names, study.momentum_total, "momentum_total");
  append_order_rows(os, study, study.vector_names, study.momentum_diffusion, "diffusion_d");
  return os.str();
}

std::string vtk_structured_points(const Mesh& mesh, const State& state,
                                  const std::string& title) {
  if (mesh.dim != 2)
    throw std::invalid_argument("vtk export supports 2d fields only");
  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << mesh.n[0] + 1 << " " << mesh.n[1] + 1 << " 1\n";
  os << "ORIGIN -1 -1 0\n";
  os << "SPACING " << format_g17(mesh.h[0]) << " " << format_g17(mesh.h[1]) << " 1\n";
  os << "CELL_DATA " << mesh.cell_count() << "\n";
  os << "SCALARS rho double 1\nLOOKUP_TABLE default\n";
  // VTK structured points order x fastest; our cells are x slowest
  for (int j = 0; j < mesh.n[1]; ++j)
    for (int i = 0; i < mesh.n[0]; ++i)
      os << format_g17(state.rho[mesh.linear_index({i, j, 0})]) << "\n";
  os << "VECTORS velocity double\n";
  for (int j = 0; j < mesh.n[1]; ++j)
    for (int i = 0; i < mesh.n[0]; ++i) {
      const std::size_t c = mesh.linear_index({i, j, 0});
      os << format_g17(state.u[0][c]) << " " << format_g17(state.u[1][c]) << " 0\n";
    }
  return os.str();
}

void write_solve_result(const std::string& directory, const RunConfig& cfg,
                        const Trajectory& traj) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  write_text_file(directory + "/resolved_config.ini", cfg.resolved_text);
  for (std::size_t s = 0; s < cfg.study.snapshot_times.size(); ++s) {
    const double ts = cfg.study.snapshot_times[s];
    const State& state = traj.state_at(ts);
    write_text_file(directory + "/" + snapshot_name("fields", s),
                    field_csv(traj.mesh, state, ts));
    if (cfg.output.vtk && traj.mesh.dim == 2) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "fields_%04zu.vtk", s);
      write_text_file(directory + "/" + buf,
                      vtk_structured_points(traj.mesh, state, "isentropic euler fields"));
    }
  }
  write_text_file(directory + "/energy.csv", ledger_csv(traj.ledger, traj.initial_energy));
}

void write_study_result(const std::string& directory, const RunConfig& cfg,
                        const StudyResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  write_text_file(directory + "/resolved_config.ini", cfg.resolved_text);
  for (std::size_t l = 0; l < result.levels.size(); ++l) {
    const LevelOutput& lev = result.levels[l];
    const std::string subdir = directory + "/level" + std::to_string(l);
    fs::create_directories(subdir);
    for (std::size_t s = 0; s < result.snapshot_times.size(); ++s) {
      write_text_file(subdir + "/" + snapshot_name("fields", s),
                      field_csv(lev.mesh, lev.snapshots[s], result.snapshot_times[s]));
      if (cfg.output.vtk && lev.mesh.dim == 2) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "fields_%04zu.vtk", s);
        write_text_file(subdir + "/" + buf,
                        vtk_structured_points(lev.mesh, lev.snapshots[s], "study level fields"));
      }
    }
    write_text_file(subdir + "/energy.csv", ledger_csv(lev.ledger, lev.initial_energy));
  }
  for (std::size_t s = 0; s < result.snapshot_times.size(); ++s)
    write_text_file(directory + "/" + snapshot_name("cesaro", s),
                    common_field_csv(result.common_mesh, result.cesaro[s],
                                     result.snapshot_times[s]));
  write_text_file(directory + "/diagnostics.csv", diagnostics_csv(result));
  write_text_file(directory + "/young_measures.csv", young_csv(result));
  write_text_file(directory + "/defects.csv", defects_csv(result));
}

void write_consistency_result(const std::string& directory, const RunConfig& cfg,
                              const ConsistencyStudy& study) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  write_text_file(directory + "/resolved_config.ini", cfg.resolved_text);
  write_text_file(directory + "/consistency.csv", consistency_csv(study));
  write_text_file(directory + "/consistency_orders.csv", consistency_orders_csv(study));
}

} // namespace efv
