#ifndef EULERFV_IO_HPP
#define EULERFV_IO_HPP

#include <string>
#include <vector>

#include "eulerfv/config.hpp"
#include "eulerfv/consistency.hpp"
#include "eulerfv/kconv.hpp"
#include "eulerfv/solver.hpp"

namespace efv {

// 17 significant digits, C locale, no trailing noise; byte-stable across runs.
std::string format_g17(double v);

void write_text_file(const std::string& path, const std::string& content);

// header: t,cell_index,x0[,x1[,x2]],rho,u0[,u1[,u2]],m0[,...]
std::string field_csv(const Mesh& mesh, const State& state, double t);

// same schema with u derived from the (rho, m) pair of a common-grid field
std::string common_field_csv(const Mesh& mesh, const CommonFields& fields, double t);

// header: step,t,E,dtE,D_num,rhs_lo,rhs_hi,audit_pass
std::string ledger_csv(const std::vector<EnergyAuditRecord>& ledger, double initial_energy);

// header: probe,t,g_id,delta_g,mu_eps_level0,...,classification
std::string diagnostics_csv(const StudyResult& result);

// header: probe,t,atom_index,rho,m0[,m1[,m2]]
std::string young_csv(const StudyResult& result);

// defect estimates per probe: probe,t,d_int,d_kin,conv_00,...
std::string defects_csv(const StudyResult& result);

// long form: cells,h,function,metric,value
std::string consistency_csv(const ConsistencyStudy& study);
// observed orders between consecutive levels: pair,function,metric,order
std::string consistency_orders_csv(const ConsistencyStudy& study);

// legacy VTK structured points of a 2d field
std::string vtk_structured_points(const Mesh& mesh, const State& state, const std::string& title);

// result directories
void write_solve_result(const std::string& directory, const RunConfig& cfg,
                        const Trajectory& traj);
void write_study_result(const std::string& directory, const RunConfig& cfg,
                        const StudyResult& result);
void write_consistency_result(const std::string& directory, const RunConfig& cfg,
                              const ConsistencyStudy& study);

} // namespace efv

#endif
