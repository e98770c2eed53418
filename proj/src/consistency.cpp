#include "eulerfv/consistency.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

namespace efv {
namespace {

struct SpatialTables {
  Field value;                  // chi(x_K)
  std::vector<Field> gradient;  // d chi / d x_j at cell centers
  Field projection;             // cell averages Pi chi (order-3 Gauss)
};

SpatialTables tabulate(const Mesh& mesh, const SpatialFactor& chi, bool with_projection) {
  SpatialTables t;
  t.value.resize(mesh.cell_count());
  t.gradient.assign(static_cast<std::size_t>(mesh.dim), Field(mesh.cell_count()));
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const Point& x = mesh.center(c);
    t.value[c] = chi.value(x);
    for (int j = 0; j < mesh.dim; ++j) t.gradient[j][c] = chi.partial(x, j);
  }
  if (with_projection)
    t.projection = project(mesh, [&chi](const Point& x) { return chi.value(x); });
  return t;
}

} // namespace

double residual_continuity(const Trajectory& traj, const ScalarTestFunction& phi) {
  const Mesh& mesh = traj.mesh;
  const SpatialTables tab = tabulate(mesh, phi.space, false);
  const double vol = mesh.cell_volume;

  double acc = 0.0;
  const double psi0 = phi.cutoff.value(0.0);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c)
    acc += traj.states.front().rho[c] * tab.value[c];
  acc *= psi0;

  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const State& s = traj.states[k];
    const double dpsi = phi.cutoff.value(traj.times[k + 1]) - phi.cutoff.value(traj.times[k]);
    const double ipsi = phi.cutoff.integral(traj.times[k], traj.times[k + 1]);
    double slab = 0.0;
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      double conv = 0.0;
      for (int j = 0; j < mesh.dim; ++j)
        conv += s.rho[c] * s.u[j][c] * tab.gradient[j][c];
      slab += s.rho[c] * tab.value[c] * dpsi + conv * ipsi;
    }
    acc += slab;
  }
  return vol * acc;
}

MomentumResidual residual_momentum(const Trajectory& traj, const VectorTestFunction& phi) {
  const Mesh& mesh = traj.mesh;
  const int d = mesh.dim;
  if (static_cast<int>(phi.components.size()) != d)
    throw std::invalid_argument("momentum residual: component count mismatch");
  std::vector<SpatialTables> tabs;
  tabs.reserve(phi.components.size());
  for (const SpatialFactor& comp : phi.components)
    tabs.push_back(tabulate(mesh, comp, true));
  const double vol = mesh.cell_volume;
  const double h_beta = std::pow(mesh.h_max, traj.params.beta);

  MomentumResidual out;
  double acc = 0.0;
  const double psi0 = phi.cutoff.value(0.0);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const State& s0 = traj.states.front();
    for (int j = 0; j < d; ++j)
      acc += s0.rho[c] * s0.u[j][c] * tabs[static_cast<std::size_t>(j)].value[c] * psi0;
  }

  double diffusion = 0.0;
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const State& s = traj.states[k];
    const double dpsi = phi.cutoff.value(traj.times[k + 1]) - phi.cutoff.value(traj.times[k]);
    const double ipsi = phi.cutoff.integral(traj.times[k], traj.times[k + 1]);
    double slab = 0.0;
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      const double p = pressure(traj.gas, s.rho[c]);
      double dive = 0.0, time_part = 0.0, conv = 0.0;
      for (int j = 0; j < d; ++j) {
        const auto& tj = tabs[static_cast<std::size_t>(j)];
        const double mj = s.rho[c] * s.u[j][c];
        time_part += mj * tj.value[c];
        dive += tj.gradient[j][c];
        for (int i = 0; i < d; ++i)
          conv += mj * s.u[i][c] * tj.gradient[i][c];
      }
      slab += time_part * dpsi + (conv + p * dive) * ipsi;
    }
    acc += slab;

    double face_sum = 0.0;
    for (const Face& f : mesh.faces) {
      const std::size_t o = static_cast<std::size_t>(f.owner);
      const std::size_t q = static_cast<std::size_t>(f.neighbor);
      double dot = 0.0;
      for (int j = 0; j < d; ++j) {
        const auto& tj = tabs[static_cast<std::size_t>(j)];
        dot += (s.u[j][q] - s.u[j][o]) * (tj.projection[q] - tj.projection[o]);
      }
      face_sum += mesh.face_area[f.axis] * dot;
    }
    diffusion += face_sum * ipsi;
  }
  out.diffusion = -h_beta * diffusion;
  out.total = vol * acc + out.diffusion;
  return out;
}

ErrorIntegrals error_terms(const Trajectory& traj, const ScalarTestFunction& phi) {
  const Mesh& mesh = traj.mesh;
  const int d = mesh.dim;
  const Field proj = project(mesh, [&phi](const Point& x) { return phi.space.value(x); });

  ErrorIntegrals out;
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const State& s = traj.states[k];
    const double ipsi = phi.cutoff.integral(traj.times[k], traj.times[k + 1]);
    double e1r = 0.0, e2r = 0.0;
    std::array<double, 3> e1m{0.0, 0.0, 0.0}, e2m{0.0, 0.0, 0.0};
    for (const Face& f : mesh.faces) {
      const std::size_t o = static_cast<std::size_t>(f.owner);
      const std::size_t q = static_cast<std::size_t>(f.neighbor);
      const double area = mesh.face_area[f.axis];
      const double jphi = proj[q] - proj[o];
      const double vn = 0.5 * (s.u[f.axis][o] + s.u[f.axis][q]);
      const double jun = s.u[f.axis][q] - s.u[f.axis][o];
      const double jrho = s.rho[q] - s.rho[o];
      e1r += area * std::fabs(vn) * jrho * jphi;
      e2r += area * jun * jrho * jphi;
      for (int j = 0; j < d; ++j) {
        const double jm = s.rho[q] * s.u[j][q] - s.rho[o] * s.u[j][o];
        e1m[j] += area * std::fabs(vn) * jm * jphi;
        e2m[j] += area * jun * jm * jphi;
      }
    }
    out.e1_rho += ipsi * e1r;
    out.e2_rho += ipsi * e2r;
    for (int j = 0; j < d; ++j) {
      out.e1_momentum[j] += ipsi * e1m[j];
      out.e2_momentum[j] += ipsi * e2m[j];
    }
  }
  out.e1_rho *= 0.5;
  out.e2_rho *= 0.25;
  for (int j = 0; j < d; ++j) {
    out.e1_momentum[j] *= 0.5;
    out.e2_momentum[j] *= 0.25;
  }
  return out;
}

std::vector<double> order_estimate(std::span<const double> values) {
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double a = std::fabs(values[i]);
    const double b = std::fabs(values[i + 1]);
    if (b == 0.0)
      orders.push_back(a == 0.0 ? 0.0 : 60.0); // below representable decay
    else
      orders.push_back(std::log2(a / b));
  }
  return orders;
}

ConsistencyStudy run_consistency_study(const InitialData& initial, int dim,
                                       const GasLaw& gas, const SchemeParams& params,
                                       const std::vector<int>& cells_per_level,
                                       double t_end,
                                       const std::vector<ScalarTestFunction>& scalars,
                                       const std::vector<VectorTestFunction>& vectors) {
  if (cells_per_level.size() < 2)
    throw std::invalid_argument("consistency study: need at least 2 levels for orders");
  validate_parameters(gas.gamma, params.alpha, params.beta);

  ConsistencyStudy study;
  study.cells = cells_per_level;
  for (const ScalarTestFunction& f : scalars) study.scalar_names.push_back(f.name);
  for (const VectorTestFunction& f : vectors) study.vector_names.push_back(f.name);

  std::vector<std::future<Trajectory>> runs;
  runs.reserve(cells_per_level.size());
  for (int n : cells_per_level)
    runs.push_back(std::async(std::launch::async, [&, n]() {
      MeshSpec spec;
      spec.dim = dim;
      for (int a = 0; a < dim; ++a) spec.cells[a] = n;
      return run(initial, build_mesh(spec), gas, params, t_end);
    }));

  for (auto& fut : runs) {
    Trajectory traj = fut.get();
    study.h.push_back(traj.mesh.h_max);
    std::vector<double> cont, e1r, e2r, e1m, e2m, momt, momd;
    for (const ScalarTestFunction& f : scalars) {
      cont.push_back(residual_continuity(traj, f));
      const ErrorIntegrals e = error_terms(traj, f);
      e1r.push_back(e.e1_rho);
      e2r.push_back(e.e2_rho);
      double m1 = 0.0, m2 = 0.0;
      for (int j = 0; j < dim; ++j) {
        m1 = std::max(m1, std::fabs(e.e1_momentum[j]));
        m2 = std::max(m2, std::fabs(e.e2_momentum[j]));
      }
      e1m.push_back(m1);
      e2m.push_back(m2);
    }
    for (const VectorTestFunction& f : vectors) {
      const MomentumResidual r = residual_momentum(traj, f);
      momt.push_back(r.total);
      momd.push_back(r.diffusion);
    }
    study.continuity_total.push_back(std::move(cont));
    study.e1_rho.push_back(std::move(e1r));
    study.e2_rho.push_back(std::move(e2r));
    study.e1_m_max.push_back(std::move(e1m));
    study.e2_m_max.push_back(std::move(e2m));
    study.momentum_total.push_back(std::move(momt));
    study.momentum_diffusion.push_back(std::move(momd));
  }
  return study;
}

} // namespace efv
