#include "eulerfv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eulerfv/errors.hpp"
#include "eulerfv/flux.hpp"
#include "eulerfv/linsolve.hpp"

namespace efv {
namespace {

// Packed unknown layout: X[c*b + 0] = rho, X[c*b + 1 + j] = u_j, b = dim+1.
struct Workspace {
  const Mesh& mesh;
  const GasLaw& gas;
  double h_alpha;
  double h_beta;
  std::array<double, 3> coef{}; // face_area / cell_volume per axis
  int b;

  // previous level, fixed during the nonlinear solve
  Field prev_rho;
  std::vector<Field> prev_m;

  Workspace(const Mesh& m, const GasLaw& g, const SchemeParams& p, const State& prev)
      : mesh(m), gas(g), b(m.dim + 1) {
    h_alpha = std::pow(m.h_max, p.alpha);
    h_beta = std::pow(m.h_max, p.beta);
    for (int a = 0; a < m.dim; ++a) coef[a] = m.face_area[a] / m.cell_volume;
    prev_rho = prev.rho;
    prev_m.resize(static_cast<std::size_t>(m.dim));
    for (int j = 0; j < m.dim; ++j) {
      prev_m[j].resize(m.cell_count());
      for (std::size_t c = 0; c < m.cell_count(); ++c)
        prev_m[j][c] = prev.rho[c] * prev.u[j][c];
    }
  }
};

std::vector<double> pack(const State& s, int b) {
  const std::size_t n = s.rho.size();
  std::vector<double> x(n * static_cast<std::size_t>(b));
  for (std::size_t c = 0; c < n; ++c) {
    x[c * b] = s.rho[c];
    for (int j = 0; j + 1 < b; ++j) x[c * b + 1 + j] = s.u[j][c];
  }
  return x;
}

State unpack(const std::vector<double>& x, int dim) {
  const int b = dim + 1;
  const std::size_t n = x.size() / static_cast<std::size_t>(b);
  State s;
  s.rho.resize(n);
  s.u.assign(static_cast<std::size_t>(dim), Field(n));
  for (std::size_t c = 0; c < n; ++c) {
    s.rho[c] = x[c * b];
    for (int j = 0; j < dim; ++j) s.u[j][c] = x[c * b + 1 + j];
  }
  return s;
}

void pressure_cache(const Workspace& w, const std::vector<double>& x, std::vector<double>& p) {
  const std::size_t n = w.mesh.cell_count();
  p.resize(n);
  for (std::size_t c = 0; c < n; ++c)
    p[c] = w.gas.a * std::pow(x[c * w.b], w.gas.gamma);
}

double min_packed_density(const std::vector<double>& x, int b) {
  double m = x[0];
  for (std::size_t c = 0; c * static_cast<std::size_t>(b) < x.size(); ++c)
    m = std::min(m, x[c * b]);
  return m;
}

// Residual over all cells via one pass over the faces.
void full_residual(const Workspace& w, const std::vector<double>& x,
                   const std::vector<double>& p, double dt, std::vector<double>& out) {
  const int d = w.mesh.dim;
  const int b = w.b;
  const std::size_t n = w.mesh.cell_count();
  out.resize(n * static_cast<std::size_t>(b));
  const double inv_dt = 1.0 / dt;
  for (std::size_t c = 0; c < n; ++c) {
    out[c * b] = (x[c * b] - w.prev_rho[c]) * inv_dt;
    for (int j = 0; j < d; ++j)
      out[c * b + 1 + j] = (x[c * b] * x[c * b + 1 + j] - w.prev_m[j][c]) * inv_dt;
  }
  for (const Face& f : w.mesh.faces) {
    const std::size_t o = static_cast<std::size_t>(f.owner);
    const std::size_t q = static_cast<std::size_t>(f.neighbor);
    const int a = f.axis;
    const double vn = 0.5 * (x[o * b + 1 + a] + x[q * b + 1 + a]);
    const double cf = w.coef[a];
    const double frho =
        numerical_flux_hpow(FaceTrace{x[o * b], x[q * b]}, vn, w.h_alpha);
    out[o * b] += cf * frho;
    out[q * b] -= cf * frho;
    const double pbar = 0.5 * (p[o] + p[q]);
    for (int j = 0; j < d; ++j) {
      const double mo = x[o * b] * x[o * b + 1 + j];
      const double mq = x[q * b] * x[q * b + 1 + j];
      const double ju = x[q * b + 1 + j] - x[o * b + 1 + j];
      double g = numerical_flux_hpow(FaceTrace{mo, mq}, vn, w.h_alpha) - w.h_beta * ju;
      if (j == a) g += pbar;
      out[o * b + 1 + j] += cf * g;
      out[q * b + 1 + j] -= cf * g;
    }
  }
}

// Residual of a single cell; algebra identical to full_residual so finite
// differences of the two are consistent.
void cell_residual(const Workspace& w, const std::vector<double>& x,
                   const std::vector<double>& p, double dt, std::size_t c, double* out) {
  const int d = w.mesh.dim;
  const int b = w.b;
  const double inv_dt = 1.0 / dt;
  out[0] = (x[c * b] - w.prev_rho[c]) * inv_dt;
  for (int j = 0; j < d; ++j)
    out[1 + j] = (x[c * b] * x[c * b + 1 + j] - w.prev_m[j][c]) * inv_dt;
  for (int a = 0; a < d; ++a) {
    for (int side = +1; side >= -1; side -= 2) {
      const std::size_t q = w.mesh.neighbor_of(c, a, side);
      const double vn = 0.5 * (x[c * b + 1 + a] + x[q * b + 1 + a]);
      const double cf = w.coef[a] * static_cast<double>(side);
      const FaceTrace rho_tr = side > 0 ? FaceTrace{x[c * b], x[q * b]}
                                        : FaceTrace{x[q * b], x[c * b]};
      out[0] += cf * numerical_flux_hpow(rho_tr, vn, w.h_alpha);
      const double pbar = 0.5 * (p[c] + p[q]);
      for (int j = 0; j < d; ++j) {
        const double mc = x[c * b] * x[c * b + 1 + j];
        const double mq = x[q * b] * x[q * b + 1 + j];
        const FaceTrace m_tr = side > 0 ? FaceTrace{mc, mq} : FaceTrace{mq, mc};
        const double ju = side > 0 ? x[q * b + 1 + j] - x[c * b + 1 + j]
                                   : x[c * b + 1 + j] - x[q * b + 1 + j];
        double g = numerical_flux_hpow(m_tr, vn, w.h_alpha) - w.h_beta * ju;
        if (j == a) g += pbar;
        out[1 + j] += cf * g;
      }
    }
  }
}

double fd_step(double v) {
  return 1.4901161193847656e-08 * std::max(std::fabs(v), 1e-4); // sqrt(eps)
}

// Columns of the Jacobian for the unknowns of cell q, by local finite
// differences. rows lists the affected cells; cols receives, for each row
// cell, a (b x b) block in row-major order.
void fd_column_blocks(const Workspace& w, std::vector<double>& x, std::vector<double>& p,
                      double dt, std::size_t q, const std::vector<std::size_t>& rows,
                      std::vector<double>& base, std::vector<double>& blocks) {
  const int b = w.b;
  base.resize(rows.size() * static_cast<std::size_t>(b));
  blocks.assign(rows.size() * static_cast<std::size_t>(b * b), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    cell_residual(w, x, p, dt, rows[r], base.data() + r * b);
  for (int comp = 0; comp < b; ++comp) {
    const double saved = x[q * b + comp];
    const double saved_p = p[q];
    const double eps = fd_step(saved);
    x[q * b + comp] = saved + eps;
    if (comp == 0) p[q] = w.gas.a * std::pow(x[q * b], w.gas.gamma);
    const double inv_eps = 1.0 / (x[q * b + comp] - saved);
    double pert[4];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      cell_residual(w, x, p, dt, rows[r], pert);
      for (int i = 0; i < b; ++i)
        blocks[r * b * b + i * b + comp] = (pert[i] - base[r * b + i]) * inv_eps;
    }
    x[q * b + comp] = saved;
    p[q] = saved_p;
  }
}

struct LinearSystem {
  // Newton correction: J dx = -R. Returns false if the linear solve failed.
  static bool solve(const Workspace& w, std::vector<double>& x, std::vector<double>& p,
                    double dt, const std::vector<double>& residual_vec,
                    std::vector<double>& dx) {
    const std::size_t n = w.mesh.cell_count();
    const int b = w.b;
    const std::size_t total = n * static_cast<std::size_t>(b);
    dx.assign(total, 0.0);

    if (w.mesh.dim == 1 && n >= 4) {
      // periodic block tridiagonal in cell order
      std::vector<double> lower(n * b * b, 0.0), diag(n * b * b, 0.0), upper(n * b * b, 0.0);
      std::vector<double> base, blocks;
      for (std::size_t q = 0; q < n; ++q) {
        const std::size_t qm = w.mesh.neighbor_of(q, 0, -1);
        const std::size_t qp = w.mesh.neighbor_of(q, 0, +1);
        const std::vector<std::size_t> rows{qm, q, qp};
        fd_column_blocks(w, x, p, dt, q, rows, base, blocks);
        // row qm couples to column q through its upper block, etc.
        for (int i = 0; i < b * b; ++i) {
          upper[qm * b * b + i] += blocks[0 * b * b + i];
          diag[q * b * b + i] += blocks[1 * b * b + i];
          lower[qp * b * b + i] += blocks[2 * b * b + i];
        }
      }
      std::vector<double> rhs(total);
      for (std::size_t i = 0; i < total; ++i) rhs[i] = -residual_vec[i];
      if (!block_cyclic_tridiagonal_solve(n, static_cast<std::size_t>(b),
                                          std::move(lower), std::move(diag),
                                          std::move(upper), rhs))
        return false;
      dx = std::move(rhs);
      return true;
    }

    if (total <= 1024) {
      DenseMatrix jac(total);
      std::vector<double> base, blocks;
      std::vector<std::size_t> rows;
      for (std::size_t q = 0; q < n; ++q) {
        rows.clear();
        rows.push_back(q);
        for (int a = 0; a < w.mesh.dim; ++a)
          for (int side = -1; side <= 1; side += 2) {
            const std::size_t nb = w.mesh.neighbor_of(q, a, side);
            if (std::find(rows.begin(), rows.end(), nb) == rows.end()) rows.push_back(nb);
          }
        fd_column_blocks(w, x, p, dt, q, rows, base, blocks);
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j)
              jac.at(rows[r] * b + i, q * b + j) = blocks[r * b * b + i * b + j];
      }
      std::vector<double> rhs(total);
      for (std::size_t i = 0; i < total; ++i) rhs[i] = -residual_vec[i];
      if (!dense_solve(std::move(jac), rhs)) return false;
      dx = std::move(rhs);
      return true;
    }

    // Matrix-free Newton-Krylov with a block-Jacobi preconditioner.
    std::vector<std::vector<int>> pivots(n);
    std::vector<DenseMatrix> diag_lu(n, DenseMatrix(static_cast<std::size_t>(b)));
    {
      std::vector<double> base, blocks;
      for (std::size_t q = 0; q < n; ++q) {
        const std::vector<std::size_t> rows{q};
        fd_column_blocks(w, x, p, dt, q, rows, base, blocks);
        for (int i = 0; i < b * b; ++i) diag_lu[q].a[static_cast<std::size_t>(i)] = blocks[i];
        if (!lu_factor(diag_lu[q], pivots[q])) return false;
      }
    }
    std::vector<double> r0(total);
    full_residual(w, x, p, dt, r0);
    double xnorm = 0.0;
    for (double v : x) xnorm += v * v;
    xnorm = std::sqrt(xnorm);
    auto apply_op = [&](const std::vector<double>& v, std::vector<double>& out) {
      double vnorm = 0.0;
      for (double vi : v) vnorm += vi * vi;
      vnorm = std::sqrt(vnorm);
      out.assign(total, 0.0);
      if (vnorm == 0.0) return;
      const double eps = 1.4901161193847656e-08 * std::max(1.0, xnorm) / vnorm;
      std::vector<double> xp(total), pp, rp(total);
      for (std::size_t i = 0; i < total; ++i) xp[i] = x[i] + eps * v[i];
      pressure_cache(w, xp, pp);
      full_residual(w, xp, pp, dt, rp);
      for (std::size_t i = 0; i < total; ++i) out[i] = (rp[i] - r0[i]) / eps;
    };
    auto apply_precond = [&](const std::vector<double>& v, std::vector<double>& out) {
      out = v;
      std::vector<double> blk(static_cast<std::size_t>(b));
      for (std::size_t q = 0; q < n; ++q) {
        for (int i = 0; i < b; ++i) blk[static_cast<std::size_t>(i)] = out[q * b + i];
        lu_solve(diag_lu[q], pivots[q], blk);
        for (int i = 0; i < b; ++i) out[q * b + i] = blk[static_cast<std::size_t>(i)];
      }
    };
    std::vector<double> rhs(total);
    for (std::size_t i = 0; i < total; ++i) rhs[i] = -residual_vec[i];
    // The finite-difference matvec is accurate to ~1e-7 relative, so a
    // tighter inner tolerance cannot be certified; the Newton line search
    // judges the direction either way.
    gmres(total, apply_op, apply_precond, rhs, dx, 1e-6, 400, 60);
    double dxnorm = 0.0;
    for (double v : dx) dxnorm += v * v;
    return dxnorm > 0.0;
  }
};

struct NewtonOutcome {
  bool converged = false;
  std::vector<double> x;
  int iterations = 0;
  double norm = 0.0;
};

NewtonOutcome newton_solve(const Workspace& w, const State& prev, double dt,
                           const SchemeParams& params) {
  NewtonOutcome res;
  const int b = w.b;
  std::vector<double> x = pack(prev, b);
  std::vector<double> p;
  pressure_cache(w, x, p);
  std::vector<double> r;
  full_residual(w, x, p, dt, r);
  double rn = residual_norm(r, w.mesh);
  const double r0 = rn;
  // Residual evaluation cannot be trusted below the rounding of its D_t
  // terms, so the relative target is floored there.
  double scale_sq = 0.0;
  for (double v : x) scale_sq += (std::fabs(v) + 1.0) * (std::fabs(v) + 1.0);
  const double fp_floor =
      32.0 * std::numeric_limits<double>::epsilon() / dt *
      std::sqrt(w.mesh.cell_volume * scale_sq);
  const double threshold =
      std::max(r0 > 0.0 ? params.tol_nl * r0 : params.tol_nl, fp_floor);
  if (rn <= threshold) {
    res.converged = true;
    res.x = std::move(x);
    res.norm = rn;
    return res;
  }

  std::vector<double> dx, xt(x.size()), pt, rt;
  for (int iter = 1; iter <= params.max_nl_iter; ++iter) {
    if (!LinearSystem::solve(w, x, p, dt, r, dx)) {
      res.iterations = iter;
      res.norm = rn;
      return res;
    }
    // largest step keeping min rho >= 0.1 * current min rho
    const double floor = 0.1 * min_packed_density(x, b);
    double theta = 1.0;
    for (std::size_t c = 0; c < w.mesh.cell_count(); ++c) {
      const double drho = dx[c * b];
      if (drho < 0.0) {
        const double room = x[c * b] - floor;
        if (room < theta * (-drho)) theta = room / (-drho);
      }
    }
    theta = std::min(theta, 1.0);
    bool accepted = false;
    while (theta > 1e-8) {
      for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + theta * dx[i];
      pressure_cache(w, xt, pt);
      full_residual(w, xt, pt, dt, rt);
      const double rtn = residual_norm(rt, w.mesh);
      if (rtn <= threshold || rtn <= (1.0 - 1e-4 * theta) * rn) {
        x.swap(xt);
        p.swap(pt);
        r.swap(rt);
        rn = rtn;
        accepted = true;
        break;
      }
      theta *= 0.5;
    }
    res.iterations = iter;
    if (!accepted) {
      res.norm = rn;
      return res; // stalled line search
    }
    if (rn <= threshold) {
      res.converged = true;
      res.x = std::move(x);
      res.norm = rn;
      return res;
    }
  }
  res.norm = rn;
  return res;
}

} // namespace

std::vector<double> residual(const State& prev, const State& cand, double dt,
                             const Mesh& mesh, const GasLaw& gas, const SchemeParams& params) {
  if (cand.min_density() <= 0.0)
    throw std::invalid_argument("residual: candidate density must be positive");
  Workspace w(mesh, gas, params, prev);
  std::vector<double> x = pack(cand, w.b);
  std::vector<double> p;
  pressure_cache(w, x, p);
  std::vector<double> out;
  full_residual(w, x, p, dt, out);
  return out;
}

double residual_norm(const std::vector<double>& r, const Mesh& mesh) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(mesh.cell_volume * s);
}

void advance_substeps(const State& prev, double dt, const Mesh& mesh, const GasLaw& gas,
                      const SchemeParams& params, std::vector<SubStep>& trail) {
  std::function<void(const State&, double, int)> attempt = [&](const State& from, double step,
                                                               int depth) {
    Workspace w(mesh, gas, params, from);
    NewtonOutcome out = newton_solve(w, from, step, params);
    if (out.converged) {
      SubStep s;
      s.state = unpack(out.x, mesh.dim);
      s.dt = step;
      s.report.newton_iterations = out.iterations;
      s.report.residual_norm = out.norm;
      s.report.dt_halvings = depth;
      s.report.min_density = s.state.min_density();
      if (!(s.report.min_density > 0.0))
        throw SolveError("implicit step lost density positivity");
      trail.push_back(std::move(s));
      return;
    }
    if (depth >= params.max_dt_halvings) {
      std::ostringstream os;
      os << "nonlinear solve failed: dt=" << step << " after " << out.iterations
         << " iterations (residual " << out.norm << ", " << depth << " halvings)";
      throw SolveError(os.str());
    }
    attempt(from, 0.5 * step, depth + 1);
    attempt(trail.back().state, 0.5 * step, depth + 1);
  };
  attempt(prev, dt, 0);
}

std::pair<State, StepReport> advance(const State& prev, double dt, const Mesh& mesh,
                                     const GasLaw& gas, const SchemeParams& params) {
  if (prev.min_density() <= 0.0)
    throw std::invalid_argument("advance: state density must be positive");
  std::vector<SubStep> trail;
  advance_substeps(prev, dt, mesh, gas, params, trail);
  StepReport merged;
  merged.min_density = trail.front().report.min_density;
  for (const SubStep& s : trail) {
    merged.newton_iterations += s.report.newton_iterations;
    merged.residual_norm = std::max(merged.residual_norm, s.report.residual_norm);
    merged.dt_halvings = std::max(merged.dt_halvings, s.report.dt_halvings);
    merged.min_density = std::min(merged.min_density, s.report.min_density);
  }
  return {trail.back().state, merged};
}

std::size_t Trajectory::slab_index(double t) const {
  if (times.size() < 2 || t <= times.front()) return 0;
  if (t >= times.back()) return states.size() - 1;
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<std::size_t>(std::distance(times.begin(), it)) - 1;
}

Trajectory run(const InitialData& initial, const Mesh& mesh, const GasLaw& gas,
               const SchemeParams& params, double t_end) {
  if (!(t_end > 0.0))
    throw std::invalid_argument("run: t_end must be positive");
  Trajectory traj;
  traj.mesh = mesh;
  traj.gas = gas;
  traj.params = params;
  State state = project_initial_state(initial, mesh, params.vacuum_shift);
  if (!(state.min_density() > 0.0))
    throw SolveError("run: projected initial density is not positive");
  traj.initial_energy = discrete_energy(state, mesh, gas);
  const double eps_a = 1e-6 * traj.initial_energy;

  traj.times.push_back(0.0);
  traj.states.push_back(state);

  const double dt_nominal = params.c_t * mesh.h_max;
  double t = 0.0;
  int step = 0;
  std::vector<SubStep> trail;
  while (t < t_end - 1e-12 * std::max(t_end, dt_nominal)) {
    const double dt = std::min(dt_nominal, t_end - t);
    trail.clear();
    advance_substeps(traj.states.back(), dt, mesh, gas, params, trail);
    for (SubStep& s : trail) {
      const State& before = traj.states.back();
      EnergyAuditRecord rec = balance_audit(before, s.state, s.dt, mesh, gas,
                                            params.alpha, params.beta, eps_a);
      t += s.dt;
      ++step;
      rec.step = step;
      rec.t = t;
      traj.ledger.push_back(rec);
      traj.reports.push_back(s.report);
      traj.times.push_back(t);
      traj.states.push_back(std::move(s.state));
    }
  }
  // land exactly on t_end despite accumulated rounding
  if (traj.times.size() > 1) traj.times.back() = t_end;
  return traj;
}

} // namespace efv
