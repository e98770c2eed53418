#include "eulerfv/kconv.hpp"

#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eulerfv/errors.hpp"

namespace efv {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::strong_k: return "strong-K";
    case Classification::oscillatory: return "oscillatory";
    case Classification::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

CesaroAccumulator::CesaroAccumulator(int dim, std::size_t cells, std::size_t bank_size)
    : dim_(dim),
      sum_rho_(cells, 0.0),
      sum_m_(static_cast<std::size_t>(dim), Field(cells, 0.0)),
      sum_g_(bank_size, Field(cells, 0.0)),
      sum_kin_(cells, 0.0),
      sum_int_(cells, 0.0) {}

void CesaroAccumulator::add(const CommonFields& fields, const ObservableBank& bank,
                            const GasLaw& gas) {
  const std::size_t cells = sum_rho_.size();
  if (fields.rho.size() != cells)
    throw std::invalid_argument("accumulator: field size mismatch");
  for (std::size_t c = 0; c < cells; ++c) {
    sum_rho_[c] += fields.rho[c];
    PhasePoint u;
    u.dim = dim_;
    u.rho = fields.rho[c];
    for (int j = 0; j < dim_; ++j) {
      sum_m_[static_cast<std::size_t>(j)][c] += fields.m[static_cast<std::size_t>(j)][c];
      u.m[j] = fields.m[static_cast<std::size_t>(j)][c];
    }
    for (std::size_t g = 0; g < bank.size(); ++g)
      sum_g_[g][c] += bank[g].eval(u);
    double m2 = 0.0;
    for (int j = 0; j < dim_; ++j) m2 += u.m[j] * u.m[j];
    if (u.rho > 0.0) sum_kin_[c] += 0.5 * m2 / u.rho;
    sum_int_[c] += pressure_potential(gas, u.rho);
  }
  ++count_;
}

namespace {
Field scale(const Field& f, double s) {
  Field out = f;
  for (double& v : out) v *= s;
  return out;
}
} // namespace

Field CesaroAccumulator::mean_rho() const { return scale(sum_rho_, 1.0 / count_); }
std::vector<Field> CesaroAccumulator::mean_m() const {
  std::vector<Field> out;
  out.reserve(sum_m_.size());
  for (const Field& f : sum_m_) out.push_back(scale(f, 1.0 / count_));
  return out;
}
Field CesaroAccumulator::mean_observable(std::size_t g) const {
  return scale(sum_g_[g], 1.0 / count_);
}
Field CesaroAccumulator::mean_kinetic() const { return scale(sum_kin_, 1.0 / count_); }
Field CesaroAccumulator::mean_internal() const { return scale(sum_int_, 1.0 / count_); }

Field cesaro_mean(const std::vector<Field>& fields) {
  if (fields.empty()) throw std::invalid_argument("cesaro_mean: empty input");
  Field out(fields.front().size(), 0.0);
  for (const Field& f : fields)
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += f[c];
  for (double& v : out) v /= static_cast<double>(fields.size());
  return out;
}

double in_measure_fraction(const std::vector<CommonFields>& level_snaps,
                           const std::vector<CommonFields>& mean_snaps, double eps) {
  if (level_snaps.size() != mean_snaps.size() || level_snaps.empty())
    throw std::invalid_argument("in_measure_fraction: snapshot count mismatch");
  std::size_t exceed = 0, total = 0;
  for (std::size_t s = 0; s < level_snaps.size(); ++s) {
    const CommonFields& a = level_snaps[s];
    const CommonFields& b = mean_snaps[s];
    const int d = static_cast<int>(a.m.size());
    for (std::size_t c = 0; c < a.rho.size(); ++c) {
      double dist2 = (a.rho[c] - b.rho[c]) * (a.rho[c] - b.rho[c]);
      for (int j = 0; j < d; ++j) {
        const double dm = a.m[static_cast<std::size_t>(j)][c] - b.m[static_cast<std::size_t>(j)][c];
        dist2 += dm * dm;
      }
      if (std::sqrt(dist2) > eps) ++exceed;
      ++total;
    }
  }
  return static_cast<double>(exceed) / static_cast<double>(total);
}

Classification classify(const StudyDiagnostics& diag, const Thresholds& resolved) {
  const double mu_first = diag.mu_per_level.front();
  const double mu_last = diag.mu_per_level.back();
  if (diag.max_delta_g_full <= resolved.tau_dirac && mu_last <= 0.5 * mu_first)
    return Classification::strong_k;
  if (diag.max_delta_g_full >= resolved.tau_osc && diag.max_delta_g_prev >= resolved.tau_osc)
    return Classification::oscillatory;
  return Classification::inconclusive;
}

namespace {

LevelOutput compute_level(const StudyConfig& config, int level) {
  MeshSpec spec;
  spec.dim = config.dim;
  const int factor = 1 << level;
  for (int a = 0; a < config.dim; ++a) spec.cells[a] = config.base_cells[a] * factor;
  LevelOutput out;
  out.mesh = build_mesh(spec);
  out.cells = spec.cells[0];

  if (config.study_case == StudyCase::two_state_synthetic) {
    const PhaseState& ps = level % 2 == 0 ? config.two_state.a : config.two_state.b;
    if (!(ps.rho > 0.0))
      throw ConfigError("two_state_synthetic: states must have positive density");
    State s;
    s.rho.assign(out.mesh.cell_count(), ps.rho);
    for (int j = 0; j < config.dim; ++j)
      s.u.push_back(Field(out.mesh.cell_count(), ps.m[j] / ps.rho));
    out.initial_energy = discrete_energy(s, out.mesh, config.gas);
    out.snapshots.assign(config.snapshot_times.size(), s);
    return out;
  }

  InitialData data;
  if (config.study_case == StudyCase::smooth_periodic) {
    data = smooth_periodic(config.dim, config.smooth);
  } else {
    if (!config.riemann.has_value())
      throw ConfigError("riemann study without a Riemann case");
    data = riemann_initial(*config.riemann);
  }
  Trajectory traj = run(data, out.mesh, config.gas, config.scheme, config.t_end);
  out.initial_energy = traj.initial_energy;
  out.ledger = traj.ledger;
  out.snapshots.reserve(config.snapshot_times.size());
  for (double ts : config.snapshot_times) out.snapshots.push_back(traj.state_at(ts));
  return out;
}

CommonFields restrict_state(const State& s, const Mesh& fine, const Mesh& coarse) {
  CommonFields out;
  out.rho = restrict_to_coarse(fine, s.rho, coarse);
  for (std::size_t j = 0; j < s.u.size(); ++j) {
    Field m(fine.cell_count());
    for (std::size_t c = 0; c < fine.cell_count(); ++c) m[c] = s.rho[c] * s.u[j][c];
    out.m.push_back(restrict_to_coarse(fine, m, coarse));
  }
  return out;
}

} // namespace

StudyResult run_study(const StudyConfig& config) {
  if (config.levels < 2) throw ConfigError("study: need at least 2 refinement levels");
  if (config.snapshot_times.empty()) throw ConfigError("study: no snapshot times");
  for (double ts : config.snapshot_times)
    if (ts < 0.0 || ts > config.t_end)
      throw ConfigError("study: snapshot time outside [0, t_end]");
  if (config.bump_grid < 1 || config.bump_grid % 2 == 0)
    throw ConfigError("study: bump grid count must be odd and positive");
  if (config.study_case != StudyCase::two_state_synthetic)
    validate_parameters(config.gas.gamma, config.scheme.alpha, config.scheme.beta);

  StudyResult result;
  result.snapshot_times = config.snapshot_times;

  // levels run concurrently; everything downstream merges in level order
  std::vector<std::future<LevelOutput>> futures;
  futures.reserve(static_cast<std::size_t>(config.levels));
  for (int level = 0; level < config.levels; ++level)
    futures.push_back(
        std::async(std::launch::async, [&config, level]() { return compute_level(config, level); }));
  for (auto& f : futures) result.levels.push_back(f.get());

  result.common_mesh = result.levels.front().mesh;
  result.initial_energy = result.levels.front().initial_energy;
  const Mesh& common = result.common_mesh;
  const std::size_t snaps = config.snapshot_times.size();

  result.restricted.resize(result.levels.size());
  for (std::size_t l = 0; l < result.levels.size(); ++l) {
    const LevelOutput& lev = result.levels[l];
    result.restricted[l].reserve(snaps);
    for (std::size_t s = 0; s < snaps; ++s)
      result.restricted[l].push_back(restrict_state(lev.snapshots[s], lev.mesh, common));
  }

  // phase-space bounding box of everything we computed
  const int d = config.dim;
  std::array<double, 4> lo{}, hi{};
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto& level_fields : result.restricted)
    for (const CommonFields& cf : level_fields)
      for (std::size_t c = 0; c < cf.rho.size(); ++c) {
        lo[0] = std::min(lo[0], cf.rho[c]);
        hi[0] = std::max(hi[0], cf.rho[c]);
        for (int j = 0; j < d; ++j) {
          lo[static_cast<std::size_t>(1 + j)] =
              std::min(lo[static_cast<std::size_t>(1 + j)], cf.m[static_cast<std::size_t>(j)][c]);
          hi[static_cast<std::size_t>(1 + j)] =
              std::max(hi[static_cast<std::size_t>(1 + j)], cf.m[static_cast<std::size_t>(j)][c]);
        }
      }
  double range = 0.0;
  for (int i = 0; i <= d; ++i)
    range = std::max(range, hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]);
  if (!(range > 0.0)) range = 1e-3 * std::max(1.0, std::fabs(hi[0]));

  // observable bank on the padded box: bumps on an odd grid plus one
  // bounded ramp per phase coordinate
  const int nc = config.bump_grid;
  std::array<double, 4> mid{}, ext{};
  for (int i = 0; i <= d; ++i) {
    const std::size_t si = static_cast<std::size_t>(i);
    mid[si] = 0.5 * (lo[si] + hi[si]);
    ext[si] = 1.2 * (hi[si] - lo[si]);
    if (!(ext[si] > 0.0)) ext[si] = 1.2 * range;
  }
  double spacing = 0.0;
  for (int i = 0; i <= d; ++i)
    spacing = std::max(spacing, ext[static_cast<std::size_t>(i)] / static_cast<double>(nc));
  const double radius = 0.9 * spacing * std::sqrt(static_cast<double>(d + 1));
  std::vector<int> idx(static_cast<std::size_t>(d + 1), 0);
  const int total_bumps = [&] {
    int t = 1;
    for (int i = 0; i <= d; ++i) t *= nc;
    return t;
  }();
  for (int flat = 0; flat < total_bumps; ++flat) {
    int rem = flat;
    std::array<double, 4> center{};
    std::ostringstream name;
    name << "bump";
    for (int i = 0; i <= d; ++i) {
      const int k = rem % nc;
      rem /= nc;
      const std::size_t si = static_cast<std::size_t>(i);
      center[si] = mid[si] +
                   (static_cast<double>(k) - 0.5 * static_cast<double>(nc - 1)) *
                       (ext[si] / static_cast<double>(nc));
      name << "_" << k;
    }
    result.bank.push_back(make_bump(d, center, radius, name.str()));
  }
  for (int i = 0; i <= d; ++i) {
    const std::size_t si = static_cast<std::size_t>(i);
    const double sc = ext[si] > 0.0 ? ext[si] / 4.0 : 1.0;
    std::array<double, 4> w{};
    w[si] = 1.0 / sc;
    result.bank.push_back(
        make_tanh_ramp(d, w, -mid[si] / sc, "ramp_" + std::to_string(i)));
  }

  // Cesaro accumulators per snapshot, filled in level order
  std::vector<CesaroAccumulator> acc(snaps,
                                     CesaroAccumulator(d, common.cell_count(), result.bank.size()));
  for (std::size_t l = 0; l < result.restricted.size(); ++l)
    for (std::size_t s = 0; s < snaps; ++s)
      acc[s].add(result.restricted[l][s], result.bank, config.gas);
  result.cesaro.resize(snaps);
  for (std::size_t s = 0; s < snaps; ++s) {
    result.cesaro[s].rho = acc[s].mean_rho();
    result.cesaro[s].m = acc[s].mean_m();
  }

  // probes: strided cells, optionally restricted to a window along axis 0
  for (std::size_t s = 0; s < snaps; ++s)
    for (std::size_t c = 0; c < common.cell_count();
         c += static_cast<std::size_t>(std::max(1, config.probe_stride))) {
      const double x0 = common.center(c)[0];
      if (x0 < config.probe_window[0] || x0 > config.probe_window[1]) continue;
      result.probes.push_back(ProbeRef{s, c});
    }

  for (const ProbeRef& pr : result.probes) {
    EmpiricalYoungMeasure v;
    v.dim = d;
    std::ostringstream label;
    label << "t=" << config.snapshot_times[pr.snapshot] << ",cell=" << pr.cell;
    v.probe_label = label.str();
    for (std::size_t l = 0; l < result.restricted.size(); ++l) {
      PhasePoint u;
      u.dim = d;
      u.rho = result.restricted[l][pr.snapshot].rho[pr.cell];
      for (int j = 0; j < d; ++j)
        u.m[j] = result.restricted[l][pr.snapshot].m[static_cast<std::size_t>(j)][pr.cell];
      v.atoms.push_back(u);
    }
    result.measures.push_back(std::move(v));
  }
  result.probe_defects.reserve(result.measures.size());
  for (const EmpiricalYoungMeasure& v : result.measures)
    result.probe_defects.push_back(defects(v, config.gas));

  // oscillation indicators from the measures (full and N-1 prefixes)
  Thresholds resolved = config.thresholds;
  double max_g = 0.0;
  for (const Observable& g : result.bank) max_g = std::max(max_g, g.sup_norm);
  if (!(resolved.eps_meas > 0.0)) resolved.eps_meas = 1e-2 * range;
  if (!(resolved.tau_dirac > 0.0)) resolved.tau_dirac = 1e-3 * max_g;
  if (!(resolved.tau_osc > 0.0)) resolved.tau_osc = 1e-2 * max_g;

  auto delta_for_prefix = [&](const EmpiricalYoungMeasure& v, std::size_t count,
                              const Observable& g) {
    EmpiricalYoungMeasure prefix;
    prefix.dim = v.dim;
    prefix.atoms.assign(v.atoms.begin(), v.atoms.begin() + static_cast<std::ptrdiff_t>(count));
    const double mean_g = pair_observable(prefix, g);
    PhasePoint bar = barycenter(prefix);
    return std::fabs(mean_g - g.eval(bar));
  };

  StudyDiagnostics diag;
  diag.resolved = resolved;
  const std::size_t n_levels = result.levels.size();
  result.delta_g.resize(result.measures.size());
  for (std::size_t p = 0; p < result.measures.size(); ++p) {
    result.delta_g[p].reserve(result.bank.size());
    for (const Observable& g : result.bank) {
      const double full = delta_for_prefix(result.measures[p], n_levels, g);
      result.delta_g[p].push_back(full);
      diag.max_delta_g_full = std::max(diag.max_delta_g_full, full);
      if (n_levels >= 2)
        diag.max_delta_g_prev =
            std::max(diag.max_delta_g_prev, delta_for_prefix(result.measures[p], n_levels - 1, g));
    }
  }

  for (std::size_t l = 0; l < n_levels; ++l)
    diag.mu_per_level.push_back(
        in_measure_fraction(result.restricted[l], result.cesaro, resolved.eps_meas));
  diag.classification = classify(diag, resolved);
  result.diagnostics = diag;
  return result;
}

} // namespace efv
