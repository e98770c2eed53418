#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eulerfv/errors.hpp"
#include "eulerfv/solver.hpp"

using namespace efv;

namespace {
const double pi = std::numbers::pi;

State constant_state(const Mesh& mesh, double rho, std::vector<double> u) {
  State s;
  s.rho.assign(mesh.cell_count(), rho);
  for (double ui : u) s.u.push_back(Field(mesh.cell_count(), ui));
  return s;
}

State smooth_state(const Mesh& mesh, double amp) {
  State s;
  s.rho.resize(mesh.cell_count());
  s.u.assign(static_cast<std::size_t>(mesh.dim), Field(mesh.cell_count()));
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const Point& x = mesh.center(c);
    double phase = 0.0;
    for (int a = 0; a < mesh.dim; ++a) phase += x[a];
    s.rho[c] = 1.0 + amp * std::sin(pi * phase);
    for (int a = 0; a < mesh.dim; ++a)
      s.u[a][c] = amp * std::cos(pi * x[a]);
  }
  return s;
}

double total_mass(const State& s, const Mesh& mesh) {
  double m = 0.0;
  for (double r : s.rho) m += r;
  return m * mesh.cell_volume;
}

double total_momentum(const State& s, const Mesh& mesh, int comp) {
  double m = 0.0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) m += s.rho[c] * s.u[comp][c];
  return m * mesh.cell_volume;
}
} // namespace

TEST_CASE("residual vanishes exactly for a constant candidate equal to prev") {
  Mesh mesh = build_mesh({1, {8, 1, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  State s = constant_state(mesh, 1.3, {0.4});
  auto r = residual(s, s, 0.05, mesh, gas, params);
  for (double v : r) CHECK(v == 0.0);
}

TEST_CASE("continuity residual telescopes against the constant test function") {
  Mesh mesh = build_mesh({1, {16, 1, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  State prev = smooth_state(mesh, 0.2);
  State cand = smooth_state(mesh, 0.15);
  const double dt = 0.03;
  auto r = residual(prev, cand, dt, mesh, gas, params);
  const int b = mesh.dim + 1;
  double sum_res = 0.0, sum_dt = 0.0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    sum_res += mesh.cell_volume * r[c * b];
    sum_dt += mesh.cell_volume * (cand.rho[c] - prev.rho[c]) / dt;
  }
  CHECK(std::fabs(sum_res - sum_dt) < 1e-12 * std::max(1.0, std::fabs(sum_dt)));
  // same telescoping for each momentum component
  for (int j = 0; j < mesh.dim; ++j) {
    double sr = 0.0, sd = 0.0;
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      sr += mesh.cell_volume * r[c * b + 1 + j];
      sd += mesh.cell_volume *
            (cand.rho[c] * cand.u[j][c] - prev.rho[c] * prev.u[j][c]) / dt;
    }
    CHECK(std::fabs(sr - sd) < 1e-12 * std::max(1.0, std::fabs(sd)));
  }
}

TEST_CASE("two-cell residual matches an independent hand evaluation") {
  Mesh mesh = build_mesh({1, {2, 1, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params; // alpha=0.5, beta=-0.8; h=1 so h^alpha = h^beta = 1
  State prev, cand;
  prev.rho = {1.0, 2.0};
  prev.u = {Field{0.5, -0.25}};
  cand.rho = {1.2, 1.8};
  cand.u = {Field{0.4, -0.2}};
  const double dt = 0.1;
  auto r = residual(prev, cand, dt, mesh, gas, params);

  // independent route: donor-cell upwind plus explicit jump dissipation
  auto up = [](double rin, double rout, double vn) { return (vn >= 0 ? rin : rout) * vn; };
  const double vn = 0.5 * (0.4 + (-0.2));
  const double fa_rho = up(1.2, 1.8, vn) - (1.8 - 1.2);       // face owner 0
  const double fb_rho = up(1.8, 1.2, vn) - (1.2 - 1.8);       // face owner 1
  const double m0 = 1.2 * 0.4, m1 = 1.8 * -0.2;
  const double fa_m = up(m0, m1, vn) - (m1 - m0);
  const double fb_m = up(m1, m0, vn) - (m0 - m1);
  const double pbar = 0.5 * (std::pow(1.2, 1.5) + std::pow(1.8, 1.5));
  const double fa_full = fa_m + pbar - (-0.2 - 0.4);
  const double fb_full = fb_m + pbar - (0.4 - -0.2);
  const double cont0 = (1.2 - 1.0) / dt + fa_rho - fb_rho;
  const double mom0 = (m0 - 0.5) / dt + fa_full - fb_full;
  const double cont1 = (1.8 - 2.0) / dt + fb_rho - fa_rho;
  const double mom1 = (m1 - -0.5) / dt + fb_full - fa_full;

  CHECK(r[0] == doctest::Approx(cont0).epsilon(1e-13));
  CHECK(r[1] == doctest::Approx(mom0).epsilon(1e-13));
  CHECK(r[2] == doctest::Approx(cont1).epsilon(1e-13));
  CHECK(r[3] == doctest::Approx(mom1).epsilon(1e-13));
  // frozen values from the same hand computation (pbar cancels)
  CHECK(r[0] == doctest::Approx(0.74).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(2.764).epsilon(1e-12));
  CHECK(r[2] == doctest::Approx(-0.74).epsilon(1e-12));
  CHECK(r[3] == doctest::Approx(-1.564).epsilon(1e-12));
}

TEST_CASE("residual rejects nonpositive candidate density") {
  Mesh mesh = build_mesh({1, {4, 1, 1}});
  GasLaw gas{1.0, 1.5};
  State good = constant_state(mesh, 1.0, {0.0});
  State bad = good;
  bad.rho[2] = 0.0;
  CHECK_THROWS_AS(residual(good, bad, 0.1, mesh, gas, SchemeParams{}), std::invalid_argument);
}

TEST_CASE("advance accepts a constant state unchanged with zero iterations") {
  Mesh mesh = build_mesh({1, {8, 1, 1}});
  GasLaw gas{1.0, 1.5};
  State s = constant_state(mesh, 2.0, {0.7});
  auto [next, report] = advance(s, 0.05, mesh, gas, SchemeParams{});
  CHECK(report.newton_iterations == 0);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    CHECK(next.rho[c] == s.rho[c]);
    CHECK(next.u[0][c] == s.u[0][c]);
  }
}

TEST_CASE("advance converges on smooth 1d data and keeps density positive") {
  Mesh mesh = build_mesh({1, {64, 1, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  State s = smooth_state(mesh, 0.3);
  auto [next, report] = advance(s, params.c_t * mesh.h_max, mesh, gas, params);
  CHECK(report.newton_iterations <= params.max_nl_iter);
  CHECK(report.min_density > 0.0);
  CHECK(report.dt_halvings == 0);
  // converged to the relative tolerance
  auto r0 = residual(s, s, params.c_t * mesh.h_max, mesh, gas, params);
  auto r1 = residual(s, next, params.c_t * mesh.h_max, mesh, gas, params);
  CHECK(residual_norm(r1, mesh) <= params.tol_nl * residual_norm(r0, mesh) * (1.0 + 1e-12));
}

TEST_CASE("forced nonlinear failure raises the hard error") {
  Mesh mesh = build_mesh({1, {16, 1, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  params.tol_nl = 1e-30;
  params.max_nl_iter = 1;
  params.max_dt_halvings = 0;
  State s = smooth_state(mesh, 0.3);
  CHECK_THROWS_AS(advance(s, params.c_t * mesh.h_max, mesh, gas, params), SolveError);
}

TEST_CASE("advance works on a small 2d grid") {
  Mesh mesh = build_mesh({2, {6, 4, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  State s = smooth_state(mesh, 0.2);
  const double mass0 = total_mass(s, mesh);
  auto [next, report] = advance(s, params.c_t * mesh.h_max, mesh, gas, params);
  CHECK(report.min_density > 0.0);
  CHECK(std::fabs(total_mass(next, mesh) - mass0) < 1e-10 * std::fabs(mass0));
  for (int j = 0; j < 2; ++j) {
    const double p0 = total_momentum(s, mesh, j);
    const double p1 = total_momentum(next, mesh, j);
    CHECK(std::fabs(p1 - p0) < 1e-10 * std::max(1.0, std::fabs(p0)));
  }
}

TEST_CASE("advance works through the matrix-free path on a larger 2d grid") {
  Mesh mesh = build_mesh({2, {24, 24, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  State s = smooth_state(mesh, 0.15);
  const double mass0 = total_mass(s, mesh);
  auto [next, report] = advance(s, params.c_t * mesh.h_max, mesh, gas, params);
  CHECK(report.min_density > 0.0);
  CHECK(std::fabs(total_mass(next, mesh) - mass0) < 1e-9 * std::fabs(mass0));
}

TEST_CASE("relabeling cells by a torus rotation commutes with the residual") {
  Mesh mesh = build_mesh({1, {16, 1, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  State prev = smooth_state(mesh, 0.25);
  State cand = smooth_state(mesh, 0.2);
  auto r = residual(prev, cand, 0.04, mesh, gas, params);

  const std::size_t shift = 5;
  auto rotate_state = [&](const State& s) {
    State out = s;
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      const std::size_t src = (c + shift) % mesh.cell_count();
      out.rho[c] = s.rho[src];
      out.u[0][c] = s.u[0][src];
    }
    return out;
  };
  auto r_rot = residual(rotate_state(prev), rotate_state(cand), 0.04, mesh, gas, params);
  const int b = 2;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const std::size_t src = (c + shift) % mesh.cell_count();
    for (int k = 0; k < b; ++k)
      CHECK(std::fabs(r_rot[c * b + k] - r[src * b + k]) <
            1e-14 * std::max(1.0, std::fabs(r[src * b + k])));
  }
}

TEST_CASE("run clips a single step to t_end and snapshots the initial data") {
  Mesh mesh = build_mesh({1, {32, 1, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  InitialData data;
  data.density = [](const Point& x) { return 1.0 + 0.2 * std::sin(pi * x[0]); };
  data.velocity = {[](const Point& x) { return 0.3 * std::sin(pi * x[0]); }};

  const double t_end = 0.25 * params.c_t * mesh.h_max; // below one nominal step
  Trajectory traj = run(data, mesh, gas, params, t_end);
  CHECK(traj.step_count() == 1);
  CHECK(traj.times.back() == t_end);

  State projected = project_initial_state(data, mesh, false);
  const State& snap0 = traj.state_at(0.0);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    CHECK(snap0.rho[c] == projected.rho[c]);
    CHECK(snap0.u[0][c] == projected.u[0][c]);
  }
}

TEST_CASE("run conserves mass and momentum at every snapshot") {
  Mesh mesh = build_mesh({1, {64, 1, 1}});
  GasLaw gas{1.0, 1.5};
  SchemeParams params;
  InitialData data;
  data.density = [](const Point& x) { return 1.0 + 0.2 * std::sin(pi * x[0]); };
  data.velocity = {[](const Point& x) { return 0.3 * std::sin(pi * x[0]); }};
  Trajectory traj = run(data, mesh, gas, params, 0.5);
  const double mass0 = total_mass(traj.states.front(), mesh);
  const double mom0 = total_momentum(traj.states.front(), mesh, 0);
  for (const State& s : traj.states) {
    CHECK(std::fabs(total_mass(s, mesh) - mass0) < 1e-10 * std::fabs(mass0));
    CHECK(std::fabs(total_momentum(s, mesh, 0) - mom0) < 1e-10 * std::max(1.0, std::fabs(mom0)));
    CHECK(s.min_density() > 0.0);
  }
  // piecewise-constant-in-time lookup
  CHECK(traj.slab_index(0.0) == 0);
  CHECK(traj.slab_index(traj.times[1]) == 1);
  CHECK(traj.slab_index(0.5 * (traj.times[1] + traj.times[2])) == 1);
  CHECK(traj.slab_index(1e9) == traj.states.size() - 1);
}

TEST_CASE("vacuum shift raises the projected density by h") {
  Mesh mesh = build_mesh({1, {16, 1, 1}});
  InitialData data;
  data.density = [](const Point& x) { return 1.0 + 0.5 * std::sin(pi * x[0]); };
  data.velocity = {[](const Point&) { return 0.0; }};
  State plain = project_initial_state(data, mesh, false);
  State shifted = project_initial_state(data, mesh, true);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c)
    CHECK(shifted.rho[c] == doctest::Approx(plain.rho[c] + mesh.h_max).epsilon(1e-15));
}
