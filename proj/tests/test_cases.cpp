#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eulerfv/cases.hpp"
#include "eulerfv/solver.hpp"

using namespace efv;

namespace {
const double pi = std::numbers::pi;

struct CommonView {
  Field rho;
  Field m;
};

// a 1-rarefaction pair: right state on the left state's forward invariant curve
RiemannCase single_rarefaction_case(double rho_ratio = 0.5) {
  GasLaw gas{1.0, 1.4};
  RiemannState left{1.0, 0.0};
  const double cl = sound_speed(gas, left.rho);
  RiemannState right;
  right.rho = rho_ratio;
  const double cr = sound_speed(gas, right.rho);
  right.u = left.u + 2.0 / (gas.gamma - 1.0) * (cl - cr);
  return make_riemann(gas, left, right);
}
} // namespace

TEST_CASE("smooth_periodic with zero amplitudes is the constant state") {
  SmoothPeriodicParams p;
  p.amp_rho = 0.0;
  p.amp_u = {0.0, 0.0, 0.0};
  InitialData data = smooth_periodic(1, p);
  for (double x : {-0.73, 0.0, 0.31}) {
    CHECK(data.density({x, 0.0, 0.0}) == 1.0);
    CHECK(data.velocity[0]({x, 0.0, 0.0}) == 0.0);
  }
}

TEST_CASE("smooth_periodic evaluates the mean at the origin and is periodic") {
  SmoothPeriodicParams p;
  p.mean_rho = 1.4;
  p.amp_rho = 0.3;
  InitialData data = smooth_periodic(2, p);
  CHECK(data.density({0.0, 0.0, 0.0}) == doctest::Approx(1.4).epsilon(1e-15));
  for (double x : {-0.9, -0.2, 0.55}) {
    const Point a{x, 0.3, 0.0};
    const Point b{x + 2.0, 0.3, 0.0};
    CHECK(data.density(a) == doctest::Approx(data.density(b)).epsilon(1e-13));
    CHECK(data.velocity[0](a) == doctest::Approx(data.velocity[0](b)).epsilon(1e-13));
  }
}

TEST_CASE("smooth_periodic rejects amplitudes reaching vacuum") {
  SmoothPeriodicParams p;
  p.mean_rho = 0.5;
  p.amp_rho = 0.5;
  CHECK_THROWS_AS(smooth_periodic(1, p), std::invalid_argument);
}

TEST_CASE("equal riemann states give a constant case") {
  GasLaw gas{1.0, 1.4};
  RiemannCase rc = make_riemann(gas, {1.0, 0.2}, {1.0, 0.2});
  CHECK(rc.t_valid > 0.0);
  CHECK(rc.middle.rho == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rc.middle.u == doctest::Approx(0.2).epsilon(1e-12));
  auto [rho, u] = exact_rarefaction(rc, 0.3, 0.5 * rc.t_valid);
  CHECK(rho == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("single rarefaction pair is accepted with a positive validity window") {
  RiemannCase rc = single_rarefaction_case();
  CHECK(rc.t_valid > 0.0);
  // middle state coincides with the right state for a lone 1-wave
  CHECK(rc.middle.rho == doctest::Approx(rc.right.rho).epsilon(1e-10));
  CHECK(rc.middle.u == doctest::Approx(rc.right.u).epsilon(1e-10));
}

TEST_CASE("vacuum-opening pairs are rejected") {
  GasLaw gas{1.0, 1.4};
  CHECK_THROWS_WITH_AS(static_cast<void>(make_riemann(gas, {1.0, -10.0}, {1.0, 10.0})),
                       doctest::Contains("vacuum"), std::invalid_argument);
}

TEST_CASE("compressive pairs are rejected as shocks") {
  GasLaw gas{1.0, 1.4};
  CHECK_THROWS_WITH_AS(static_cast<void>(make_riemann(gas, {0.5, 0.0}, {1.0, 0.0})),
                       doctest::Contains("shock"), std::invalid_argument);
}

TEST_CASE("exact solution returns the raw data at t = 0") {
  RiemannCase rc = single_rarefaction_case();
  auto [rl, ul] = exact_rarefaction(rc, -0.1, 0.0);
  CHECK(rl == rc.left.rho);
  CHECK(ul == rc.left.u);
  auto [rr, ur] = exact_rarefaction(rc, 0.1, 0.0);
  CHECK(rr == rc.right.rho);
  CHECK(ur == rc.right.u);
}

TEST_CASE("fan values satisfy the characteristic condition x/t = u - c") {
  RiemannCase rc = single_rarefaction_case();
  const double t = 0.8 * rc.t_valid;
  for (int k = 1; k < 40; ++k) {
    const double xi = rc.head1 + (rc.tail1 - rc.head1) * static_cast<double>(k) / 40.0;
    auto [rho, u] = exact_rarefaction(rc, xi * t, t);
    const double c = sound_speed(rc.gas, rho);
    CHECK(std::fabs(xi - (u - c)) < 1e-10);
    // forward Riemann invariant is constant through the fan
    const double w = u + 2.0 * c / (rc.gas.gamma - 1.0);
    const double w_left = rc.left.u + 2.0 * rc.sound_left / (rc.gas.gamma - 1.0);
    CHECK(std::fabs(w - w_left) < 1e-10);
  }
}

TEST_CASE("exact solution is lipschitz in (x,t) away from t = 0") {
  RiemannCase rc = single_rarefaction_case();
  const double t0 = 0.5 * rc.t_valid;
  const double dx = 1e-4;
  // modulus bounded by a Lipschitz constant times the spacing
  double max_slope = 0.0;
  for (int k = -3000; k < 3000; ++k) {
    const double x = static_cast<double>(k) * 1.6659e-4;
    auto [r0, u0] = exact_rarefaction(rc, x, t0);
    auto [r1, u1] = exact_rarefaction(rc, x + dx, t0);
    max_slope = std::max(max_slope, std::fabs(r1 - r0) / dx + std::fabs(u1 - u0) / dx);
  }
  // fan interior slopes scale like 1/t; allow a generous constant
  CHECK(max_slope < 50.0 / t0);
}

TEST_CASE("riemann initial data carries the jump at the origin") {
  RiemannCase rc = single_rarefaction_case();
  InitialData data = riemann_initial(rc);
  CHECK(data.density({-0.2, 0, 0}) == rc.left.rho);
  CHECK(data.density({0.2, 0, 0}) == rc.right.rho);
  CHECK(data.velocity[0]({-0.2, 0, 0}) == rc.left.u);
  CHECK(data.velocity[0]({0.2, 0, 0}) == rc.right.u);
}

TEST_CASE("initial energies are finite and recorded") {
  SmoothPeriodicParams p;
  InitialData smooth = smooth_periodic(1, p);
  const GasLaw gas{1.0, 1.5};
  const double e_smooth = initial_energy_estimate(smooth, 1, gas);
  CHECK(std::isfinite(e_smooth));
  CHECK(e_smooth > 0.0);

  RiemannCase rc = single_rarefaction_case();
  const double e_riemann = initial_energy_estimate(riemann_initial(rc), 1, rc.gas);
  CHECK(std::isfinite(e_riemann));
  CHECK(e_riemann > 0.0);
}

TEST_CASE("oracle agrees with a fine-mesh numerical reference") {
  // cross-validation before the oracle backs any acceptance criterion:
  // the distance from the oracle to the finest run must fit inside the
  // Richardson envelope of the runs themselves
  RiemannCase rc = single_rarefaction_case(0.7);
  GasLaw gas = rc.gas;
  SchemeParams params;
  params.alpha = 0.3;
  params.beta = -0.65; // valid for gamma = 1.4, fast-decaying diffusion
  validate_parameters(gas.gamma, params.alpha, params.beta);
  const double t_cmp = 0.8 * rc.t_valid;
  InitialData data = riemann_initial(rc);

  auto solve_at = [&](int n) {
    MeshSpec spec;
    spec.dim = 1;
    spec.cells[0] = n;
    Mesh mesh = build_mesh(spec);
    Trajectory traj = run(data, mesh, gas, params, t_cmp);
    return std::make_pair(mesh, traj.states.back());
  };
  auto [m1024, s1024] = solve_at(1024);
  auto [m2048, s2048] = solve_at(2048);
  auto [m4096, s4096] = solve_at(4096);

  // compare everything on the 1024 grid, inside the oracle window
  auto to_common = [&](const Mesh& mesh, const State& s) {
    CommonView out;
    out.rho = restrict_to_coarse(mesh, s.rho, m1024);
    Field m(mesh.cell_count());
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) m[c] = s.rho[c] * s.u[0][c];
    out.m = restrict_to_coarse(mesh, m, m1024);
    return out;
  };
  const CommonView r2048 = to_common(m2048, s2048);
  const CommonView r4096 = to_common(m4096, s4096);
  CommonView r1024;
  r1024.rho = s1024.rho;
  r1024.m.resize(m1024.cell_count());
  for (std::size_t c = 0; c < m1024.cell_count(); ++c)
    r1024.m[c] = s1024.rho[c] * s1024.u[0][c];

  CommonView oracle;
  oracle.rho.resize(m1024.cell_count());
  oracle.m.resize(m1024.cell_count());
  for (std::size_t c = 0; c < m1024.cell_count(); ++c) {
    auto [rho, u] = exact_rarefaction(rc, m1024.center(c)[0], t_cmp);
    oracle.rho[c] = rho;
    oracle.m[c] = rho * u;
  }

  auto l1_window = [&](const CommonView& a, const CommonView& b) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m1024.cell_count(); ++c) {
      if (std::fabs(m1024.center(c)[0]) > rc.window) continue;
      acc += m1024.cell_volume *
             (std::fabs(a.rho[c] - b.rho[c]) + std::fabs(a.m[c] - b.m[c]));
    }
    return acc;
  };
  const double step_a = l1_window(r1024, r2048);
  const double step_b = l1_window(r2048, r4096);
  const double ratio = step_b / step_a;
  REQUIRE(ratio < 1.0);
  const double envelope = 1.5 * step_b * ratio / (1.0 - ratio);
  const double oracle_dist = l1_window(oracle, r4096);
  CHECK(oracle_dist <= envelope);
}
