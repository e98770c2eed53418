#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eulerfv/eos.hpp"

using namespace efv;

TEST_CASE("pressure law") {
  GasLaw gas{1.0, 1.5};
  CHECK(pressure(gas, 0.0) == 0.0);
  CHECK(pressure(gas, 4.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(pressure(GasLaw{2.0, 1.5}, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(pressure(gas, -1.0), std::invalid_argument);
}

TEST_CASE("pressure potential and the p = (gamma-1) P identity") {
  GasLaw gas{1.0, 1.5};
  CHECK(pressure_potential(gas, 0.0) == 0.0);
  CHECK(pressure_potential(gas, 4.0) == doctest::Approx(16.0).epsilon(1e-15));
  CHECK_THROWS_AS(pressure_potential(gas, -0.5), std::invalid_argument);

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> rho_dist(1e-3, 50.0);
  std::uniform_real_distribution<double> g_dist(1.05, 1.95);
  for (int i = 0; i < 500; ++i) {
    GasLaw g{0.5 + 2.0 * rho_dist(rng) / 50.0, g_dist(rng)};
    const double rho = rho_dist(rng);
    const double p = pressure(g, rho);
    const double P = pressure_potential(g, rho);
    CHECK(std::fabs(p - (g.gamma - 1.0) * P) <= 1e-14 * std::fabs(p));
  }
}

TEST_CASE("second derivative of the potential and interval bounds") {
  GasLaw gas{1.0, 1.5};
  CHECK(potential_second_derivative(gas, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(potential_second_derivative(gas, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(potential_second_derivative(gas, -1.0), std::invalid_argument);

  Interval b = potential_second_derivative_bounds(gas, 1.0, 2.0);
  CHECK(b.lo == doctest::Approx(1.5 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(b.hi == doctest::Approx(1.5).epsilon(1e-15));

  Interval degenerate = potential_second_derivative_bounds(gas, 1.3, 1.3);
  CHECK(degenerate.lo == degenerate.hi);
}

TEST_CASE("monotonicity of p, P, P'' on random grids") {
  GasLaw gas{0.7, 1.4};
  double rho = 1e-2;
  double last_p = pressure(gas, rho);
  double last_P = pressure_potential(gas, rho);
  double last_pp = potential_second_derivative(gas, rho);
  for (int i = 0; i < 200; ++i) {
    rho *= 1.06;
    const double p = pressure(gas, rho);
    const double P = pressure_potential(gas, rho);
    const double pp = potential_second_derivative(gas, rho);
    CHECK(p > last_p);
    CHECK(P > last_P);
    CHECK(pp < last_pp); // gamma < 2
    last_p = p;
    last_P = P;
    last_pp = pp;
  }
}

TEST_CASE("total energy density") {
  GasLaw gas{1.0, 1.5};
  const double u0[] = {2.0};
  CHECK(total_energy_density(gas, 0.0, {u0, 1}) == 0.0);
  CHECK(total_energy_density(gas, 1.0, {u0, 1}) == doctest::Approx(4.0).epsilon(1e-15));
  // additive split into kinetic and internal parts
  const double u2[] = {0.3, -1.2};
  const double rho = 2.7;
  const double kinetic = 0.5 * rho * (0.3 * 0.3 + 1.2 * 1.2);
  const double internal = pressure_potential(gas, rho);
  CHECK(std::fabs(total_energy_density(gas, rho, {u2, 2}) - (kinetic + internal)) <=
        1e-15 * (kinetic + internal));
}

TEST_CASE("parameter gate for gamma=1.5, alpha=0.5") {
  SchemeParamGate g = validate_parameters(1.5, 0.5, -0.8);
  CHECK(g.beta_upper == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(std::fabs(g.delta1 - (1.0 - (2.5 / 3.0 + 0.1))) < 1e-14);
  CHECK(g.delta2 == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("parameter gate rejects boundary and out-of-range values") {
  CHECK_THROWS_AS(validate_parameters(1.5, 1.0, -0.8), std::invalid_argument); // alpha strict
  CHECK_THROWS_AS(validate_parameters(1.5, 0.0, -0.8), std::invalid_argument);
  CHECK_THROWS_AS(validate_parameters(1.5, 0.5, -2.0 / 3.0), std::invalid_argument); // beta strict
  CHECK_THROWS_AS(validate_parameters(1.5, 0.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(validate_parameters(2.0, 0.5, -0.8), std::invalid_argument); // gamma < 2
  CHECK_THROWS_AS(validate_parameters(1.0, 0.5, -0.8), std::invalid_argument);
  CHECK(!check_parameters(1.5, 1.0, -0.8).empty());
  CHECK(check_parameters(1.5, 0.5, -0.8).empty());
}

TEST_CASE("gate accepts some beta iff the interval is nonempty") {
  // the accepted interval is (-1, (1-2/gamma)-alpha/gamma); nonempty iff upper > -1
  for (double gamma : {1.1, 1.3, 1.5, 1.7, 1.9}) {
    for (double alpha : {0.1, 0.5, 0.9}) {
      const double upper = (1.0 - 2.0 / gamma) - alpha / gamma;
      const bool nonempty = upper > -1.0;
      const double probe = 0.5 * (-1.0 + std::min(upper, 1.0)); // midpoint when nonempty
      const bool accepted = check_parameters(gamma, alpha, probe).empty();
      if (nonempty)
        CHECK(accepted);
      else
        CHECK(!accepted);
    }
  }
}
