#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eulerfv/flux.hpp"

using namespace efv;

namespace {
// independent oracle: donor-cell selection by sign, then subtract h^alpha jump
double upwind_oracle(double rin, double rout, double vn) {
  const double r_up = vn >= 0.0 ? rin : rout;
  return r_up * vn;
}
double flux_oracle(double rin, double rout, double vn, double h, double alpha) {
  return upwind_oracle(rin, rout, vn) - std::pow(h, alpha) * (rout - rin);
}
} // namespace

TEST_CASE("upwind flux hand values") {
  CHECK(upwind(FaceTrace{2.0, 1.0}, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(upwind(FaceTrace{4.0, -7.0}, 0.0) == 0.0);
  CHECK(upwind(FaceTrace{3.0, 3.0}, -2.0) == doctest::Approx(-6.0).epsilon(1e-15));
}

TEST_CASE("numerical flux with constant trace is plain transport") {
  const FaceTrace r{2.5, 2.5};
  CHECK(numerical_flux(r, 0.8, 0.01, 0.5) == doctest::Approx(2.5 * 0.8).epsilon(1e-15));
}

TEST_CASE("numerical flux at zero normal velocity is pure jump dissipation") {
  const double v = numerical_flux(FaceTrace{1.0, 2.0}, 0.0, 0.01, 0.5);
  CHECK(v == doctest::Approx(-0.1).epsilon(1e-14)); // -h^alpha [[r]], h^0.5 = 0.1
}

TEST_CASE("both algebraic forms agree on random inputs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::uniform_real_distribution<double> hdist(1e-4, 0.5);
  std::uniform_real_distribution<double> adist(0.05, 0.95);
  for (int i = 0; i < 10000; ++i) {
    const FaceTrace r{val(rng), val(rng)};
    const double vn = val(rng);
    const double h = hdist(rng);
    const double alpha = adist(rng);
    const double primary = numerical_flux(r, vn, h, alpha);
    const double oracle = flux_oracle(r.in, r.out, vn, h, alpha);
    CHECK(std::fabs(primary - oracle) < 1e-14 * std::max(1.0, std::fabs(oracle)));
  }
}

TEST_CASE("conservativity: flipping the face orientation negates the flux") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const FaceTrace r{val(rng), val(rng)};
    const double vn = val(rng);
    const double from_owner = numerical_flux(r, vn, 0.05, 0.5);
    const double from_neighbor = numerical_flux(FaceTrace{r.out, r.in}, -vn, 0.05, 0.5);
    CHECK(from_owner == doctest::Approx(-from_neighbor).epsilon(1e-15));
    CHECK(upwind(r, vn) == doctest::Approx(-upwind(FaceTrace{r.out, r.in}, -vn)).epsilon(1e-15));
    const double p_owner = pressure_face_term(r);
    const double p_neighbor = pressure_face_term(FaceTrace{r.out, r.in});
    CHECK(p_owner == p_neighbor); // the normal flips instead
  }
}

TEST_CASE("dissipation coefficient stays above h^alpha") {
  // coefficient of -[[r]] is h^alpha + |vn|/2 >= h^alpha > h^alpha/2
  for (double vn : {-3.0, -0.1, 0.0, 0.4, 2.0}) {
    const double h = 0.02, alpha = 0.7;
    const double with_jump = numerical_flux(FaceTrace{0.0, 1.0}, vn, h, alpha);
    const double base = numerical_flux(FaceTrace{0.0, 0.0}, vn, h, alpha);
    const double coef = base - with_jump;
    CHECK(coef >= std::pow(h, alpha) * (1.0 - 1e-12));
  }
}

TEST_CASE("vector flux matches componentwise scalar calls") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    std::array<FaceTrace, 2> r{FaceTrace{val(rng), val(rng)}, FaceTrace{val(rng), val(rng)}};
    const double vn = val(rng);
    const auto v = numerical_flux_vector(r, vn, 0.03, 0.4);
    for (std::size_t j = 0; j < 2; ++j) {
      const double s = numerical_flux(r[j], vn, 0.03, 0.4);
      CHECK(std::fabs(v[j] - s) <= 1e-15 * std::max(1.0, std::fabs(s)));
    }
  }
  std::array<FaceTrace, 3> zero{};
  const auto z = numerical_flux_vector(zero, 0.9, 0.1, 0.5);
  for (double c : z) CHECK(c == 0.0);
}

TEST_CASE("pressure face term is the centered average") {
  CHECK(pressure_face_term(FaceTrace{4.0, 4.0}) == 4.0);
  CHECK(pressure_face_term(FaceTrace{2.0, 4.0}) == 3.0);
  // linear in the traces
  const FaceTrace a{1.0, 2.0}, b{-0.5, 3.0};
  const double s = pressure_face_term(FaceTrace{a.in + 2.0 * b.in, a.out + 2.0 * b.out});
  CHECK(s == doctest::Approx(pressure_face_term(a) + 2.0 * pressure_face_term(b)).epsilon(1e-15));
}
