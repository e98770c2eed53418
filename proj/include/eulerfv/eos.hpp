#ifndef EULERFV_EOS_HPP
#define EULERFV_EOS_HPP

#include <span>
#include <string>

namespace efv {

// Isentropic pressure law p(rho) = a rho^gamma.
struct GasLaw {
  double a = 1.0;
  double gamma = 1.5;

  GasLaw() = default;
  GasLaw(double a_, double gamma_);
};

double pressure(const GasLaw& gas, double rho);            // a rho^gamma
double pressure_potential(const GasLaw& gas, double rho);  // a/(gamma-1) rho^gamma

// P''(rho) = a gamma rho^(gamma-2); singular at vacuum, rho must be positive.
double potential_second_derivative(const GasLaw& gas, double rho);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Two-sided bound of P'' over [rho_lo, rho_hi]; P'' is monotone in rho for
// any fixed gamma, so the bound is attained at the endpoints.
Interval potential_second_derivative_bounds(const GasLaw& gas, double rho_lo, double rho_hi);

// 1/2 rho |u|^2 + P(rho)
double total_energy_density(const GasLaw& gas, double rho, std::span<const double> u);

// Admissible stabilization exponents together with the consistency rates
// they imply:
//   0 < alpha < 1,   -1 < beta < (1 - 2/gamma) - alpha/gamma,
//   delta1 = 1 - ((alpha+2)/(2 gamma) + (beta+1)/2) > 0,
//   delta2 = (1-alpha)/2 > 0,
// all strict, and 1 < gamma < 2.
struct SchemeParamGate {
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double beta_upper = 0.0; // (1 - 2/gamma) - alpha/gamma
  double delta1 = 0.0;
  double delta2 = 0.0;
};

// Returns the violated inequality as a human-readable string, empty if valid.
std::string check_parameters(double gamma, double alpha, double beta);

// Throws std::invalid_argument naming the violated inequality.
SchemeParamGate validate_parameters(double gamma, double alpha, double beta);

} // namespace efv

#endif
