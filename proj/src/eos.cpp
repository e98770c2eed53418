#include "eulerfv/eos.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace efv {

GasLaw::GasLaw(double a_, double gamma_) : a(a_), gamma(gamma_) {
  if (!(a > 0.0))
    throw std::invalid_argument("gas law: pressure coefficient a must be positive");
  if (!(gamma > 1.0))
    throw std::invalid_argument("gas law: adiabatic exponent gamma must exceed 1");
}

double pressure(const GasLaw& gas, double rho) {
  if (rho < 0.0)
    throw std::invalid_argument("pressure: negative density");
  return gas.a * std::pow(rho, gas.gamma);
}

double pressure_potential(const GasLaw& gas, double rho) {
  if (rho < 0.0)
    throw std::invalid_argument("pressure potential: negative density");
  return gas.a / (gas.gamma - 1.0) * std::pow(rho, gas.gamma);
}

double potential_second_derivative(const GasLaw& gas, double rho) {
  if (!(rho > 0.0))
    throw std::invalid_argument("P'': density must be positive (singular at vacuum)");
  return gas.a * gas.gamma * std::pow(rho, gas.gamma - 2.0);
}

Interval potential_second_derivative_bounds(const GasLaw& gas, double rho_lo, double rho_hi) {
  if (!(rho_lo > 0.0) || !(rho_hi > 0.0))
    throw std::invalid_argument("P'' bounds: interval endpoints must be positive");
  if (rho_lo > rho_hi)
    throw std::invalid_argument("P'' bounds: interval endpoints out of order");
  const double at_lo = potential_second_derivative(gas, rho_lo);
  const double at_hi = potential_second_derivative(gas, rho_hi);
  // monotone in rho (decreasing for gamma < 2, increasing for gamma > 2)
  return at_lo <= at_hi ? Interval{at_lo, at_hi} : Interval{at_hi, at_lo};
}

double total_energy_density(const GasLaw& gas, double rho, std::span<const double> u) {
  double q = 0.0;
  for (double ui : u) q += ui * ui;
  return 0.5 * rho * q + pressure_potential(gas, rho);
}

std::string check_parameters(double gamma, double alpha, double beta) {
  std::ostringstream os;
  if (!(gamma > 1.0 && gamma < 2.0)) {
    os << "gamma = " << gamma << " violates 1 < gamma < 2";
    return os.str();
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    os << "alpha = " << alpha << " violates 0 < alpha < 1";
    return os.str();
  }
  const double beta_upper = (1.0 - 2.0 / gamma) - alpha / gamma;
  if (!(beta > -1.0 && beta < beta_upper)) {
    os << "beta = " << beta << " violates -1 < beta < (1 - 2/gamma) - alpha/gamma = "
       << beta_upper;
    return os.str();
  }
  const double delta1 = 1.0 - ((alpha + 2.0) / (2.0 * gamma) + (beta + 1.0) / 2.0);
  const double delta2 = (1.0 - alpha) / 2.0;
  if (!(delta1 > 0.0)) {
    os << "consistency rate delta1 = " << delta1 << " is not positive";
    return os.str();
  }
  if (!(delta2 > 0.0)) {
    os << "consistency rate delta2 = " << delta2 << " is not positive";
    return os.str();
  }
  return {};
}

SchemeParamGate validate_parameters(double gamma, double alpha, double beta) {
  const std::string why = check_parameters(gamma, alpha, beta);
  if (!why.empty())
    throw std::invalid_argument("scheme parameters rejected: " + why);
  SchemeParamGate g;
  g.gamma = gamma;
  g.alpha = alpha;
  g.beta = beta;
  g.beta_upper = (1.0 - 2.0 / gamma) - alpha / gamma;
  g.delta1 = 1.0 - ((alpha + 2.0) / (2.0 * gamma) + (beta + 1.0) / 2.0);
  g.delta2 = (1.0 - alpha) / 2.0;
  return g;
}

} // namespace efv
