#include "eulerfv/consistency.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace efv {

double TimeCutoff::value(double t) const {
  if (t >= t_end) return 0.0;
  return std::pow(1.0 - t / t_end, power);
}

double TimeCutoff::derivative(double t) const {
  if (t >= t_end) return 0.0;
  return -static_cast<double>(power) / t_end * std::pow(1.0 - t / t_end, power - 1);
}

double TimeCutoff::integral(double a, double b) const {
  auto anti = [this](double t) {
    const double s = 1.0 - std::min(t, t_end) / t_end;
    return -t_end / static_cast<double>(power + 1) * std::pow(s, power + 1);
  };
  return anti(b) - anti(a);
}

double TimeCutoff::derivative_sup(int order) const {
  double f = 1.0;
  for (int k = 0; k < order; ++k) f *= static_cast<double>(power - k) / t_end;
  return std::fabs(f); // attained at t = 0
}

double SpatialFactor::value(const Point& x) const {
  if (zero) return 0.0;
  double v = 1.0;
  for (int a = 0; a < dim; ++a)
    v *= std::cos(axes[a].omega * x[a] + axes[a].phase);
  return v;
}

double SpatialFactor::partial(const Point& x, int j) const {
  if (zero) return 0.0;
  double v = 1.0;
  for (int a = 0; a < dim; ++a) {
    if (a == j)
      v *= -axes[a].omega * std::sin(axes[a].omega * x[a] + axes[a].phase);
    else
      v *= std::cos(axes[a].omega * x[a] + axes[a].phase);
  }
  return v;
}

double SpatialFactor::max_frequency() const {
  if (zero) return 0.0;
  double m = 0.0;
  for (int a = 0; a < dim; ++a) m = std::max(m, std::fabs(axes[a].omega));
  return m;
}

SpatialFactor spatial_zero(int dim) {
  SpatialFactor s;
  s.dim = dim;
  s.zero = true;
  return s;
}

SpatialFactor spatial_one(int dim) {
  SpatialFactor s;
  s.dim = dim;
  return s;
}

SpatialFactor spatial_sin(int dim, int axis, int freq) {
  SpatialFactor s;
  s.dim = dim;
  s.axes[axis] = TrigFactor{std::numbers::pi * static_cast<double>(freq),
                            -0.5 * std::numbers::pi}; // cos(w x - pi/2) = sin(w x)
  return s;
}

SpatialFactor spatial_cos(int dim, int axis, int freq) {
  SpatialFactor s;
  s.dim = dim;
  s.axes[axis] = TrigFactor{std::numbers::pi * static_cast<double>(freq), 0.0};
  return s;
}

SpatialFactor spatial_wave(int dim, int axis, int freq, double phase) {
  SpatialFactor s;
  s.dim = dim;
  s.axes[axis] = TrigFactor{std::numbers::pi * static_cast<double>(freq), phase};
  return s;
}

namespace {
double c3_bound_of(const TimeCutoff& cutoff, double max_frequency) {
  double bound = 0.0;
  for (int jt = 0; jt <= 3; ++jt)
    for (int jx = 0; jt + jx <= 3; ++jx)
      bound = std::max(bound, cutoff.derivative_sup(jt) * std::pow(max_frequency, jx));
  return bound;
}
} // namespace

ScalarTestFunction make_scalar_test_function(std::string name, TimeCutoff cutoff,
                                             SpatialFactor space) {
  ScalarTestFunction f;
  f.name = std::move(name);
  f.cutoff = cutoff;
  f.space = space;
  f.c3_bound = c3_bound_of(cutoff, space.max_frequency());
  return f;
}

VectorTestFunction make_vector_test_function(std::string name, TimeCutoff cutoff,
                                             std::vector<SpatialFactor> components) {
  if (components.empty())
    throw std::invalid_argument("vector test function needs at least one component");
  VectorTestFunction f;
  f.name = std::move(name);
  f.cutoff = cutoff;
  double freq = 0.0;
  for (const SpatialFactor& s : components) freq = std::max(freq, s.max_frequency());
  f.components = std::move(components);
  f.c3_bound = c3_bound_of(cutoff, freq);
  return f;
}

double VectorTestFunction::divergence(const Point& x) const {
  double div = 0.0;
  for (std::size_t j = 0; j < components.size(); ++j)
    div += components[j].partial(x, static_cast<int>(j));
  return div;
}

std::vector<ScalarTestFunction> default_scalar_bank(int dim, double t_end) {
  const TimeCutoff cutoff{t_end, 4};
  std::vector<ScalarTestFunction> bank;
  bank.push_back(make_scalar_test_function("time_only", cutoff, spatial_one(dim)));
  for (int a = 0; a < dim; ++a) {
    bank.push_back(make_scalar_test_function("sin_x" + std::to_string(a), cutoff,
                                             spatial_sin(dim, a, 1)));
    bank.push_back(make_scalar_test_function("cos_x" + std::to_string(a), cutoff,
                                             spatial_cos(dim, a, 1)));
  }
  bank.push_back(make_scalar_test_function("sin2_x0", cutoff, spatial_sin(dim, 0, 2)));
  return bank;
}

std::vector<VectorTestFunction> default_vector_bank(int dim, double t_end) {
  const TimeCutoff cutoff{t_end, 4};
  std::vector<VectorTestFunction> bank;
  {
    std::vector<SpatialFactor> comps(static_cast<std::size_t>(dim), spatial_zero(dim));
    comps[0] = spatial_one(dim); // constant e_0 test function
    bank.push_back(make_vector_test_function("const_e0", cutoff, std::move(comps)));
  }
  for (int a = 0; a < dim; ++a) {
    std::vector<SpatialFactor> sin_comps, cos_comps;
    for (int j = 0; j < dim; ++j) {
      sin_comps.push_back(j == a ? spatial_sin(dim, a, 1) : spatial_zero(dim));
      cos_comps.push_back(j == a ? spatial_cos(dim, a, 1) : spatial_zero(dim));
    }
    bank.push_back(make_vector_test_function("sin_e" + std::to_string(a), cutoff,
                                             std::move(sin_comps)));
    bank.push_back(make_vector_test_function("cos_e" + std::to_string(a), cutoff,
                                             std::move(cos_comps)));
  }
  return bank;
}

} // namespace efv
