#include "eulerfv/young.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace efv {

double phase_distance(const PhasePoint& a, const PhasePoint& b) {
  double s = (a.rho - b.rho) * (a.rho - b.rho);
  for (int j = 0; j < a.dim; ++j) s += (a.m[j] - b.m[j]) * (a.m[j] - b.m[j]);
  return std::sqrt(s);
}

double Observable::eval(const PhasePoint& u) const {
  std::array<double, 4> coords{u.rho, 0.0, 0.0, 0.0};
  for (int j = 0; j < u.dim; ++j) coords[static_cast<std::size_t>(1 + j)] = u.m[j];
  const int n = u.dim + 1;
  switch (kind) {
    case Kind::bump: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = coords[i] - center[i];
        s += d * d;
      }
      const double t = 1.0 - s / (radius * radius);
      return t > 0.0 ? t * t : 0.0;
    }
    case Kind::tanh_ramp: {
      double ell = offset;
      for (int i = 0; i < n; ++i) ell += weights[i] * coords[i];
      return std::tanh(ell);
    }
    case Kind::linear: {
      double ell = offset;
      for (int i = 0; i < n; ++i) ell += weights[i] * coords[i];
      return ell;
    }
    case Kind::truncated_coordinate: {
      double ell = 0.0;
      for (int i = 0; i < n; ++i) ell += weights[i] * coords[i];
      return radius * std::tanh(ell / radius);
    }
  }
  return 0.0;
}

Observable make_bump(int dim, const std::array<double, 4>& center, double radius,
                     std::string id) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
  Observable g;
  g.kind = Observable::Kind::bump;
  g.dim = dim;
  g.center = center;
  g.radius = radius;
  g.sup_norm = 1.0;
  g.lipschitz = 8.0 / (3.0 * std::sqrt(3.0) * radius); // max |grad| of (1-s^2)^2
  g.id = std::move(id);
  return g;
}

Observable make_tanh_ramp(int dim, const std::array<double, 4>& weights, double offset,
                          std::string id) {
  Observable g;
  g.kind = Observable::Kind::tanh_ramp;
  g.dim = dim;
  g.weights = weights;
  g.offset = offset;
  g.sup_norm = 1.0;
  double w2 = 0.0;
  for (double w : weights) w2 += w * w;
  g.lipschitz = std::sqrt(w2);
  g.id = std::move(id);
  return g;
}

Observable make_linear(int dim, const std::array<double, 4>& weights, double offset,
                       std::string id) {
  Observable g;
  g.kind = Observable::Kind::linear;
  g.dim = dim;
  g.weights = weights;
  g.offset = offset;
  g.sup_norm = std::numeric_limits<double>::infinity();
  double w2 = 0.0;
  for (double w : weights) w2 += w * w;
  g.lipschitz = std::sqrt(w2);
  g.id = std::move(id);
  return g;
}

Observable make_truncated_coordinate(int dim, int coord, double scale, std::string id) {
  if (!(scale > 0.0)) throw std::invalid_argument("truncation scale must be positive");
  Observable g;
  g.kind = Observable::Kind::truncated_coordinate;
  g.dim = dim;
  g.weights[static_cast<std::size_t>(coord)] = 1.0;
  g.radius = scale;
  g.sup_norm = scale;
  g.lipschitz = 1.0;
  g.id = std::move(id);
  return g;
}

double pair_observable(const EmpiricalYoungMeasure& v, const Observable& g) {
  if (v.atoms.empty()) throw std::invalid_argument("empirical measure has no atoms");
  double s = 0.0;
  for (const PhasePoint& u : v.atoms) s += g.eval(u);
  return s / static_cast<double>(v.atoms.size());
}

PhasePoint barycenter(const EmpiricalYoungMeasure& v) {
  if (v.atoms.empty()) throw std::invalid_argument("empirical measure has no atoms");
  PhasePoint b;
  b.dim = v.dim;
  for (const PhasePoint& u : v.atoms) {
    b.rho += u.rho;
    for (int j = 0; j < v.dim; ++j) b.m[j] += u.m[j];
  }
  const double inv = 1.0 / static_cast<double>(v.atoms.size());
  b.rho *= inv;
  for (int j = 0; j < v.dim; ++j) b.m[j] *= inv;
  return b;
}

DefectEstimates defects(const EmpiricalYoungMeasure& v, const GasLaw& gas) {
  if (v.atoms.empty()) throw std::invalid_argument("empirical measure has no atoms");
  for (const PhasePoint& u : v.atoms)
    if (!(u.rho > 0.0))
      throw std::invalid_argument("vacuum atom in empirical measure at probe '" +
                                  v.probe_label + "'");
  const int d = v.dim;
  DefectEstimates out;
  out.d_conv.dim = d;
  double mean_int = 0.0, mean_kin = 0.0;
  SymMatrix mean_conv;
  mean_conv.dim = d;
  for (const PhasePoint& u : v.atoms) {
    mean_int += pressure_potential(gas, u.rho);
    double m2 = 0.0;
    for (int j = 0; j < d; ++j) m2 += u.m[j] * u.m[j];
    mean_kin += 0.5 * m2 / u.rho;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        mean_conv.at(i, j) += u.m[i] * u.m[j] / u.rho;
  }
  const double inv = 1.0 / static_cast<double>(v.atoms.size());
  mean_int *= inv;
  mean_kin *= inv;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) mean_conv.at(i, j) *= inv;

  const PhasePoint bar = barycenter(v);
  double bar_m2 = 0.0;
  for (int j = 0; j < d; ++j) bar_m2 += bar.m[j] * bar.m[j];
  out.d_int = mean_int - pressure_potential(gas, bar.rho);
  out.d_kin = mean_kin - 0.5 * bar_m2 / bar.rho;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.d_conv.at(i, j) = mean_conv.at(i, j) - bar.m[i] * bar.m[j] / bar.rho;
  return out;
}

namespace {
// Jacobi eigenvalue iteration for the small symmetric matrix.
void symmetric_eigenvalues(const SymMatrix& m, std::array<double, 3>& eig) {
  const int n = m.dim;
  double a[3][3] = {};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  for (int i = 0; i < 3; ++i) eig[static_cast<std::size_t>(i)] = i < n ? a[i][i] : 0.0;
}
} // namespace

PsdCheck psd_check(const SymMatrix& d_conv, double tolerance) {
  const int n = d_conv.dim;
  PsdCheck out;
  out.min_quadratic_form = std::numeric_limits<double>::infinity();
  auto quad = [&](const std::array<double, 3>& xi) {
    double q = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += xi[static_cast<std::size_t>(i)] * d_conv.at(i, j) *
                                        xi[static_cast<std::size_t>(j)];
    return q;
  };
  const double pi = std::numbers::pi;
  if (n == 1) {
    out.min_quadratic_form = quad({1.0, 0.0, 0.0});
  } else if (n == 2) {
    for (int k = 0; k < 32; ++k) {
      const double t = pi * static_cast<double>(k) / 32.0;
      out.min_quadratic_form =
          std::min(out.min_quadratic_form, quad({std::cos(t), std::sin(t), 0.0}));
    }
  } else {
    // deterministic spiral sample of the unit sphere plus the axes
    for (int k = 0; k < 64; ++k) {
      const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / 64.0;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = pi * (1.0 + std::sqrt(5.0)) * static_cast<double>(k);
      out.min_quadratic_form =
          std::min(out.min_quadratic_form, quad({r * std::cos(t), r * std::sin(t), z}));
    }
    for (int axis = 0; axis < 3; ++axis) {
      std::array<double, 3> e{0.0, 0.0, 0.0};
      e[static_cast<std::size_t>(axis)] = 1.0;
      out.min_quadratic_form = std::min(out.min_quadratic_form, quad(e));
    }
  }
  std::array<double, 3> eig{};
  symmetric_eigenvalues(d_conv, eig);
  for (int i = 0; i < n; ++i)
    out.min_quadratic_form = std::min(out.min_quadratic_form, eig[static_cast<std::size_t>(i)]);
  out.pass = out.min_quadratic_form >= -tolerance;
  return out;
}

double narrow_diff(const EmpiricalYoungMeasure& v1, const EmpiricalYoungMeasure& v2,
                   const ObservableBank& bank) {
  double worst = 0.0;
  for (const Observable& g : bank)
    worst = std::max(worst, std::fabs(pair_observable(v1, g) - pair_observable(v2, g)));
  return worst;
}

} // namespace efv
