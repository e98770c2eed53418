#ifndef EULERFV_YOUNG_HPP
#define EULERFV_YOUNG_HPP

#include <array>
#include <string>
#include <vector>

#include "eulerfv/eos.hpp"
#include "eulerfv/field.hpp"

namespace efv {

// Phase-space point U = (rho, m) in [0,inf) x R^d.
struct PhasePoint {
  int dim = 1;
  double rho = 0.0;
  std::array<double, 3> m{0.0, 0.0, 0.0};
};

double phase_distance(const PhasePoint& a, const PhasePoint& b);

// Equal-weight atoms at one probe point of the common space-time grid.
struct EmpiricalYoungMeasure {
  int dim = 1;
  std::string probe_label; // used in diagnostics and error messages
  std::vector<PhasePoint> atoms;
};

// Bounded continuous observables: compactly supported radial bumps
// (1 - |U-c|^2/r^2)_+^2, bounded tanh ramps, and (for tests) plain linear
// functionals. sup_norm and lipschitz are declared per observable.
struct Observable {
  enum class Kind { bump, tanh_ramp, linear, truncated_coordinate };
  Kind kind = Kind::bump;
  std::string id;
  int dim = 1;
  std::array<double, 4> center{0.0, 0.0, 0.0, 0.0};  // phase coords (rho, m...)
  std::array<double, 4> weights{0.0, 0.0, 0.0, 0.0}; // linear / ramp direction
  double radius = 1.0; // bump radius or ramp/truncation scale
  double offset = 0.0;
  double sup_norm = 1.0;
  double lipschitz = 1.0;

  double eval(const PhasePoint& u) const;
};

Observable make_bump(int dim, const std::array<double, 4>& center, double radius,
                     std::string id = {});
Observable make_tanh_ramp(int dim, const std::array<double, 4>& weights, double offset,
                          std::string id = {});
Observable make_linear(int dim, const std::array<double, 4>& weights, double offset,
                       std::string id = {});
// scale * tanh(U_coord / scale): approaches the coordinate as scale grows
Observable make_truncated_coordinate(int dim, int coord, double scale, std::string id = {});

using ObservableBank = std::vector<Observable>;

// <V; g> = (1/N) sum g(atom)
double pair_observable(const EmpiricalYoungMeasure& v, const Observable& g);

PhasePoint barycenter(const EmpiricalYoungMeasure& v);

// Jensen gaps of the convex functionals against the barycenter:
//   d_int  = <V; P(rho)>        - P(rho_bar)
//   d_kin  = <V; |m|^2/(2 rho)> - |m_bar|^2/(2 rho_bar)
//   d_conv = <V; m (x) m / rho> - m_bar (x) m_bar / rho_bar
struct DefectEstimates {
  double d_kin = 0.0;
  double d_int = 0.0;
  SymMatrix d_conv;
};

// Throws std::invalid_argument naming the probe when an atom sits at vacuum.
DefectEstimates defects(const EmpiricalYoungMeasure& v, const GasLaw& gas);

struct PsdCheck {
  bool pass = false;
  double min_quadratic_form = 0.0;
};

// Minimum of xi^T D xi over deterministic unit samples and the eigenvalues.
PsdCheck psd_check(const SymMatrix& d_conv, double tolerance = 1e-12);

// max over the bank of |<V1;g> - <V2;g>|
double narrow_diff(const EmpiricalYoungMeasure& v1, const EmpiricalYoungMeasure& v2,
                   const ObservableBank& bank);

} // namespace efv

#endif
