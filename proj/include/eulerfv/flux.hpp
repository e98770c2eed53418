#ifndef EULERFV_FLUX_HPP
#define EULERFV_FLUX_HPP

#include <array>
#include <cmath>

namespace efv {

// Values of a cell field on the two sides of a face; `in` is the side the
// face normal points away from (owner), `out` the side it points into.
struct FaceTrace {
  double in = 0.0;
  double out = 0.0;
};

inline double face_average(const FaceTrace& v) { return 0.5 * (v.in + v.out); }
inline double face_jump(const FaceTrace& v) { return v.out - v.in; }

// Donor-cell flux r^up (v.n): r_in [vn]^+ + r_out [vn]^-.
inline double upwind(const FaceTrace& r, double vn) {
  return r.in * std::fmax(vn, 0.0) + r.out * std::fmin(vn, 0.0);
}

// Stabilized flux Up[r,v] - h^alpha [[r]], written as average minus
// dissipation: r_bar vn - (h^alpha + |vn|/2) [[r]]. Branch-free; at vn = 0
// both forms give -h^alpha [[r]].
inline double numerical_flux_hpow(const FaceTrace& r, double vn, double h_alpha) {
  return face_average(r) * vn - (h_alpha + 0.5 * std::fabs(vn)) * face_jump(r);
}

inline double numerical_flux(const FaceTrace& r, double vn, double h, double alpha) {
  return numerical_flux_hpow(r, vn, std::pow(h, alpha));
}

// Componentwise application for vector quantities.
template <std::size_t N>
inline std::array<double, N> numerical_flux_vector(const std::array<FaceTrace, N>& r,
                                                   double vn, double h, double alpha) {
  const double h_alpha = std::pow(h, alpha);
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i)
    out[i] = numerical_flux_hpow(r[i], vn, h_alpha);
  return out;
}

// Centered pressure term on a face.
inline double pressure_face_term(const FaceTrace& p) { return face_average(p); }

} // namespace efv

#endif
