#ifndef EULERFV_LINSOLVE_HPP
#define EULERFV_LINSOLVE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace efv {

// Row-major dense matrix, only what the implicit step needs.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit DenseMatrix(std::size_t n_ = 0) : n(n_), a(n_ * n_, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// In-place LU with partial pivoting; returns false on (numerical) singularity.
bool lu_factor(DenseMatrix& m, std::vector<int>& pivots);
void lu_solve(const DenseMatrix& lu, const std::vector<int>& pivots, std::vector<double>& rhs);

// Convenience: factor + solve, x overwritten into rhs. False on singularity.
bool dense_solve(DenseMatrix m, std::vector<double>& rhs);

// Periodic block tridiagonal system with n >= 4 block rows of size b:
//   L_i x_{i-1} + D_i x_i + U_i x_{i+1} = rhs_i   (indices mod n).
// Blocks are row-major b*b, stored consecutively per row index. Solved by
// bordering on the last block row/column. False on singular pivot.
bool block_cyclic_tridiagonal_solve(std::size_t n, std::size_t b,
                                    std::vector<double> lower,
                                    std::vector<double> diag,
                                    std::vector<double> upper,
                                    std::vector<double>& rhs);

// Restarted GMRES with right preconditioning; apply_op computes y = A x,
// apply_precond computes y = M^{-1} x. Returns true when the relative
// residual dropped below rtol.
bool gmres(std::size_t n,
           const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply_op,
           const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply_precond,
           const std::vector<double>& rhs, std::vector<double>& x,
           double rtol, int max_iterations, int restart);

} // namespace efv

#endif
