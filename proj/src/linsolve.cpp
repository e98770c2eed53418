#include "eulerfv/linsolve.hpp"

#include <cmath>
#include <cstring>

namespace efv {

bool lu_factor(DenseMatrix& m, std::vector<int>& pivots) {
  const std::size_t n = m.n;
  pivots.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::fabs(m.at(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(m.at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) return false;
    pivots[k] = static_cast<int>(p);
    if (p != k)
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m.at(k, j), m.at(p, j));
    const double inv = 1.0 / m.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m.at(i, k) * inv;
      m.at(i, k) = f;
      if (f != 0.0)
        for (std::size_t j = k + 1; j < n; ++j)
          m.at(i, j) -= f * m.at(k, j);
    }
  }
  return true;
}

void lu_solve(const DenseMatrix& lu, const std::vector<int>& pivots, std::vector<double>& rhs) {
  const std::size_t n = lu.n;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = static_cast<std::size_t>(pivots[k]);
    if (p != k) std::swap(rhs[k], rhs[p]);
    for (std::size_t i = k + 1; i < n; ++i)
      rhs[i] -= lu.at(i, k) * rhs[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j)
      s -= lu.at(i, j) * rhs[j];
    rhs[i] = s / lu.at(i, i);
  }
}

bool dense_solve(DenseMatrix m, std::vector<double>& rhs) {
  std::vector<int> piv;
  if (!lu_factor(m, piv)) return false;
  lu_solve(m, piv, rhs);
  return true;
}

namespace {

// b x b helpers on raw row-major storage
inline void mat_mul(const double* a, const double* b, double* out, std::size_t n,
                    std::size_t cols) {
  // out (n x cols) = a (n x n) * b (n x cols)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += a[i * n + k] * b[k * cols + j];
      out[i * cols + j] = s;
    }
}

inline void mat_sub(double* a, const double* b, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) a[i] -= b[i];
}

struct SmallLU {
  DenseMatrix m;
  std::vector<int> piv;

  bool factor(const double* block, std::size_t b) {
    m = DenseMatrix(b);
    std::memcpy(m.a.data(), block, b * b * sizeof(double));
    return lu_factor(m, piv);
  }
  // solve in place for a b x cols right-hand block (column by column)
  void solve_block(double* rhs, std::size_t cols) const {
    const std::size_t b = m.n;
    std::vector<double> col(b);
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < b; ++i) col[i] = rhs[i * cols + j];
      lu_solve(m, piv, col);
      for (std::size_t i = 0; i < b; ++i) rhs[i * cols + j] = col[i];
    }
  }
};

} // namespace

bool block_cyclic_tridiagonal_solve(std::size_t n, std::size_t b,
                                    std::vector<double> lower,
                                    std::vector<double> diag,
                                    std::vector<double> upper,
                                    std::vector<double>& rhs) {
  if (n < 4) return false;
  const std::size_t bb = b * b;
  const std::size_t m = n - 1; // interior chain length
  const std::size_t cols = 1 + b;

  // Augmented RHS blocks [r_i | E_i], E carries the couplings to x_{n-1}.
  std::vector<double> aug(m * b * cols, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < b; ++r)
      aug[(i * b + r) * cols] = rhs[i * b + r];
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t c = 0; c < b; ++c) {
      aug[(0 * b + r) * cols + 1 + c] = lower[r * b + c];               // L_0
      aug[((m - 1) * b + r) * cols + 1 + c] = upper[(m - 1) * bb + r * b + c]; // U_{n-2}
    }

  // Forward block elimination; G_i = D~_i^{-1} U_i, S_i = D~_i^{-1} aug~_i.
  std::vector<double> gs(m * bb, 0.0);
  std::vector<double> tmp_bb(bb), tmp_bc(b * cols);
  SmallLU fac;
  for (std::size_t i = 0; i < m; ++i) {
    double* d = diag.data() + i * bb;
    double* a = aug.data() + i * b * cols;
    if (i > 0) {
      const double* li = lower.data() + i * bb;
      mat_mul(li, gs.data() + (i - 1) * bb, tmp_bb.data(), b, b);
      mat_sub(d, tmp_bb.data(), bb);
      mat_mul(li, aug.data() + (i - 1) * b * cols, tmp_bc.data(), b, cols);
      mat_sub(a, tmp_bc.data(), b * cols);
    }
    if (!fac.factor(d, b)) return false;
    if (i + 1 < m) {
      std::memcpy(gs.data() + i * bb, upper.data() + i * bb, bb * sizeof(double));
      fac.solve_block(gs.data() + i * bb, b);
    }
    fac.solve_block(a, cols);
  }
  // Back substitution: X_i = S_i - G_i X_{i+1}
  for (std::size_t i = m - 1; i-- > 0;) {
    mat_mul(gs.data() + i * bb, aug.data() + (i + 1) * b * cols, tmp_bc.data(), b, cols);
    mat_sub(aug.data() + i * b * cols, tmp_bc.data(), b * cols);
  }

  // Close the loop: (D_{n-1} - L_{n-1} Xh_{n-2} - U_{n-1} Xh_0) y = r_{n-1} - ...
  // where column 0 of aug holds x_p and columns 1..b hold Xh.
  DenseMatrix closure(b);
  std::vector<double> yrhs(b);
  for (std::size_t r = 0; r < b; ++r) {
    yrhs[r] = rhs[(n - 1) * b + r];
    for (std::size_t c = 0; c < b; ++c)
      closure.at(r, c) = diag[(n - 1) * bb + r * b + c];
  }
  const double* l_last = lower.data() + (n - 1) * bb;
  const double* u_last = upper.data() + (n - 1) * bb;
  const double* x_last = aug.data() + (m - 1) * b * cols;
  const double* x_first = aug.data();
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t k = 0; k < b; ++k) {
      yrhs[r] -= l_last[r * b + k] * x_last[k * cols];
      yrhs[r] -= u_last[r * b + k] * x_first[k * cols];
      for (std::size_t c = 0; c < b; ++c) {
        closure.at(r, c) -= l_last[r * b + k] * x_last[k * cols + 1 + c];
        closure.at(r, c) -= u_last[r * b + k] * x_first[k * cols + 1 + c];
      }
    }
  if (!dense_solve(std::move(closure), yrhs)) return false;

  for (std::size_t r = 0; r < b; ++r) rhs[(n - 1) * b + r] = yrhs[r];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < b; ++r) {
      double v = aug[(i * b + r) * cols];
      for (std::size_t c = 0; c < b; ++c)
        v -= aug[(i * b + r) * cols + 1 + c] * yrhs[c];
      rhs[i * b + r] = v;
    }
  return true;
}

bool gmres(std::size_t n,
           const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply_op,
           const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply_precond,
           const std::vector<double>& rhs, std::vector<double>& x,
           double rtol, int max_iterations, int restart) {
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
  };
  x.assign(n, 0.0);
  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) return true;
  const std::size_t kmax = static_cast<std::size_t>(restart);
  std::vector<std::vector<double>> basis;
  std::vector<double> h((kmax + 1) * kmax, 0.0);
  std::vector<double> cs(kmax, 0.0), sn(kmax, 0.0), g(kmax + 1, 0.0);
  std::vector<double> r(n), w(n), z(n);

  int iters = 0;
  while (iters < max_iterations) {
    // r = b - A x
    apply_op(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    double beta = norm2(r);
    if (beta <= rtol * bnorm) return true;

    basis.assign(1, r);
    for (double& v : basis[0]) v /= beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::fill(h.begin(), h.end(), 0.0);

    std::size_t k = 0;
    for (; k < kmax && iters < max_iterations; ++k, ++iters) {
      apply_precond(basis[k], z);
      apply_op(z, w);
      for (std::size_t j = 0; j <= k; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += w[i] * basis[j][i];
        h[j * kmax + k] = dot;
        for (std::size_t i = 0; i < n; ++i) w[i] -= dot * basis[j][i];
      }
      const double wn = norm2(w);
      h[(k + 1) * kmax + k] = wn;
      if (wn > 0.0) {
        basis.push_back(w);
        for (double& v : basis.back()) v /= wn;
      }
      // Givens rotations
      for (std::size_t j = 0; j < k; ++j) {
        const double t = cs[j] * h[j * kmax + k] + sn[j] * h[(j + 1) * kmax + k];
        h[(j + 1) * kmax + k] = -sn[j] * h[j * kmax + k] + cs[j] * h[(j + 1) * kmax + k];
        h[j * kmax + k] = t;
      }
      const double denom = std::hypot(h[k * kmax + k], h[(k + 1) * kmax + k]);
      if (denom == 0.0) {
        ++k;
        break;
      }
      cs[k] = h[k * kmax + k] / denom;
      sn[k] = h[(k + 1) * kmax + k] / denom;
      h[k * kmax + k] = denom;
      h[(k + 1) * kmax + k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::fabs(g[k + 1]) <= rtol * bnorm) {
        ++k;
        break;
      }
      if (wn == 0.0) {
        ++k;
        break;
      }
    }
    // solve the k x k triangular system
    std::vector<double> y(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= h[i * kmax + j] * y[j];
      y[i] = s / h[i * kmax + i];
    }
    std::vector<double> update(n, 0.0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) update[i] += y[j] * basis[j][i];
    apply_precond(update, z);
    for (std::size_t i = 0; i < n; ++i) x[i] += z[i];

    apply_op(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    if (norm2(r) <= rtol * bnorm) return true;
  }
  return false;
}

} // namespace efv
