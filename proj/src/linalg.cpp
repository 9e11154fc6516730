#include "gegtau/linalg.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gegtau {

Matrix<Real> null_basis(const Matrix<Real>& c) {
  const std::size_t m = c.rows();
  const std::size_t n = c.cols();
  if (m > n) throw NumericalError("null_basis: more constraints than unknowns");
  // Work on t = c^T (n x m); Householder from the left, pivoting over columns.
  Matrix<Real> t(n, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(j, i) = c(i, j);
  }
  Matrix<Real> q = Matrix<Real>::identity(n);
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real first_diag = 0;
  std::vector<Real> v(n);

  for (std::size_t k = 0; k < m; ++k) {
    // Pivot: remaining column of largest norm below row k.
    std::size_t best = k;
    Real best_norm = -1;
    for (std::size_t j = k; j < m; ++j) {
      Real s = 0;
      for (std::size_t i = k; i < n; ++i) s += t(i, j) * t(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(t(i, k), t(i, best));
      std::swap(perm[k], perm[best]);
    }
    const Real alpha = std::sqrt(best_norm);
    if (k == 0) first_diag = alpha;
    if (!(alpha > 64 * eps * static_cast<Real>(n) * first_diag) || first_diag == 0) {
      throw NumericalError("boundary rows are linearly dependent (rank " + std::to_string(k) + " of " +
                           std::to_string(m) + ")");
    }
    const Real x0 = t(k, k);
    const Real beta = x0 >= 0 ? -alpha : alpha;
    std::fill(v.begin(), v.end(), Real{0});
    v[k] = x0 - beta;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = t(i, k);
    Real vtv = 0;
    for (std::size_t i = k; i < n; ++i) vtv += v[i] * v[i];
    const Real tau = 2 / vtv;
    for (std::size_t j = k; j < m; ++j) {
      Real s = 0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * t(i, j);
      s *= tau;
      for (std::size_t i = k; i < n; ++i) t(i, j) -= s * v[i];
    }
    // Q <- Q P_k, so that c^T = Q R.
    for (std::size_t i = 0; i < n; ++i) {
      Real s = 0;
      for (std::size_t j = k; j < n; ++j) s += q(i, j) * v[j];
      s *= tau;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= s * v[j];
    }
  }

  Matrix<Real> z(n, n - m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = m; j < n; ++j) z(i, j - m) = q(i, j);
  }
  return z;
}

Matrix<Real> solve(const Matrix<Real>& a, const Matrix<Real>& b) {
  if (!a.square() || a.rows() != b.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const std::size_t n = a.rows();
  Matrix<Real> lu = a;
  Matrix<Real> x = b;
  // Pivot threshold per column, so the diagnostic does not depend on how
  // the unknowns are scaled.
  const Real eps_n = static_cast<Real>(std::max<std::size_t>(n, 1)) * std::numeric_limits<Real>::epsilon();
  std::vector<Real> tiny(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) tiny[j] = std::max(tiny[j], std::fabs(a(i, j)));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (tiny[j] == 0) throw NumericalError("reduced operator is singular (zero column " + std::to_string(j) + ")");
    tiny[j] *= eps_n;
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(lu(i, k)) > std::fabs(lu(p, k))) p = i;
    }
    if (!(std::fabs(lu(p, k)) > tiny[k])) {
      throw NumericalError("reduced operator is singular (pivot " + std::to_string(k) + " of " +
                           std::to_string(n) + ")");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(p, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = lu(i, k) / lu(k, k);
      if (f == 0) continue;
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = n; i-- > 0;) {
      Real s = x(i, j);
      for (std::size_t k = i + 1; k < n; ++k) s -= lu(i, k) * x(k, j);
      x(i, j) = s / lu(i, i);
    }
  }
  return x;
}

}  // namespace gegtau
