#pragma once

#include <span>
#include <vector>

#include "gegtau/scaled_real.hpp"
#include "gegtau/types.hpp"

namespace gegtau {

// Gegenbauer polynomials in the normalization G_0 = 1, G_n = C_n^(gamma)/(2 gamma)
// for n >= 1, which stays regular at the Chebyshev index gamma = 0:
//   G_n^(0) = T_n/n,  G_n^(1/2) = P_n,  G_n^(1) = U_n/2.

/// G_n^(gamma)(1) from the running product (2g+n-1)...(2g+1)/n!.
ScaledReal value_at_one(GegIndex gamma, int n);

/// D^k G_n^(gamma)(1); exact zero for k > n.
ScaledReal deriv_at_one(GegIndex gamma, int n, int k);

/// G_n^(gamma)(x) for |x| <= 1 by the three-term recurrence.
Real eval(GegIndex gamma, int n, Real x);

/// D^k G_n^(gamma)(x), using D G_{m+1}^(g) = 2(g+1) G_m^(g+1) for m >= 1.
Real eval_derivative(GegIndex gamma, int n, int k, Real x);

/// h_n = integral of (1-x^2)^(gamma-1/2) [G_n^(gamma)]^2 over [-1, 1].
ScaledReal norm_h(GegIndex gamma, int n);

/// A polynomial sum_k coeffs[k] G_k^(gamma)(x).
struct GegCoeffs {
  GegIndex gamma;
  std::vector<Real> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Real operator()(Real x) const;
};

/// Coefficients of the derivative at the same index, one degree lower.
GegCoeffs diff_coeffs(const GegCoeffs& p);

/// In-place variant on a bare coefficient vector.
std::vector<Real> diff_coeffs(GegIndex gamma, std::span<const Real> coeffs);

/// Coefficients of x * p(x) at the same index, one degree higher.
std::vector<Real> mul_x_coeffs(GegIndex gamma, std::span<const Real> coeffs);

/// Interior Gauss-Lobatto points for degree n: the n-3 zeros of D G_{n-2}^(gamma),
/// i.e. the zeros of G_{n-3}^(gamma+1). Sorted ascending. Requires n >= 5.
std::vector<Real> lobatto_interior_nodes(GegIndex gamma, int n);

}  // namespace gegtau
