#pragma once

#include <functional>

#include "gegtau/types.hpp"

namespace gegtau {

/// Double-exponential (tanh-sinh) quadrature on [a, b]. Tolerates integrable
/// algebraic endpoint singularities such as (1-x^2)^(gamma-1/2).
Real integrate(const std::function<Real(Real)>& f, Real a, Real b);

/// Legendre polynomial P_n(x) from an implementation independent of the
/// Gegenbauer kernel, for use in verification integrals.
Real legendre_p(int n, Real x);

}  // namespace gegtau
