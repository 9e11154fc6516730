#include "gegtau/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <limits>

namespace gegtau {

Real integrate(const std::function<Real(Real)>& f, Real a, Real b) {
  // The integrator object caches its abscissas; one per thread.
  thread_local boost::math::quadrature::tanh_sinh<Real> integrator(15);
  const Real tol = std::sqrt(std::numeric_limits<Real>::epsilon()) * Real(1e-3);
  return integrator.integrate([&](Real x) { return f(x); }, a, b, tol);
}

Real legendre_p(int n, Real x) { return boost::math::legendre_p(n, x); }

}  // namespace gegtau
