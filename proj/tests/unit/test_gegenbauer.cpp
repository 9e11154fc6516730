#include <doctest.h>

#include <boost/math/special_functions/chebyshev.hpp>
#include <boost/math/special_functions/gegenbauer.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "gegtau/gegenbauer.hpp"
#include "gegtau/quadrature.hpp"

using namespace gegtau;

namespace {

// Independent closed forms: G^(0) = T_n/n, G^(1) = U_n/2, G^(g) = C^(g)/(2g).
Real reference_g(Real gamma, int n, Real x) {
  if (n == 0) return 1;
  if (gamma == 0) return boost::math::chebyshev_t(static_cast<unsigned>(n), x) / n;
  return boost::math::gegenbauer(static_cast<unsigned>(n), gamma, x) / (2 * gamma);
}

}  // namespace

TEST_CASE("value_at_one examples") {
  CHECK(value_at_one(GegIndex(0), 5).to_real() == doctest::Approx(0.2L).epsilon(1e-18));
  CHECK(value_at_one(GegIndex(0.7L), 1).to_real() == 1);
  CHECK(value_at_one(GegIndex(0.5L), 7).to_real() == doctest::Approx(1).epsilon(1e-18));
  CHECK(value_at_one(GegIndex(1), 2).to_real() == doctest::Approx(1.5L).epsilon(1e-18));
}

TEST_CASE("deriv_at_one examples and differentiated reference") {
  CHECK(deriv_at_one(GegIndex(0.5L), 2, 1).to_real() == doctest::Approx(3).epsilon(1e-18));
  for (Real g : {Real(-0.3), Real(0), Real(2.5)}) CHECK(deriv_at_one(GegIndex(g), 1, 1).to_real() == 1);
  // D^3 (T_3/3) = D^3 ((4x^3 - 3x)/3) = 8.
  CHECK(deriv_at_one(GegIndex(0), 3, 3).to_real() == doctest::Approx(8).epsilon(1e-18));
  CHECK(deriv_at_one(GegIndex(1.3L), 4, 5).is_zero());
  // D^k G_n(1) agrees with the pointwise derivative evaluator at x = 1.
  for (Real g : {Real(-0.25), Real(0), Real(0.5), Real(1.75), Real(4)}) {
    for (int n = 0; n <= 14; ++n) {
      for (int k = 0; k <= n; ++k) {
        const Real a = deriv_at_one(GegIndex(g), n, k).to_real();
        const Real b = eval_derivative(GegIndex(g), n, k, 1);
        CHECK(std::fabs(a - b) <= 1e-14L * std::max<Real>(1, std::fabs(a)));
      }
    }
  }
}

TEST_CASE("deriv_at_one stays finite far beyond double range") {
  const ScaledReal v = deriv_at_one(GegIndex(3), 400, 200);
  CHECK(v.sign() == 1);
  CHECK(std::isfinite(static_cast<double>(v.log_mag())));
  CHECK(v.log_mag() > 1000);
}

TEST_CASE("eval examples") {
  CHECK(eval(GegIndex(0), 2, 1) == doctest::Approx(0.5L));
  CHECK(eval(GegIndex(2.5L), 9, 0) == 0);
  const Real x = 0.3L;
  CHECK(eval(GegIndex(0.5L), 4, x) == doctest::Approx((35 * x * x * x * x - 30 * x * x + 3) / 8).epsilon(1e-17));
  CHECK(eval(GegIndex(0.5L), 4, x) == doctest::Approx(0.0729375L).epsilon(1e-17));
}

TEST_CASE("eval matches independent Chebyshev and Gegenbauer references") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-1, 1);
  for (Real g : {Real(0), Real(0.25), Real(1), Real(2.5), Real(3.5)}) {
    for (int n = 0; n <= 30; ++n) {
      for (int t = 0; t < 5; ++t) {
        const Real x = ux(rng);
        const Real ref = reference_g(g, n, x);
        CHECK(std::fabs(eval(GegIndex(g), n, x) - ref) <= 1e-13L * std::max<Real>(1, std::fabs(ref)));
      }
    }
  }
}

TEST_CASE("parity of G_n") {
  for (Real g : {Real(-0.4), Real(0), Real(1.7)}) {
    for (int n = 0; n <= 12; ++n) {
      const Real s = n % 2 == 0 ? 1 : -1;
      for (Real x : {Real(0.2), Real(0.77)}) {
        CHECK(eval(GegIndex(g), n, -x) == doctest::Approx(s * eval(GegIndex(g), n, x)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("value at one is positive, rising above gamma = 1/2 and falling below") {
  // G_{n+1}(1) / G_n(1) = (n + 2 gamma) / (n + 1).
  for (Real g : {Real(-0.4), Real(0.1), Real(0.5), Real(1), Real(3)}) {
    for (int n = 1; n < 40; ++n) {
      const ScaledReal a = value_at_one(GegIndex(g), n), b = value_at_one(GegIndex(g), n + 1);
      CHECK(a.sign() == 1);
      CHECK((b / a).to_real() == doctest::Approx((n + 2 * g) / (n + 1)).epsilon(1e-17));
      if (g > 0.5L) CHECK(a < b);
      if (g < 0.5L) CHECK(b < a);
    }
  }
}

TEST_CASE("derivative ladder shifts the index") {
  // D G_{m+1}^(g) = 2(g+1) G_m^(g+1) for m >= 1, checked by central differences.
  for (Real g : {Real(0), Real(0.5), Real(2)}) {
    for (int m = 1; m <= 10; ++m) {
      const Real x = 0.37L, h = 1e-6L;
      const Real fd = (eval(GegIndex(g), m + 1, x + h) - eval(GegIndex(g), m + 1, x - h)) / (2 * h);
      CHECK(fd == doctest::Approx(2 * (g + 1) * eval(GegIndex(g + 1), m, x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("norm_h examples and orthogonality by quadrature") {
  CHECK(norm_h(GegIndex(0.5L), 0).to_real() == doctest::Approx(2).epsilon(1e-18));
  CHECK(norm_h(GegIndex(0.5L), 3).to_real() == doctest::Approx(2.0L / 7).epsilon(1e-18));
  CHECK(norm_h(GegIndex(0), 2).to_real() == doctest::Approx(std::numbers::pi_v<Real> / 8).epsilon(1e-18));
  for (Real g : {Real(0), Real(0.5), Real(1.25), Real(3)}) {
    const GegIndex gi(g);
    auto w = [g](Real x) { return std::pow(1 - x * x, g - Real(0.5)); };
    for (int a = 0; a <= 6; ++a) {
      for (int b = a; b <= 6; ++b) {
        const Real ip = integrate([&](Real x) { return w(x) * eval(gi, a, x) * eval(gi, b, x); }, -1, 1);
        if (a == b) {
          CHECK(ip == doctest::Approx(norm_h(gi, a).to_real()).epsilon(1e-9));
        } else {
          CHECK(std::fabs(ip) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("diff_coeffs examples") {
  for (Real g : {Real(0), Real(0.5), Real(2)}) {
    const GegCoeffs d = diff_coeffs(GegCoeffs{GegIndex(g), {0, 0, 1}});
    REQUIRE(d.coeffs.size() == 2);
    CHECK(d.coeffs[0] == doctest::Approx(0).epsilon(1e-18));
    CHECK(d.coeffs[1] == doctest::Approx(2 * (g + 1)).epsilon(1e-18));
  }
  CHECK(diff_coeffs(GegCoeffs{GegIndex(1), {4.5L}}).coeffs.empty());
}

TEST_CASE("diff_coeffs of x^4 in the Legendre basis gives 4x^3") {
  const GegIndex g(0.5L);
  // x^4 = (8 P_4 + 20 P_2 + 7 P_0) / 35.
  const GegCoeffs x4{g, {7.0L / 35, 0, 20.0L / 35, 0, 8.0L / 35}};
  const GegCoeffs d = diff_coeffs(x4);
  for (int i = 0; i < 20; ++i) {
    const Real x = -1 + 2 * Real(i) / 19;
    CHECK(x4(x) == doctest::Approx(x * x * x * x).epsilon(1e-16));
    CHECK(d(x) == doctest::Approx(4 * x * x * x).epsilon(1e-15));
  }
}

TEST_CASE("diff_coeffs and mul_x_coeffs match pointwise behaviour") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uc(-1, 1);
  for (Real g : {Real(-0.3), Real(0), Real(1.5)}) {
    GegCoeffs p{GegIndex(g), {}};
    for (int k = 0; k <= 12; ++k) p.coeffs.push_back(uc(rng));
    const GegCoeffs d = diff_coeffs(p);
    const GegCoeffs xp{GegIndex(g), mul_x_coeffs(GegIndex(g), p.coeffs)};
    for (Real x : {Real(-0.9), Real(-0.2), Real(0.45), Real(0.99)}) {
      const Real h = 1e-6L;
      CHECK(d(x) == doctest::Approx((p(x + h) - p(x - h)) / (2 * h)).epsilon(1e-7));
      CHECK(xp(x) == doctest::Approx(x * p(x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("lobatto interior nodes") {
  const auto a = lobatto_interior_nodes(GegIndex(0), 5);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == doctest::Approx(-0.5L).epsilon(1e-17));
  CHECK(a[1] == doctest::Approx(0.5L).epsilon(1e-17));
  for (Real g : {Real(0), Real(0.5), Real(3)}) {
    const auto b = lobatto_interior_nodes(GegIndex(g), 6);
    CHECK(std::count_if(b.begin(), b.end(), [](Real x) { return std::fabs(x) < 1e-18L; }) == 1);
  }
  const auto c = lobatto_interior_nodes(GegIndex(0), 8);
  REQUIRE(c.size() == 5);
  for (int j = 1; j <= 5; ++j) {
    CHECK(c[5 - j] == doctest::Approx(std::cos(j * std::numbers::pi_v<Real> / 6)).epsilon(1e-16));
  }
}

TEST_CASE("invalid index is rejected") {
  CHECK_THROWS_AS(GegIndex(-0.5L), std::domain_error);
  CHECK_THROWS_AS(GegIndex(-2), std::domain_error);
}
