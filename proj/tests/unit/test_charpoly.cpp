#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gegtau/charpoly.hpp"
#include "gegtau/pencil.hpp"

using namespace gegtau;

namespace {

std::vector<std::complex<Real>> lambdas(const CharPoly& p) {
  std::vector<std::complex<Real>> out;
  for (const auto& r : roots(p)) out.push_back(Real(1) / r.value);
  return out;
}

// Coefficients divided by the leading one.
std::vector<Real> monic(const CharPoly& p) {
  std::vector<Real> c = p.normalized();
  const Real lead = c.back();
  for (auto& v : c) v /= lead;
  return c;
}

}  // namespace

TEST_CASE("even charpoly at gamma = 0, n = 4") {
  const CharPoly p = even_charpoly(GegIndex(0), 4);
  REQUIRE(p.degree() == 1);
  CHECK(p.coeffs[0].to_real() / p.coeffs[1].to_real() == doctest::Approx(-1.0L / 12).epsilon(1e-18));
  const auto l = lambdas(p);
  REQUIRE(l.size() == 1);
  CHECK(l[0].real() == doctest::Approx(12).epsilon(1e-15));
}

TEST_CASE("Legendre charpolys have a vanishing constant term") {
  CHECK(even_charpoly(GegIndex(0.5L), 4).coeffs[0].is_zero());
  CHECK(odd_charpoly(GegIndex(0.5L), 5).coeffs[0].is_zero());
  // Higher degrees carry rounding from the running products at x = 1.
  for (int n = 6; n <= 30; n += 2) {
    CHECK(std::fabs(even_charpoly(GegIndex(0.5L), n).normalized()[0]) < 1e-17L);
    CHECK(std::fabs(odd_charpoly(GegIndex(0.5L), n + 1).normalized()[0]) < 1e-17L);
  }
}

TEST_CASE("single-mode charpolys") {
  const auto l1 = lambdas(even_charpoly(GegIndex(1), 4));
  REQUIRE(l1.size() == 1);
  CHECK(l1[0].real() == doctest::Approx(-24).epsilon(1e-15));
  const auto l0 = lambdas(odd_charpoly(GegIndex(0), 5));
  REQUIRE(l0.size() == 1);
  CHECK(l0[0].real() == doctest::Approx(40).epsilon(1e-15));
}

TEST_CASE("odd charpoly at gamma = 2, n = 5 matches the pencil") {
  const CharPoly p = odd_charpoly(GegIndex(2), 5);
  const auto l = lambdas(p);
  const SpectrumReport r = compute_spectrum(MethodConfig::make(MethodKind::tau, 2, 5), {}, Parity::odd);
  REQUIRE(l.size() == r.entries.size());
  for (const auto& z : l) {
    CHECK(std::fabs(z.imag()) < 1e-12L * std::abs(z));
    CHECK(z.real() < 0);
    bool found = false;
    for (const auto& e : r.entries) found = found || std::abs(e.lambda - std::complex<double>(z)) < 1e-9 * std::abs(z);
    CHECK(found);
  }
}

TEST_CASE("formula branches agree where they overlap") {
  for (Real g : {Real(0.75), Real(1), Real(1.5), Real(2.25), Real(3.5)}) {
    for (int n = 4; n <= 24; n += 2) {
      const auto a = monic(charpoly_with(CharPolyFormula::even_shifted, GegIndex(g), n));
      const auto b = monic(charpoly_with(CharPolyFormula::even_integrated, GegIndex(g), n));
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-13));
    }
    for (int n = 5; n <= 25; n += 2) {
      const auto a = monic(charpoly_with(CharPolyFormula::odd_shifted_one, GegIndex(g), n));
      const auto b = monic(charpoly_with(CharPolyFormula::odd_integrated, GegIndex(g), n));
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-13));
      if (g > 1.5L) {
        const auto c = monic(charpoly_with(CharPolyFormula::odd_shifted_two, GegIndex(g), n));
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(c[k]).epsilon(1e-13));
      }
    }
  }
  CHECK_THROWS_AS(charpoly_with(CharPolyFormula::even_shifted, GegIndex(0.5L), 8), std::invalid_argument);
  CHECK_THROWS_AS(charpoly_with(CharPolyFormula::odd_shifted_two, GegIndex(1.5L), 9), std::invalid_argument);
}

TEST_CASE("coefficients share one sign in the theorem range") {
  // All roots real and negative forces every coefficient to the same sign.
  for (Real g : {Real(0.6), Real(1.5), Real(3.5)}) {
    for (int n = 6; n <= 40; ++n) {
      const CharPoly p = n % 2 == 0 ? even_charpoly(GegIndex(g), n) : odd_charpoly(GegIndex(g), n);
      const int s = p.coeffs.back().sign();
      for (const auto& c : p.coeffs) CHECK(c.sign() == s);
    }
  }
}

TEST_CASE("second-order pair examples") {
  {
    const auto [om, th] = second_order_pair(GegIndex(0), 2);
    const auto o = om.normalized(), t = th.normalized();
    REQUIRE(om.degree() == 1);
    REQUIRE(th.degree() == 0);
    CHECK(om.coeffs[0].to_real() == doctest::Approx(0.5L).epsilon(1e-18));
    CHECK(om.coeffs[1].to_real() == doctest::Approx(2).epsilon(1e-18));
    CHECK(th.coeffs[0].to_real() == doctest::Approx(2).epsilon(1e-18));
    const auto r = roots(om);
    CHECK(r[0].value.real() == doctest::Approx(-0.25L).epsilon(1e-18));
  }
  {
    const auto [om, th] = second_order_pair(GegIndex(0.5L), 1);
    REQUIRE(om.degree() == 0);
    REQUIRE(th.degree() == 0);
    CHECK(om.coeffs[0].to_real() == 1);
    CHECK(th.coeffs[0].to_real() == 1);
  }
  {
    const auto r = roots(second_order_pair(GegIndex(1), 4).first);
    REQUIRE(r.size() == 2);
    for (const auto& z : r) {
      CHECK(z.value.imag() == 0);
      CHECK(z.value.real() < 0);
    }
    CHECK(r[0].value.real() != r[1].value.real());
  }
}

TEST_CASE("stability polynomial for n = 2") {
  for (Real g : {Real(-0.4), Real(0), Real(0.5), Real(1), Real(2.5)}) {
    const CharPoly p = stability_poly(GegIndex(g), 2);
    REQUIRE(p.degree() == 2);
    // (2/3)(g+1)(3 z^2 + 3 z + 1)
    for (int k = 0; k < 3; ++k) {
      const Real want = Real(2) / 3 * (g + 1) * (k == 0 ? 1 : 3);
      CHECK(p.coeffs[k].to_real() == doctest::Approx(want).epsilon(1e-15));
    }
    for (const auto& z : roots(p)) {
      CHECK(z.value.real() == doctest::Approx(-0.5L).epsilon(1e-15));
      CHECK(std::fabs(z.value.imag()) == doctest::Approx(std::sqrt(Real(3)) / 6).epsilon(1e-15));
    }
  }
  CHECK(stability_constant_k(GegIndex(0.5L), 2) == doctest::Approx(2.0L / 7).epsilon(1e-18));
}

TEST_CASE("charpoly preconditions") {
  CHECK_THROWS_AS(even_charpoly(GegIndex(0), 5), std::invalid_argument);
  CHECK_THROWS_AS(odd_charpoly(GegIndex(0), 6), std::invalid_argument);
  CHECK_THROWS_AS(stability_poly(GegIndex(0), 1), std::invalid_argument);
}
