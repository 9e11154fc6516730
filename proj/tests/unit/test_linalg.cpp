#include <doctest.h>

#include <cmath>
#include <random>

#include "gegtau/linalg.hpp"

using namespace gegtau;

TEST_CASE("null_basis is orthonormal and annihilated") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (auto [r, c] : {std::pair{1, 3}, std::pair{4, 10}, std::pair{4, 30}}) {
    Matrix<Real> m(r, c);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) m(i, j) = nd(rng) * std::pow(10.0, 3 * i);
    }
    const Matrix<Real> z = null_basis(m);
    REQUIRE(z.rows() == static_cast<std::size_t>(c));
    REQUIRE(z.cols() == static_cast<std::size_t>(c - r));
    const Matrix<Real> mz = m * z;
    for (std::size_t i = 0; i < mz.rows(); ++i) {
      for (std::size_t j = 0; j < mz.cols(); ++j) CHECK(std::fabs(mz(i, j)) < 1e-14L * std::pow(10.0L, 3 * i) * c);
    }
    for (std::size_t a = 0; a < z.cols(); ++a) {
      for (std::size_t b = 0; b < z.cols(); ++b) {
        Real ip = 0;
        for (std::size_t k = 0; k < z.rows(); ++k) ip += z(k, a) * z(k, b);
        CHECK(std::fabs(ip - (a == b ? 1 : 0)) < 1e-17L);
      }
    }
  }
}

TEST_CASE("null_basis rejects dependent rows") {
  Matrix<Real> m(2, 4);
  for (int j = 0; j < 4; ++j) {
    m(0, j) = j + 1;
    m(1, j) = 2 * (j + 1);
  }
  CHECK_THROWS_AS(null_basis(m), NumericalError);
}

TEST_CASE("solve reproduces a known solution and flags singular systems") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  Matrix<Real> a(6, 6), x(6, 2);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) a(i, j) = nd(rng);
    x(i, 0) = nd(rng);
    x(i, 1) = nd(rng);
  }
  const Matrix<Real> got = solve(a, a * x);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(got(i, j) == doctest::Approx(x(i, j)).epsilon(1e-14));
  }
  Matrix<Real> s(3, 3);
  s(0, 0) = 1;
  s(1, 1) = 1;
  CHECK_THROWS_AS(solve(s, Matrix<Real>::identity(3)), NumericalError);
}
