#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gegtau/analysis.hpp"
#include "gegtau/parallel.hpp"
#include "gegtau/pencil.hpp"

using namespace gegtau;

TEST_CASE("exact spectrum") {
  const ExactSpectrum ex = exact_spectrum(4);
  const Real pi = std::numbers::pi_v<Real>;
  CHECK(ex.even[0] == doctest::Approx(-pi * pi).epsilon(1e-18));
  CHECK(static_cast<double>(ex.even[0]) == doctest::Approx(-9.8696044).epsilon(1e-8));
  CHECK(static_cast<double>(ex.q[0]) == doctest::Approx(4.493409457909064).epsilon(1e-15));
  for (int k = 1; k <= 4; ++k) {
    const Real q = ex.q[k - 1];
    CHECK(std::fabs(std::sin(q) - q * std::cos(q)) < 1e-14L);
    CHECK(q > k * pi);
    CHECK(q < (2 * k + 1) * pi / 2);
    CHECK(ex.odd[k - 1] == doctest::Approx(-q * q).epsilon(1e-18));
  }
  const auto m = ex.merged();
  REQUIRE(m.size() == 8);
  CHECK(m[0] == ex.even[0]);
  CHECK(m[1] == ex.odd[0]);
  CHECK(m[2] == ex.even[1]);
  CHECK(m[3] == ex.odd[1]);
  for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i] < m[i - 1]);
}

TEST_CASE("perturbation coefficients") {
  CHECK(perturbation_mu1(6, Parity::even).mu1 == doctest::Approx(-0.01L).epsilon(1e-18));
  CHECK(perturbation_mu1(6, Parity::odd).mu1 == doctest::Approx(-0.04L).epsilon(1e-18));
  const PerturbationPrediction p = perturbation_mu1(12, Parity::even, -1e-3L);
  CHECK(p.predicted_lambda > 0);
  CHECK(perturbation_mu1(12, Parity::odd, 1e-3L).predicted_lambda < 0);
  // Odd n borrows the neighbouring degree of the mode's parity.
  CHECK(perturbation_mu1(13, Parity::even).mu1 == perturbation_mu1(12, Parity::even).mu1);
  CHECK(perturbation_mu1(13, Parity::odd).mu1 == perturbation_mu1(14, Parity::odd).mu1);
  CHECK_THROWS_AS(perturbation_mu1(4, Parity::even), std::invalid_argument);
  CHECK_THROWS_AS(perturbation_mu1(8, Parity::none), std::invalid_argument);
}

TEST_CASE("perturbation law for the tau spectrum") {
  for (Real eps : {Real(1e-3), Real(-1e-3)}) {
    for (int n : {12, 16}) {
      const SpectrumReport r = compute_spectrum(MethodConfig::make(MethodKind::tau, Real(0.5) + eps, n));
      for (Parity par : {Parity::even, Parity::odd}) {
        std::complex<double> ext{0, 0};
        for (const auto& e : r.entries) {
          if (e.parity == par && std::abs(e.lambda) > std::abs(ext)) ext = e.lambda;
        }
        const double want = static_cast<double>(perturbation_mu1(n, par, eps).predicted_lambda);
        CHECK(std::abs(ext - want) <= 0.05 * std::fabs(want));
        CHECK((ext.real() > 0) == (eps < 0));
      }
    }
  }
}

TEST_CASE("positive pair examples") {
  {
    const auto [om, th] = second_order_pair(GegIndex(1), 10);
    const auto r = positive_pair_check(om, th);
    CHECK(r.ok);
    CHECK(r.clause.empty());
  }
  {
    const auto om = second_order_pair(GegIndex(0.5L), 8).first;
    const auto om1 = second_order_pair(GegIndex(1.5L), 7).first;
    CHECK(positive_pair_check(om, om1).ok);
  }
  {
    // (mu - 1)(mu + 2) has a positive root.
    CharPoly p{Parity::none, 2, GegIndex(0), {ScaledReal(-2), ScaledReal(1), ScaledReal(1)},
               CharPolyFormula::second_order_value};
    CharPoly q{Parity::none, 1, GegIndex(0), {ScaledReal(3), ScaledReal(1)}, CharPolyFormula::second_order_slope};
    const auto r = positive_pair_check(p, q);
    CHECK_FALSE(r.ok);
    CHECK(r.clause == "(a)");
  }
  {
    CharPoly p{Parity::none, 3, GegIndex(0), {ScaledReal(1), ScaledReal(1), ScaledReal(1), ScaledReal(1)},
               CharPolyFormula::second_order_value};
    CharPoly q{Parity::none, 1, GegIndex(0), {ScaledReal(1), ScaledReal(1)}, CharPolyFormula::second_order_slope};
    CHECK_THROWS_AS(positive_pair_check(p, q), std::invalid_argument);
  }
}

TEST_CASE("interlacing violations are detected") {
  // P = (mu+1)(mu+2), Q = (mu+3): Q's root lies outside P's roots.
  CharPoly p{Parity::none, 2, GegIndex(0), {ScaledReal(2), ScaledReal(3), ScaledReal(1)},
             CharPolyFormula::second_order_value};
  CharPoly q{Parity::none, 1, GegIndex(0), {ScaledReal(3), ScaledReal(1)}, CharPolyFormula::second_order_slope};
  CHECK_FALSE(positive_pair_check(p, q).ok);
  // Q = (mu + 1.5) interlaces and the pair is positive.
  CharPoly q2{Parity::none, 1, GegIndex(0), {ScaledReal(1.5L), ScaledReal(1)}, CharPolyFormula::second_order_slope};
  CHECK(positive_pair_check(p, q2).ok);
  // Opposite leading signs break the pair.
  CharPoly q3{Parity::none, 1, GegIndex(0), {ScaledReal(-1.5L), ScaledReal(-1)}, CharPolyFormula::second_order_slope};
  CHECK_FALSE(positive_pair_check(p, q3).ok);
}

TEST_CASE("Hermite-Biehler stability") {
  CHECK(hermite_biehler_stability(stability_poly(GegIndex(0), 2)).stable());
  const StabilityResult s = hermite_biehler_stability(stability_poly(GegIndex(0.4L), 12));
  CHECK(s.stable());
  CHECK(s.agree());
  CharPoly z2m1{Parity::none, 2, GegIndex(0), {ScaledReal(-1), ScaledReal(0), ScaledReal(1)}, CharPolyFormula::stability};
  const StabilityResult u = hermite_biehler_stability(z2m1);
  CHECK_FALSE(u.hermite_biehler);
  CHECK_FALSE(u.direct);
  // Stable cubic (z+1)(z+2)(z+3) and unstable (z-1)(z+2)(z+3).
  CharPoly st{Parity::none, 3, GegIndex(0), {ScaledReal(6), ScaledReal(11), ScaledReal(6), ScaledReal(1)},
              CharPolyFormula::stability};
  CHECK(hermite_biehler_stability(st).stable());
  CharPoly un{Parity::none, 3, GegIndex(0), {ScaledReal(-6), ScaledReal(1), ScaledReal(4), ScaledReal(1)},
              CharPolyFormula::stability};
  const StabilityResult r = hermite_biehler_stability(un);
  CHECK(r.agree());
  CHECK_FALSE(r.direct);
}

TEST_CASE("Hermite-Biehler verdict agrees with root signs across the index range") {
  for (Real g : {Real(-0.4), Real(0), Real(0.5), Real(1), Real(2)}) {
    for (int n = 2; n <= 20; ++n) {
      const StabilityResult r = hermite_biehler_stability(stability_poly(GegIndex(g), n));
      CAPTURE(static_cast<double>(g));
      CAPTURE(n);
      CHECK(r.agree());
      if (g <= 0.5L) CHECK(r.stable());
    }
  }
}

TEST_CASE("equivalence suite examples") {
  const auto names_pass = [](const EquivalenceReport& r, std::initializer_list<const char*> want) {
    for (const char* prefix : want) {
      bool seen = false;
      for (const auto& c : r.checks) {
        if (c.name.rfind(prefix, 0) == 0) {
          seen = true;
          CHECK(c.applicable);
          CHECK(c.pass);
          CHECK(c.max_rel_dev <= equivalence_tol);
        }
      }
      CHECK(seen);
    }
  };
  const EquivalenceReport a = equivalence_suite(0, 16);
  CHECK(a.pass());
  names_pass(a, {"galerkin(g)", "inviscid(g)", "modified(g)"});
  const EquivalenceReport b = equivalence_suite(1.25L, 12);
  CHECK(b.pass());
  names_pass(b, {"even tau(g)"});
  const EquivalenceReport c = equivalence_suite(0.5L, 12);
  CHECK(c.pass());
  names_pass(c, {"modified(g)"});
  for (const auto& ch : equivalence_suite(0.25L, 10).checks) {
    if (ch.name.rfind("even tau(g)", 0) == 0) CHECK_FALSE(ch.applicable);
  }
  CHECK_THROWS_AS(equivalence_suite(0, 7), std::invalid_argument);
}

TEST_CASE("match_spectra") {
  const SpectrumMatch m = match_spectra({{-1, 0}, {-2, 0}}, {{-2, 0}, {-1 - 1e-12, 0}});
  CHECK(m.counts_match);
  CHECK(m.max_rel_dev < 1e-11);
  CHECK_FALSE(match_spectra({{-1, 0}}, {{-1, 0}, {-3, 0}}).counts_match);
}

TEST_CASE("epsilon integrals") {
  const EpsilonIntegralReport r = epsilon_integral_check(6, 1e-4L);
  CHECK(r.pass());
  REQUIRE(!r.checks.empty());
  CHECK(r.checks[0].computed == doctest::Approx(-4e-4L / 42).epsilon(50e-4));
  for (int n : {5, 7, 11}) {
    const EpsilonIntegralReport o = epsilon_integral_check(n, 3e-4L);
    CHECK(o.checks[0].computed == 0);
    CHECK(o.pass());
  }
  CHECK(std::fabs(epsilon_integral_check(6, 0).checks[0].computed) < 1e-15L);
  CHECK_THROWS_AS(epsilon_integral_check(6, 1e-2L), std::invalid_argument);
}

TEST_CASE("Legendre infinite pair") {
  for (int n : {8, 9, 16, 25}) {
    const LegendreReport r = legendre_infinite_check(n);
    CHECK(r.near_infinite == 2);
    REQUIRE(r.modes.size() == 2);
    CHECK(r.modes[0].l == n - 4);
    CHECK(r.modes[1].l == n - 5);
    for (const auto& m : r.modes) CHECK(m.residual <= 1e-10L);
  }
}

TEST_CASE("parallel_map keeps input order and reports the first failure") {
  std::vector<int> in(200);
  for (int i = 0; i < 200; ++i) in[i] = i;
  const auto out = parallel_map(in, [](int v) { return v * v; }, 8);
  for (int i = 0; i < 200; ++i) CHECK(out[i] == i * i);
  try {
    parallel_map(
        in,
        [](int v) {
          if (v == 37 || v == 150) throw std::runtime_error(std::to_string(v));
          return v;
        },
        6);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "37");
  }
}
