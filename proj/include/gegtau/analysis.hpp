#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "gegtau/charpoly.hpp"
#include "gegtau/eig.hpp"
#include "gegtau/types.hpp"

namespace gegtau {

// ---------------------------------------------------------------------------
// Continuous problem D^4 u = lambda D^2 u, u(+-1) = Du(+-1) = 0.

struct ExactSpectrum {
  std::vector<Real> even;  // -k^2 pi^2
  std::vector<Real> odd;   // -q_k^2
  std::vector<Real> q;     // k-th positive root of q = tan q

  /// Both families merged, decreasing (least negative first).
  std::vector<Real> merged() const;
};

/// k-th positive root of sin q - q cos q in (k pi, (2k+1) pi/2), by bisection.
Real tan_root(int k);

ExactSpectrum exact_spectrum(int count);

// ---------------------------------------------------------------------------
// Near-Legendre perturbation of the two infinite eigenvalues.

struct PerturbationPrediction {
  int n = 0;
  Parity parity = Parity::even;
  Real mu1 = 0;
  Real epsilon = 0;            // gamma - 1/2
  Real predicted_lambda = 0;   // 1 / (epsilon mu1); infinite when epsilon = 0
};

/// First-order coefficient mu1 of the mu = 0 eigenvalue of the given parity.
/// Odd n uses n-1 for the even mode and n+1 for the odd mode.
PerturbationPrediction perturbation_mu1(int n, Parity parity, Real epsilon = 0);

// ---------------------------------------------------------------------------
// Positive pairs and the Hermite-Biehler criterion.

struct PositivePairResult {
  bool ok = false;
  std::string clause;  // first violated clause: "(a)", "(b)", "(c)"; empty when ok
  std::string detail;
  std::vector<std::complex<Real>> roots_p;
  std::vector<std::complex<Real>> roots_q;
};

/// True iff P and Q have real, negative, distinct roots that interlace with
/// the root closest to zero belonging to P, and like-signed leading
/// coefficients. Degrees must differ by at most one.
PositivePairResult positive_pair_check(const CharPoly& p, const CharPoly& q);

struct StabilityResult {
  bool hermite_biehler = false;  // (Omega, Theta) form a positive pair
  bool direct = false;           // every root has negative real part
  bool agree() const { return hermite_biehler == direct; }
  bool stable() const { return hermite_biehler && direct; }
  PositivePairResult pair;
  std::vector<std::complex<Real>> roots;
};

/// Splits p(z) = Omega(z^2) + z Theta(z^2) and compares the positive-pair
/// verdict with the signs of the real parts of the roots of p.
StabilityResult hermite_biehler_stability(const CharPoly& p);

// ---------------------------------------------------------------------------
// Equivalences between the discretizations.

struct SpectrumMatch {
  bool counts_match = false;
  double max_rel_dev = 0;
  std::optional<std::pair<std::complex<double>, std::complex<double>>> worst;
};

/// Greedy nearest-neighbour matching of two finite spectra.
SpectrumMatch match_spectra(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b);

struct EquivalenceCheck {
  std::string name;
  bool applicable = true;
  bool pass = false;
  double max_rel_dev = 0;
  std::string detail;
};

struct EquivalenceReport {
  Real gamma = 0;
  int n = 0;
  std::vector<EquivalenceCheck> checks;
  bool pass() const;
};

inline constexpr double equivalence_tol = 1e-8;

/// (i) galerkin(g) vs tau(g+2); (ii) inviscid(g) vs tau(g+1); (iii) modified
/// tau(g) vs galerkin(g), with two extra infinite eigenvalues on the modified
/// side; (iv) for g > 1/2, even tau eigenvalues vs the roots of the
/// second-order polynomial Omega_{m-1}^{(g-1)}, m the even ladder degree.
EquivalenceReport equivalence_suite(Real gamma, int n);

// ---------------------------------------------------------------------------
// Near-Legendre integrals.

struct IntegralCheck {
  std::string name;
  Real computed = 0;
  Real predicted = 0;
  Real rel_dev = 0;  // absolute deviation when predicted == 0
  bool pass = false;
};

struct EpsilonIntegralReport {
  int n = 0;
  Real epsilon = 0;
  std::vector<IntegralCheck> checks;
  bool pass() const;
};

/// integral of P_n (1-x^2)^eps against -4 eps/(n(n+1)), plus the B_1(0,n-4)
/// and B_1(1,n-5) limits for even n >= 6. Pass threshold: relative deviation
/// <= 50|eps|.
EpsilonIntegralReport epsilon_integral_check(int n, Real epsilon);

// ---------------------------------------------------------------------------
// Legendre infinite eigenvalues.

struct LegendreMode {
  int l = 0;              // (1-x^2)^2 G_l^(5/2)
  Parity parity = Parity::none;
  Real residual = 0;      // relative residual in the tau equations at mu = 0
};

struct LegendreReport {
  int n = 0;
  std::size_t near_infinite = 0;
  std::vector<LegendreMode> modes;
};

LegendreReport legendre_infinite_check(int n);

}  // namespace gegtau
