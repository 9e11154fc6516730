#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "gegtau/eig.hpp"
#include "gegtau/scaled_real.hpp"
#include "gegtau/types.hpp"

namespace gegtau {

/// Which closed form produced a characteristic polynomial.
enum class CharPolyFormula {
  even_shifted,        // coefficients D^{2k} G_{n-1}^{(g-1)}(1), g > 1/2
  even_integrated,     // same polynomial built at index g, any g
  odd_shifted_two,     // D^{2k} - D^{2k+1} of G_n^{(g-2)}(1), g > 3/2
  odd_shifted_one,     // index g-1 form, g > 1/2
  odd_integrated,      // index g form, any g
  second_order_value,  // Omega: D^{2k} G_n(1)
  second_order_slope,  // Theta: D^{2k+1} G_n(1)
  stability,           // polynomial in z, not mu
};

std::string_view to_string(CharPolyFormula f);

/// Polynomial sum_k coeffs[k] v^k, v = mu = 1/lambda (or z for stability).
struct CharPoly {
  Parity parity = Parity::none;
  int n = 0;
  GegIndex gamma{0};
  std::vector<ScaledReal> coeffs;
  CharPolyFormula formula = CharPolyFormula::even_integrated;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// Coefficients divided by the largest magnitude.
  std::vector<Real> normalized() const;
};

/// Characteristic polynomial of the even modes of the tau method at even n.
/// Uses the index g-1 form for g > 1/2 and the integrated form otherwise.
CharPoly even_charpoly(GegIndex gamma, int n);

/// Odd modes at odd n. Index g-2 form for g > 3/2, g-1 form for
/// 1/2 < g <= 3/2, integrated form at index g for g <= 1/2.
CharPoly odd_charpoly(GegIndex gamma, int n);

/// Build with an explicitly chosen formula (for cross-checking branches).
/// Throws std::invalid_argument if the formula does not apply at gamma.
CharPoly charpoly_with(CharPolyFormula formula, GegIndex gamma, int n);

/// (Omega_n, Theta_n) for the second-order problem.
std::pair<CharPoly, CharPoly> second_order_pair(GegIndex gamma, int n);

/// p_n(z) = (G_{n-1}(1) - G_{n+1}(1)) / (2(n+g)) + sum_k z^k D^k G_n(1).
CharPoly stability_poly(GegIndex gamma, int n);

/// K = (n+2) / (2(n+g+1)(n+2g-1)).
Real stability_constant_k(GegIndex gamma, int n);

/// Roots of the polynomial in its own variable.
std::vector<PolyRoot> roots(const CharPoly& p);

}  // namespace gegtau
