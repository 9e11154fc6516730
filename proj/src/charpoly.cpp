#include "gegtau/charpoly.hpp"

#include <stdexcept>
#include <string>

#include "gegtau/gegenbauer.hpp"

namespace gegtau {
namespace {

ScaledReal d1(GegIndex g, int n, int k) { return deriv_at_one(g, n, k); }
ScaledReal v1(GegIndex g, int n) { return value_at_one(g, n); }

// (G_a(1) - G_b(1)) / (2 (m + g)), the value at 1 of the antiderivative of
// G_m that vanishes at 0 by parity.
ScaledReal integrated(GegIndex g, int a, int b, int m) {
  return (v1(g, a) - v1(g, b)) / ScaledReal(2 * (m + g.value()));
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

CharPoly make(Parity parity, int n, GegIndex g, CharPolyFormula f, std::vector<ScaledReal> c) {
  return CharPoly{parity, n, g, std::move(c), f};
}

CharPoly build_even(CharPolyFormula f, GegIndex g, int n) {
  require(n >= 4 && n % 2 == 0, "even characteristic polynomial needs even n >= 4");
  const int top = (n - 2) / 2;
  std::vector<ScaledReal> c(static_cast<std::size_t>(top) + 1);
  if (f == CharPolyFormula::even_shifted) {
    require(g.value() > Real(0.5), "index g-1 form needs g > 1/2");
    const GegIndex gm = g.shifted(-1);
    for (int k = 0; k <= top; ++k) c[k] = d1(gm, n - 1, 2 * k);
  } else {
    c[0] = integrated(g, n - 1, n - 3, n - 2);
    for (int k = 1; k <= top; ++k) c[k] = d1(g, n - 2, 2 * k - 1);
  }
  return make(Parity::even, n, g, f, std::move(c));
}

CharPoly build_odd(CharPolyFormula f, GegIndex g, int n) {
  require(n >= 5 && n % 2 == 1, "odd characteristic polynomial needs odd n >= 5");
  // The mu^{(n-1)/2} coefficient cancels identically; the degree is (n-3)/2.
  const int top = (n - 3) / 2;
  std::vector<ScaledReal> c(static_cast<std::size_t>(top) + 1);
  switch (f) {
    case CharPolyFormula::odd_shifted_two: {
      require(g.value() > Real(1.5), "index g-2 form needs g > 3/2");
      const GegIndex gm = g.shifted(-2);
      for (int k = 0; k <= top; ++k) c[k] = d1(gm, n, 2 * k) - d1(gm, n, 2 * k + 1);
      break;
    }
    case CharPolyFormula::odd_shifted_one: {
      require(g.value() > Real(0.5), "index g-1 form needs g > 1/2");
      const GegIndex gm = g.shifted(-1);
      c[0] = integrated(gm, n, n - 2, n - 1) - v1(gm, n - 1);
      for (int k = 1; k <= top; ++k) c[k] = d1(gm, n - 1, 2 * k - 1) - d1(gm, n - 1, 2 * k);
      break;
    }
    case CharPolyFormula::odd_integrated: {
      const Real gv = g.value();
      const ScaledReal f1 = integrated(g, n - 1, n - 3, n - 2);
      const ScaledReal f2 = (integrated(g, n, n - 2, n - 1) - integrated(g, n - 2, n - 4, n - 3)) /
                            ScaledReal(2 * (n - 2 + gv));
      c[0] = f2 - f1;
      for (int k = 1; k <= top; ++k) c[k] = d1(g, n - 2, 2 * k - 2) - d1(g, n - 2, 2 * k - 1);
      break;
    }
    default:
      throw std::invalid_argument("not an odd-mode formula: " + std::string(to_string(f)));
  }
  return make(Parity::odd, n, g, f, std::move(c));
}

}  // namespace

std::string_view to_string(CharPolyFormula f) {
  switch (f) {
    case CharPolyFormula::even_shifted: return "even_shifted";
    case CharPolyFormula::even_integrated: return "even_integrated";
    case CharPolyFormula::odd_shifted_two: return "odd_shifted_two";
    case CharPolyFormula::odd_shifted_one: return "odd_shifted_one";
    case CharPolyFormula::odd_integrated: return "odd_integrated";
    case CharPolyFormula::second_order_value: return "second_order_value";
    case CharPolyFormula::second_order_slope: return "second_order_slope";
    case CharPolyFormula::stability: return "stability";
  }
  return "unknown";
}

std::vector<Real> CharPoly::normalized() const {
  if (coeffs.empty()) return {};
  const ScaledReal* big = &coeffs.front();
  for (const auto& c : coeffs) {
    if (ScaledReal::compare_magnitude(c, *big) > 0) big = &c;
  }
  std::vector<Real> out;
  out.reserve(coeffs.size());
  if (big->is_zero()) {
    out.assign(coeffs.size(), 0);
    return out;
  }
  const ScaledReal scale = big->abs();
  for (const auto& c : coeffs) out.push_back((c / scale).to_real());
  return out;
}

CharPoly charpoly_with(CharPolyFormula formula, GegIndex gamma, int n) {
  switch (formula) {
    case CharPolyFormula::even_shifted:
    case CharPolyFormula::even_integrated:
      return build_even(formula, gamma, n);
    case CharPolyFormula::odd_shifted_two:
    case CharPolyFormula::odd_shifted_one:
    case CharPolyFormula::odd_integrated:
      return build_odd(formula, gamma, n);
    default:
      throw std::invalid_argument("charpoly_with: not a tau-mode formula");
  }
}

CharPoly even_charpoly(GegIndex gamma, int n) {
  const auto f = gamma.value() > Real(0.5) ? CharPolyFormula::even_shifted : CharPolyFormula::even_integrated;
  return build_even(f, gamma, n);
}

CharPoly odd_charpoly(GegIndex gamma, int n) {
  const Real g = gamma.value();
  CharPolyFormula f = CharPolyFormula::odd_integrated;
  if (g > Real(1.5)) {
    f = CharPolyFormula::odd_shifted_two;
  } else if (g > Real(0.5)) {
    f = CharPolyFormula::odd_shifted_one;
  }
  return build_odd(f, gamma, n);
}

std::pair<CharPoly, CharPoly> second_order_pair(GegIndex gamma, int n) {
  require(n >= 1, "second_order_pair needs n >= 1");
  std::vector<ScaledReal> om;
  std::vector<ScaledReal> th;
  for (int k = 0; 2 * k <= n; ++k) om.push_back(d1(gamma, n, 2 * k));
  for (int k = 0; 2 * k + 1 <= n; ++k) th.push_back(d1(gamma, n, 2 * k + 1));
  return {make(parity_of(n), n, gamma, CharPolyFormula::second_order_value, std::move(om)),
          make(parity_of(n), n, gamma, CharPolyFormula::second_order_slope, std::move(th))};
}

CharPoly stability_poly(GegIndex gamma, int n) {
  require(n >= 2, "stability_poly needs n >= 2");
  std::vector<ScaledReal> c(static_cast<std::size_t>(n) + 1);
  c[0] = integrated(gamma, n - 1, n + 1, n) + v1(gamma, n);
  for (int k = 1; k <= n; ++k) c[k] = d1(gamma, n, k);
  return make(Parity::none, n, gamma, CharPolyFormula::stability, std::move(c));
}

Real stability_constant_k(GegIndex gamma, int n) {
  require(n >= 2, "stability_constant_k needs n >= 2");
  const Real g = gamma.value();
  return (n + 2) / (2 * (n + g + 1) * (n + 2 * g - 1));
}

std::vector<PolyRoot> roots(const CharPoly& p) {
  const auto c = p.normalized();
  return poly_roots(c);
}

}  // namespace gegtau
