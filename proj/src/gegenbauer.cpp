#include "gegtau/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gegtau {
namespace {

void require_degree(int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": degree must be non-negative");
}

// Values G_0..G_n at x, filled by the recurrence.
void fill_values(Real g, Real x, std::span<Real> out) {
  const int n = static_cast<int>(out.size()) - 1;
  if (n < 0) return;
  out[0] = 1;
  if (n >= 1) out[1] = x;
  if (n >= 2) out[2] = (g + 1) * x * x - Real(0.5);
  for (int m = 2; m < n; ++m) {
    out[m + 1] = (2 * (m + g) * x * out[m] - (m - 1 + 2 * g) * out[m - 1]) / (m + 1);
  }
}

}  // namespace

ScaledReal value_at_one(GegIndex gamma, int n) {
  require_degree(n, "value_at_one");
  if (n <= 1) return ScaledReal(1);
  const Real g2 = 2 * gamma.value();
  ScaledReal v(1);
  for (int j = 1; j < n; ++j) v *= ScaledReal((g2 + j) / j);
  return v / ScaledReal(static_cast<Real>(n));
}

ScaledReal deriv_at_one(GegIndex gamma, int n, int k) {
  require_degree(n, "deriv_at_one");
  if (k < 0) throw std::invalid_argument("deriv_at_one: derivative order must be non-negative");
  if (k > n) return ScaledReal::zero();
  const Real g2 = 2 * gamma.value();
  ScaledReal v = value_at_one(gamma, n);
  // D^{j+1}G_n(1) / D^j G_n(1) = (2g+n+j)(n-j)/(2g+2j+1), all factors positive.
  for (int j = 0; j < k; ++j) {
    v *= ScaledReal((g2 + n + j) * static_cast<Real>(n - j) / (g2 + 2 * j + 1));
  }
  return v;
}

Real eval(GegIndex gamma, int n, Real x) {
  require_degree(n, "eval");
  if (std::fabs(x) > 1 + 64 * std::numeric_limits<Real>::epsilon()) {
    throw std::domain_error("eval: x must lie in [-1, 1]");
  }
  const Real g = gamma.value();
  if (n == 0) return 1;
  if (n == 1) return x;
  Real prev = x;
  Real cur = (g + 1) * x * x - Real(0.5);
  for (int m = 2; m < n; ++m) {
    const Real next = (2 * (m + g) * x * cur - (m - 1 + 2 * g) * prev) / (m + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

Real eval_derivative(GegIndex gamma, int n, int k, Real x) {
  require_degree(n, "eval_derivative");
  if (k < 0) throw std::invalid_argument("eval_derivative: derivative order must be non-negative");
  Real g = gamma.value();
  Real scale = 1;
  int m = n;
  for (int i = 0; i < k; ++i) {
    if (m >= 2) {
      scale *= 2 * (g + 1);
      g += 1;
      --m;
    } else if (m == 1) {
      // D G_1 = G_0 = 1; the index shift does not apply at the bottom.
      m = 0;
    } else {
      return 0;
    }
  }
  return scale * eval(GegIndex(g), m, x);
}

ScaledReal norm_h(GegIndex gamma, int n) {
  require_degree(n, "norm_h");
  const Real g = gamma.value();
  // h_0 = integral of the weight = sqrt(pi) Gamma(g+1/2) / Gamma(g+1).
  const ScaledReal h0(std::sqrt(std::numbers::pi_v<Real>) * std::exp(std::lgamma(g + Real(0.5)) - std::lgamma(g + 1)));
  if (n == 0) return h0;
  return h0 * value_at_one(gamma, n) / ScaledReal(2 * (n + g));
}

Real GegCoeffs::operator()(Real x) const {
  if (coeffs.empty()) return 0;
  std::vector<Real> vals(coeffs.size());
  fill_values(gamma.value(), x, vals);
  Real s = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * vals[k];
  return s;
}

std::vector<Real> diff_coeffs(GegIndex gamma, std::span<const Real> a) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n <= 0) return {};
  const Real g = gamma.value();
  // With c_k = a_{k+1} + a_{k+3} + ..., the derivative has
  // b_0 = c_0 (from D G_1 = G_0) and b_k = 2(k+g) c_k for k >= 1.
  std::vector<Real> c(static_cast<std::size_t>(n) + 2, 0);
  std::vector<Real> b(static_cast<std::size_t>(n), 0);
  for (int k = n - 1; k >= 0; --k) {
    c[k] = a[k + 1] + c[k + 2];
    b[k] = (k == 0) ? c[0] : 2 * (k + g) * c[k];
  }
  return b;
}

GegCoeffs diff_coeffs(const GegCoeffs& p) {
  return GegCoeffs{p.gamma, diff_coeffs(p.gamma, p.coeffs)};
}

std::vector<Real> mul_x_coeffs(GegIndex gamma, std::span<const Real> a) {
  if (a.empty()) return {};
  const Real g = gamma.value();
  std::vector<Real> out(a.size() + 1, 0);
  for (std::size_t kk = 0; kk < a.size(); ++kk) {
    const Real ak = a[kk];
    if (ak == 0) continue;
    const auto k = static_cast<Real>(kk);
    if (kk == 0) {
      out[1] += ak;
    } else if (kk == 1) {
      // x^2 = (G_2 + G_0/2) / (g+1)
      out[2] += ak / (g + 1);
      out[0] += ak / (2 * (g + 1));
    } else {
      out[kk + 1] += ak * (k + 1) / (2 * (k + g));
      out[kk - 1] += ak * (k - 1 + 2 * g) / (2 * (k + g));
    }
  }
  return out;
}

std::vector<Real> lobatto_interior_nodes(GegIndex gamma, int n) {
  if (n < 5) throw std::invalid_argument("lobatto_interior_nodes: requires n >= 5");
  const GegIndex g1 = gamma.shifted(1);
  const int m = n - 3;
  const int npos = m / 2;
  const Real fscale = value_at_one(g1, m).to_real();
  const Real eps = std::numeric_limits<Real>::epsilon();

  auto f = [&](Real x) { return eval(g1, m, x); };
  auto df = [&](Real x) { return eval_derivative(g1, m, 1, x); };

  // Newton with deflation against roots already found (and their mirrors),
  // seeded at the Chebyshev extrema cos(j pi/(n-2)).
  std::vector<Real> pos;
  bool newton_ok = true;
  for (int j = 1; j <= npos && newton_ok; ++j) {
    Real x = std::cos(j * std::numbers::pi_v<Real> / (n - 2));
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const Real fx = f(x);
      Real defl = 0;
      for (Real r : pos) defl += 1 / (x - r) + 1 / (x + r);
      if (m % 2 == 1) defl += 1 / x;
      const Real step = fx / (df(x) - fx * defl);
      x -= step;
      if (!(x > 0 && x < 1)) break;
      if (std::fabs(step) <= 4 * eps * x || std::fabs(f(x)) <= Real(1e-14) * fscale) {
        converged = true;
        break;
      }
    }
    if (!converged) newton_ok = false;
    for (Real r : pos) {
      if (std::fabs(r - x) <= 1e-10L) newton_ok = false;
    }
    if (newton_ok) pos.push_back(x);
  }

  if (!newton_ok) {
    // Bisection fallback on sign changes of a fine angular grid.
    pos.clear();
    const int samples = 64 * (m + 1);
    const Real half_pi = std::numbers::pi_v<Real> / 2;
    Real prev_x = 1;
    Real prev_f = f(prev_x);
    for (int s = 1; s < samples; ++s) {
      const Real x = std::cos(half_pi * s / samples);
      const Real fx = f(x);
      if ((fx < 0) != (prev_f < 0) && fx != 0) {
        Real lo = x;
        Real hi = prev_x;
        const bool lo_neg = f(lo) < 0;
        for (int it = 0; it < 200 && hi - lo > 2 * eps; ++it) {
          const Real mid = (lo + hi) / 2;
          if ((f(mid) < 0) == lo_neg) lo = mid; else hi = mid;
        }
        pos.push_back((lo + hi) / 2);
      }
      prev_x = x;
      prev_f = fx;
    }
    if (static_cast<int>(pos.size()) != npos) {
      throw NumericalError("lobatto_interior_nodes: failed to isolate all zeros");
    }
  }

  std::vector<Real> nodes;
  nodes.reserve(static_cast<std::size_t>(m));
  for (Real r : pos) {
    nodes.push_back(r);
    nodes.push_back(-r);
  }
  if (m % 2 == 1) nodes.push_back(0);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace gegtau
