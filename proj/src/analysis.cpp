#include "gegtau/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gegtau/gegenbauer.hpp"
#include "gegtau/pencil.hpp"
#include "gegtau/quadrature.hpp"

namespace gegtau {

// ---------------------------------------------------------------------------

std::vector<Real> ExactSpectrum::merged() const {
  std::vector<Real> all = even;
  all.insert(all.end(), odd.begin(), odd.end());
  std::sort(all.begin(), all.end(), std::greater<>());
  return all;
}

Real tan_root(int k) {
  if (k < 1) throw std::invalid_argument("tan_root: k must be >= 1");
  const Real pi = std::numbers::pi_v<Real>;
  auto h = [](Real q) { return std::sin(q) - q * std::cos(q); };
  Real lo = k * pi + Real(1e-9);
  Real hi = (2 * k + 1) * pi / 2 - Real(1e-9);
  const bool lo_neg = h(lo) < 0;
  for (int it = 0; it < 400; ++it) {
    const Real mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    const Real hm = h(mid);
    if (hm == 0) return mid;
    if ((hm < 0) == lo_neg) lo = mid; else hi = mid;
  }
  return (lo + hi) / 2;
}

ExactSpectrum exact_spectrum(int count) {
  if (count < 1) throw std::invalid_argument("exact_spectrum: count must be >= 1");
  const Real pi = std::numbers::pi_v<Real>;
  ExactSpectrum s;
  for (int k = 1; k <= count; ++k) {
    s.even.push_back(-Real(k) * k * pi * pi);
    const Real q = tan_root(k);
    s.q.push_back(q);
    s.odd.push_back(-q * q);
  }
  return s;
}

// ---------------------------------------------------------------------------

PerturbationPrediction perturbation_mu1(int n, Parity parity, Real epsilon) {
  PerturbationPrediction p;
  p.n = n;
  p.parity = parity;
  p.epsilon = epsilon;
  int m = 0;
  if (parity == Parity::even) {
    m = n % 2 == 0 ? n : n - 1;
    if (m < 6) throw std::invalid_argument("perturbation_mu1: even mode needs an even ladder degree >= 6");
    p.mu1 = Real(-4) / (Real(m - 2) * (m - 2) * (m - 1) * (m - 1));
  } else if (parity == Parity::odd) {
    m = n % 2 == 0 ? n : n + 1;
    if (m < 6) throw std::invalid_argument("perturbation_mu1: odd mode needs degree >= 6 after adjustment");
    p.mu1 = Real(-4) / (Real(m - 4) * (m - 4) * (m - 1) * (m - 1));
  } else {
    throw std::invalid_argument("perturbation_mu1: parity must be even or odd");
  }
  p.predicted_lambda = epsilon == 0 ? std::numeric_limits<Real>::infinity() : 1 / (epsilon * p.mu1);
  return p;
}

// ---------------------------------------------------------------------------

namespace {

struct Trimmed {
  std::vector<Real> c;  // normalized, top zeros removed
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
};

Trimmed trim(const CharPoly& p) {
  Trimmed t{p.normalized()};
  while (!t.c.empty() && t.c.back() == 0) t.c.pop_back();
  return t;
}

std::vector<std::complex<Real>> root_values(const std::vector<Real>& c) {
  std::vector<std::complex<Real>> out;
  for (const auto& r : poly_roots(c)) out.push_back(r.value);
  return out;
}

bool is_real(std::complex<Real> z, Real scale) {
  const Tolerances tol;
  return std::fabs(z.imag()) <= std::max(static_cast<Real>(tol.real_rel) * std::abs(z),
                                         static_cast<Real>(tol.real_abs_scale) * scale);
}

std::string fmt(Real v) {
  std::ostringstream os;
  os.precision(10);
  os << static_cast<double>(v);
  return os.str();
}

// Checks clause (a) for one root set; returns an explanation on failure.
std::string clause_a(const std::vector<std::complex<Real>>& roots, const char* name) {
  std::vector<Real> mags;
  for (const auto& z : roots) mags.push_back(std::abs(z));
  Real scale = 1;
  if (!mags.empty()) {
    std::sort(mags.begin(), mags.end());
    scale = std::max(mags[mags.size() / 2], Real(std::numeric_limits<Real>::min()));
  }
  std::vector<Real> re;
  for (const auto& z : roots) {
    if (!is_real(z, scale)) return std::string(name) + " has a complex root " + fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i";
    if (!(z.real() < 0)) return std::string(name) + " has a non-negative root " + fmt(z.real());
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  const double rel = Tolerances{}.distinct_rel;
  for (std::size_t i = 0; i + 1 < re.size(); ++i) {
    if (std::fabs(re[i + 1] - re[i]) <= rel * std::max(std::fabs(re[i]), std::fabs(re[i + 1]))) {
      return std::string(name) + " has a repeated root " + fmt(re[i]);
    }
  }
  return {};
}

}  // namespace

PositivePairResult positive_pair_check(const CharPoly& p, const CharPoly& q) {
  PositivePairResult res;
  const Trimmed tp = trim(p);
  const Trimmed tq = trim(q);
  if (tp.zero() || tq.zero()) {
    res.clause = "(a)";
    res.detail = tp.zero() ? "P is identically zero" : "Q is identically zero";
    return res;
  }
  if (std::abs(tp.degree() - tq.degree()) > 1) {
    throw std::invalid_argument("positive_pair_check: degrees differ by more than one");
  }
  res.roots_p = root_values(tp.c);
  res.roots_q = root_values(tq.c);

  for (auto [roots, name] : {std::pair{&res.roots_p, "P"}, std::pair{&res.roots_q, "Q"}}) {
    const std::string why = clause_a(*roots, name);
    if (!why.empty()) {
      res.clause = "(a)";
      res.detail = why;
      return res;
    }
  }

  // (b): merged ascending sequence alternates and ends with a root of P.
  std::vector<std::pair<Real, int>> merged;
  for (const auto& z : res.roots_p) merged.emplace_back(z.real(), 0);
  for (const auto& z : res.roots_q) merged.emplace_back(z.real(), 1);
  std::sort(merged.begin(), merged.end());
  bool alternates = tp.degree() >= tq.degree();
  for (std::size_t i = 0; alternates && i + 1 < merged.size(); ++i) {
    if (merged[i].second == merged[i + 1].second || merged[i].first == merged[i + 1].first) alternates = false;
  }
  if (alternates && !merged.empty() && merged.back().second != 0) alternates = false;
  if (!alternates) {
    res.clause = "(b)";
    res.detail = "roots do not interlace with the root nearest zero belonging to P";
    return res;
  }

  if ((tp.c.back() > 0) != (tq.c.back() > 0)) {
    res.clause = "(c)";
    res.detail = "leading coefficients differ in sign";
    return res;
  }
  res.ok = true;
  return res;
}

StabilityResult hermite_biehler_stability(const CharPoly& p) {
  CharPoly om = p;
  CharPoly th = p;
  om.coeffs.clear();
  th.coeffs.clear();
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) (k % 2 == 0 ? om : th).coeffs.push_back(p.coeffs[k]);
  if (th.coeffs.empty()) th.coeffs.push_back(ScaledReal::zero());

  StabilityResult r;
  r.pair = positive_pair_check(om, th);
  r.hermite_biehler = r.pair.ok;

  const Trimmed tp = trim(p);
  if (tp.zero()) throw std::invalid_argument("hermite_biehler_stability: zero polynomial");
  r.roots = root_values(tp.c);
  r.direct = std::all_of(r.roots.begin(), r.roots.end(), [](const auto& z) { return z.real() < 0; });
  return r;
}

// ---------------------------------------------------------------------------

SpectrumMatch match_spectra(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  SpectrumMatch m;
  m.counts_match = a.size() == b.size();
  auto key = [](const std::complex<double>& x, const std::complex<double>& y) {
    return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
  };
  std::sort(a.begin(), a.end(), key);
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == b.size()) break;
    used[best] = true;
    const double ref = std::max({std::abs(x), std::abs(b[best]), std::numeric_limits<double>::min()});
    const double dev = best_d / ref;
    if (dev >= m.max_rel_dev) {
      m.max_rel_dev = dev;
      m.worst = std::pair{x, b[best]};
    }
  }
  return m;
}

namespace {

std::vector<std::complex<double>> finite(const SpectrumReport& r) {
  std::vector<std::complex<double>> out;
  for (const auto& e : r.entries) {
    if (e.cls != EigenClass::near_infinite) out.push_back(e.lambda);
  }
  return out;
}

EquivalenceCheck compare(std::string name, const SpectrumReport& lhs, const SpectrumReport& rhs,
                         std::size_t extra_infinite_lhs = 0) {
  EquivalenceCheck c;
  c.name = std::move(name);
  const SpectrumMatch m = match_spectra(finite(lhs), finite(rhs));
  c.max_rel_dev = m.max_rel_dev;
  const std::size_t inf_l = lhs.counts().near_infinite;
  const std::size_t inf_r = rhs.counts().near_infinite;
  const bool inf_ok = inf_l == inf_r + extra_infinite_lhs;
  c.pass = m.counts_match && inf_ok && m.max_rel_dev <= equivalence_tol;
  std::ostringstream os;
  os.precision(17);
  if (!m.counts_match) os << "finite counts differ (" << finite(lhs).size() << " vs " << finite(rhs).size() << "); ";
  if (!inf_ok) os << "infinite counts " << inf_l << " vs " << inf_r << " (+" << extra_infinite_lhs << " expected); ";
  if (m.worst) os << "worst pair " << m.worst->first << " / " << m.worst->second;
  c.detail = os.str();
  return c;
}

}  // namespace

bool EquivalenceReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const EquivalenceCheck& c) { return !c.applicable || c.pass; });
}

EquivalenceReport equivalence_suite(Real gamma, int n) {
  if (n < 8) throw std::invalid_argument("equivalence_suite needs n >= 8");
  (void)GegIndex(gamma);
  EquivalenceReport rep;
  rep.gamma = gamma;
  rep.n = n;
  auto spec = [n](MethodKind k, Real g) { return compute_spectrum(MethodConfig::make(k, g, n)); };

  const SpectrumReport gal = spec(MethodKind::galerkin, gamma);
  rep.checks.push_back(compare("galerkin(g) = tau(g+2)", gal, spec(MethodKind::tau, gamma + 2)));
  rep.checks.push_back(
      compare("inviscid(g) = tau(g+1)", spec(MethodKind::inviscid_galerkin, gamma), spec(MethodKind::tau, gamma + 1)));
  rep.checks.push_back(compare("modified(g) = galerkin(g)", spec(MethodKind::modified_tau, gamma), gal, 2));

  EquivalenceCheck iv;
  iv.name = "even tau(g) = second-order Omega(g-1)";
  if (gamma > Real(0.5)) {
    const SpectrumReport even = compute_spectrum(MethodConfig::make(MethodKind::tau, gamma, n), {}, Parity::even);
    const int m = n % 2 == 0 ? n : n - 1;
    const CharPoly om = second_order_pair(GegIndex(gamma - 1), m - 1).first;
    std::vector<std::complex<double>> lam;
    for (const auto& r : roots(om)) {
      if (r.value != std::complex<Real>{}) {
        const std::complex<Real> l = Real(1) / r.value;
        lam.emplace_back(static_cast<double>(l.real()), static_cast<double>(l.imag()));
      }
    }
    const SpectrumMatch mm = match_spectra(finite(even), lam);
    iv.max_rel_dev = mm.max_rel_dev;
    iv.pass = mm.counts_match && mm.max_rel_dev <= equivalence_tol;
    std::ostringstream os;
    os.precision(17);
    if (!mm.counts_match) os << "counts differ (" << finite(even).size() << " vs " << lam.size() << "); ";
    if (mm.worst) os << "worst pair " << mm.worst->first << " / " << mm.worst->second;
    iv.detail = os.str();
  } else {
    iv.applicable = false;
    iv.detail = "requires g > 1/2";
  }
  rep.checks.push_back(iv);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// integral over [-1, 1] of f(x) (1-x^2)^eps for f of parity `par`,
// computed as (1 +- 1) times the half-interval integral.
Real symmetric_integral(const std::function<Real(Real)>& f, Parity par, Real eps) {
  if (par == Parity::odd) return 0;
  const Real half = integrate([&](Real x) { return f(x) * std::pow((1 - x) * (1 + x), eps); }, 0, 1);
  return 2 * half;
}

IntegralCheck make_check(std::string name, Real computed, Real predicted, Real eps) {
  IntegralCheck c{std::move(name), computed, predicted, 0, false};
  if (predicted != 0) {
    c.rel_dev = std::fabs(computed - predicted) / std::fabs(predicted);
    c.pass = c.rel_dev <= 50 * std::fabs(eps);
  } else {
    c.rel_dev = std::fabs(computed);
    c.pass = c.rel_dev <= Real(1e-14);
  }
  return c;
}

}  // namespace

bool EpsilonIntegralReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IntegralCheck& c) { return c.pass; });
}

EpsilonIntegralReport epsilon_integral_check(int n, Real epsilon) {
  if (n < 1) throw std::invalid_argument("epsilon_integral_check needs n >= 1");
  if (!(std::fabs(epsilon) <= Real(1e-3))) throw std::invalid_argument("epsilon_integral_check needs |eps| <= 1e-3");
  EpsilonIntegralReport rep;
  rep.n = n;
  rep.epsilon = epsilon;

  const Real kn = symmetric_integral([n](Real x) { return legendre_p(n, x); }, parity_of(n), epsilon);
  const Real kpred = n % 2 == 0 ? -4 * epsilon / (Real(n) * (n + 1)) : 0;
  rep.checks.push_back(make_check("integral P_n (1-x^2)^eps", kn, kpred, epsilon));

  if (n % 2 == 0 && n >= 6 && epsilon != 0) {
    const Real c4 = legendre_c(n - 4);
    const Real i0 = symmetric_integral([n](Real x) { return legendre_p(n - 2, x); }, Parity::even, epsilon);
    rep.checks.push_back(make_check("B1(0,n-4)", c4 * i0 / epsilon, -4 * c4 / (Real(n - 2) * (n - 1)), epsilon));
    const Real c5 = legendre_c(n - 5);
    const Real i1 = symmetric_integral([n](Real x) { return x * legendre_p(n - 3, x); }, Parity::even, epsilon);
    rep.checks.push_back(make_check("B1(1,n-5)", c5 * i1 / epsilon, -4 * c5 / (Real(n - 4) * (n - 1)), epsilon));
  }
  return rep;
}

// ---------------------------------------------------------------------------

LegendreReport legendre_infinite_check(int n) {
  if (n < 6) throw std::invalid_argument("legendre_infinite_check needs n >= 6");
  LegendreReport rep;
  rep.n = n;
  const MethodConfig cfg = MethodConfig::make(MethodKind::tau, Real(0.5), n);
  rep.near_infinite = compute_spectrum(cfg).counts().near_infinite;

  const Pencil p = assemble(cfg);
  std::vector<bool> is_bc(p.dim(), false);
  for (std::size_t r : p.bc_rows) is_bc[r] = true;
  for (int l : {n - 4, n - 5}) {
    std::vector<Real> a = legendre_bubble_coeffs(l);
    a.resize(p.dim(), 0);
    // mu = 0: B a = 0 on the residual rows and the boundary rows of A vanish.
    Real worst = 0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
      const auto row = is_bc[i] ? p.A.row(i) : p.B.row(i);
      Real s = 0;
      Real mag = 0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        s += row[j] * a[j];
        mag += std::fabs(row[j] * a[j]);
      }
      if (mag > 0) worst = std::max(worst, std::fabs(s) / mag);
    }
    rep.modes.push_back(LegendreMode{l, parity_of(l), worst});
  }
  return rep;
}

}  // namespace gegtau
