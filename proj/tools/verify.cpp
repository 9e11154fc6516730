#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gegtau/analysis.hpp"
#include "gegtau/charpoly.hpp"
#include "gegtau/parallel.hpp"
#include "gegtau/pencil.hpp"

namespace gegtau::cli {
namespace {

std::vector<int> iota_n(int a, int b) {
  std::vector<int> v(static_cast<std::size_t>(b - a + 1));
  std::iota(v.begin(), v.end(), a);
  return v;
}

struct Point {
  double gamma;
  int n;
};

std::vector<Point> cartesian(const SuiteGrid& g) {
  std::vector<Point> pts;
  for (double gm : g.gammas) {
    for (int n : g.ns) pts.push_back({gm, n});
  }
  return pts;
}

struct PointOutcome {
  bool pass = true;
  std::string failure;
  Json detail;
};

std::string where(double g, int n) {
  std::ostringstream os;
  os.precision(17);
  os << "gamma=" << g << ", n=" << n;
  return os.str();
}

Json counts_json(const ClassCounts& c) {
  return Json{{"real_negative", c.real_negative},
              {"spurious_positive", c.spurious_positive},
              {"complex_pair", c.complex_pair},
              {"near_infinite", c.near_infinite}};
}

SuiteResult collect(const std::vector<PointOutcome>& outs) {
  SuiteResult r;
  r.points = outs.size();
  for (const auto& o : outs) {
    r.detail.push_back(o.detail);
    if (!o.pass && r.pass) {
      r.pass = false;
      r.first_failure = o.failure;
    }
  }
  return r;
}

PointOutcome theorem_point(const Point& p, const Tolerances& tol) {
  const SpectrumReport s = compute_spectrum(MethodConfig::make(MethodKind::tau, p.gamma, p.n), tol);
  const ClassCounts c = s.counts();
  PointOutcome o;
  std::ostringstream why;
  if (c.spurious_positive) why << c.spurious_positive << " spurious positive; ";
  if (c.complex_pair) why << c.complex_pair << " complex; ";
  if (c.near_infinite) why << c.near_infinite << " infinite; ";
  if (!s.distinct) why << "not distinct; ";
  if (!s.interlaced.value_or(false)) why << "not interlaced; ";
  o.pass = why.str().empty();
  if (!o.pass) o.failure = where(p.gamma, p.n) + ": " + why.str();
  o.detail = Json{{"gamma", p.gamma}, {"n", p.n}, {"pass", o.pass}, {"counts", counts_json(c)},
                  {"distinct", s.distinct}, {"interlaced", s.interlaced.value_or(false)}};
  return o;
}

PointOutcome equivalence_point(const Point& p) {
  const EquivalenceReport rep = equivalence_suite(p.gamma, p.n);
  PointOutcome o;
  o.pass = rep.pass();
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(Json{{"name", c.name}, {"applicable", c.applicable}, {"pass", c.pass},
                          {"max_rel_dev", c.max_rel_dev}, {"detail", c.detail}});
    if (c.applicable && !c.pass && o.failure.empty()) o.failure = where(p.gamma, p.n) + ": " + c.name + " " + c.detail;
  }
  o.detail = Json{{"gamma", p.gamma}, {"n", p.n}, {"pass", o.pass}, {"checks", checks}};
  return o;
}

PointOutcome perturbation_point(const Point& p, const Tolerances& tol) {
  const double eps = p.gamma - 0.5;
  const SpectrumReport s = compute_spectrum(MethodConfig::make(MethodKind::tau, p.gamma, p.n), tol);
  PointOutcome o;
  Json modes = Json::array();
  for (Parity par : {Parity::even, Parity::odd}) {
    const PerturbationPrediction pred = perturbation_mu1(p.n, par, eps);
    std::complex<double> ext{0, 0};
    for (const auto& e : s.entries) {
      if (e.parity == par && e.cls != EigenClass::near_infinite && std::abs(e.lambda) > std::abs(ext)) ext = e.lambda;
    }
    const double want = static_cast<double>(pred.predicted_lambda);
    const double rel = std::abs(ext - want) / std::fabs(want);
    const bool sign_ok = ext.imag() == 0 && (ext.real() > 0) == (eps < 0);
    const bool pass = rel <= 0.05 && sign_ok;
    if (!pass && o.pass) {
      o.failure = where(p.gamma, p.n) + ": " + std::string(to_string(par)) + " extreme eigenvalue " +
                  std::to_string(ext.real()) + " vs predicted " + std::to_string(want);
    }
    o.pass = o.pass && pass;
    modes.push_back(Json{{"parity", std::string(to_string(par))}, {"mu1", static_cast<double>(pred.mu1)},
                         {"predicted", want}, {"extreme_re", ext.real()}, {"extreme_im", ext.imag()},
                         {"rel_dev", rel}, {"sign_ok", sign_ok}, {"pass", pass}});
  }
  o.detail = Json{{"gamma", p.gamma}, {"epsilon", eps}, {"n", p.n}, {"pass", o.pass}, {"modes", modes}};
  return o;
}

Json pair_json(const std::string& what, const PositivePairResult& r) {
  return Json{{"pair", what}, {"ok", r.ok}, {"clause", r.clause}, {"detail", r.detail}};
}

PointOutcome positive_pair_point(const Point& p) {
  const GegIndex g(p.gamma);
  PointOutcome o;
  Json items = Json::array();
  auto note = [&](bool ok, const std::string& msg) {
    if (!ok && o.pass) o.failure = where(p.gamma, p.n) + ": " + msg;
    o.pass = o.pass && ok;
  };
  if (p.gamma <= 1.5) {
    const auto [om, th] = second_order_pair(g, p.n);
    const auto r = positive_pair_check(om, th);
    items.push_back(pair_json("Omega_n, Theta_n", r));
    note(r.ok, "(Omega, Theta) not a positive pair " + r.clause + " " + r.detail);
    if (p.n >= 2) {
      const CharPoly om1 = second_order_pair(g.shifted(1), p.n - 1).first;
      const auto r2 = positive_pair_check(om, om1);
      items.push_back(pair_json("Omega_n, Omega_{n-1}^{(g+1)}", r2));
      note(r2.ok, "(Omega_n, Omega_{n-1}^(g+1)) not a positive pair " + r2.clause + " " + r2.detail);
    }
  }
  if (p.n >= 2) {
    const StabilityResult st = hermite_biehler_stability(stability_poly(g, p.n));
    items.push_back(Json{{"pair", "stability polynomial"}, {"hermite_biehler", st.hermite_biehler},
                         {"direct", st.direct}, {"agree", st.agree()}});
    note(st.agree(), "Hermite-Biehler verdict disagrees with root signs");
    if (p.gamma <= 0.5) note(st.stable(), "stability polynomial not stable");
  }
  o.detail = Json{{"gamma", p.gamma}, {"n", p.n}, {"pass", o.pass}, {"checks", items}};
  return o;
}

PointOutcome appendix_b_point(const Point& p) {
  const double eps = p.gamma - 0.5;
  const EpsilonIntegralReport rep = epsilon_integral_check(p.n, eps);
  PointOutcome o;
  o.pass = rep.pass();
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(Json{{"name", c.name}, {"computed", static_cast<double>(c.computed)},
                          {"predicted", static_cast<double>(c.predicted)}, {"rel_dev", static_cast<double>(c.rel_dev)},
                          {"pass", c.pass}});
    if (!c.pass && o.failure.empty()) o.failure = where(p.gamma, p.n) + ": " + c.name;
  }
  o.detail = Json{{"n", p.n}, {"epsilon", eps}, {"pass", o.pass}, {"checks", checks}};
  return o;
}

PointOutcome exact_point(const Point& p, const Tolerances& tol) {
  constexpr int count = 3;
  constexpr double gate = 1e-8;
  const SpectrumReport s = compute_spectrum(MethodConfig::make(MethodKind::tau, p.gamma, p.n), tol);
  const ExactSpectrum ex = exact_spectrum(count);
  PointOutcome o;
  Json rows = Json::array();
  for (Parity par : {Parity::even, Parity::odd}) {
    std::vector<double> got;
    for (const auto& e : s.entries) {
      if (e.parity == par && e.cls == EigenClass::real_negative) got.push_back(e.lambda.real());
    }
    std::sort(got.begin(), got.end(), [](double a, double b) { return std::fabs(a) < std::fabs(b); });
    const auto& want = par == Parity::even ? ex.even : ex.odd;
    for (int k = 0; k < count; ++k) {
      const double w = static_cast<double>(want[k]);
      const bool have = static_cast<std::size_t>(k) < got.size();
      const double rel = have ? std::fabs(got[k] - w) / std::fabs(w) : INFINITY;
      const bool pass = rel <= gate;
      rows.push_back(Json{{"parity", std::string(to_string(par))}, {"k", k + 1}, {"exact", w},
                          {"computed", have ? Json(got[k]) : Json(nullptr)}, {"rel_err", have ? Json(rel) : Json(nullptr)},
                          {"pass", pass}});
      if (!pass && o.pass) o.failure = where(p.gamma, p.n) + ": " + std::string(to_string(par)) + " k=" + std::to_string(k + 1);
      o.pass = o.pass && pass;
    }
  }
  o.detail = Json{{"gamma", p.gamma}, {"n", p.n}, {"pass", o.pass}, {"eigenvalues", rows}};
  return o;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorem-range", "equivalence",  "perturbation",
                                              "positive-pair", "appendixB", "exact-convergence"};
  return names;
}

SuiteGrid resolved_grid(std::string_view name, const SuiteGrid& grid) {
  SuiteGrid g = grid;
  auto def = [](std::vector<double>& v, std::vector<double> d) {
    if (v.empty()) v = std::move(d);
  };
  auto defn = [](std::vector<int>& v, std::vector<int> d) {
    if (v.empty()) v = std::move(d);
  };
  if (name == "theorem-range") {
    def(g.gammas, {0.6, 1, 1.5, 2, 2.5, 3, 3.5});
    defn(g.ns, iota_n(8, 48));
  } else if (name == "equivalence") {
    def(g.gammas, {0, 0.5, 1.25, 2});
    defn(g.ns, iota_n(8, 24));
  } else if (name == "perturbation") {
    def(g.gammas, {0.501, 0.499});
    defn(g.ns, {12, 16});
  } else if (name == "positive-pair") {
    def(g.gammas, {-0.4, -0.25, 0, 0.5, 1, 1.5});
    defn(g.ns, iota_n(1, 20));
  } else if (name == "appendixB") {
    def(g.gammas, {0.5001, 0.50001});
    defn(g.ns, {6, 7, 10});
  } else if (name == "exact-convergence") {
    def(g.gammas, {2});
    defn(g.ns, {48});
  } else {
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  }
  return g;
}

SuiteResult run_suite(std::string_view name, const SuiteGrid& grid, unsigned jobs, const Tolerances& tol) {
  const SuiteGrid g = resolved_grid(name, grid);
  const std::vector<Point> pts = cartesian(g);
  std::vector<PointOutcome> outs;
  if (name == "theorem-range") {
    outs = parallel_map(pts, [&](const Point& p) { return theorem_point(p, tol); }, jobs);
  } else if (name == "equivalence") {
    outs = parallel_map(pts, [](const Point& p) { return equivalence_point(p); }, jobs);
  } else if (name == "perturbation") {
    outs = parallel_map(pts, [&](const Point& p) { return perturbation_point(p, tol); }, jobs);
  } else if (name == "positive-pair") {
    outs = parallel_map(pts, [](const Point& p) { return positive_pair_point(p); }, jobs);
  } else if (name == "appendixB") {
    outs = parallel_map(pts, [](const Point& p) { return appendix_b_point(p); }, jobs);
  } else {
    outs = parallel_map(pts, [&](const Point& p) { return exact_point(p, tol); }, jobs);
  }
  return collect(outs);
}

}  // namespace gegtau::cli
