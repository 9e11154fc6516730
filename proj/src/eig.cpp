#include "gegtau/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gegtau {

ConvergenceError::ConvergenceError(std::vector<std::complex<double>> partial, std::size_t unconverged)
    : NumericalError("QR iteration did not converge: " + std::to_string(unconverged) +
                     " eigenvalue(s) unresolved"),
      partial_(std::move(partial)),
      unconverged_(unconverged) {}

template <typename T>
std::vector<T> balance(Matrix<T>& a) {
  if (!a.square()) throw std::invalid_argument("balance: matrix must be square");
  const std::size_t n = a.rows();
  const T radix = 2;
  const T sqrdx = radix * radix;
  std::vector<T> scale(n, T{1});
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      T r = 0;
      T c = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::fabs(a(j, i));
        r += std::fabs(a(i, j));
      }
      if (c == 0 || r == 0) continue;
      T g = r / radix;
      T f = 1;
      const T s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < T(0.95) * s) {
        done = false;
        g = 1 / f;
        scale[i] *= f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
  return scale;
}

template <typename T>
void hessenberg(Matrix<T>& a) {
  if (!a.square()) throw std::invalid_argument("hessenberg: matrix must be square");
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<T> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    T alpha = 0;
    for (std::size_t i = k + 1; i < n; ++i) alpha = std::hypot(alpha, a(i, k));
    if (alpha == 0) continue;
    const T x0 = a(k + 1, k);
    const T beta = x0 >= 0 ? -alpha : alpha;
    std::fill(v.begin(), v.end(), T{});
    v[k + 1] = x0 - beta;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    T vtv = 0;
    for (std::size_t i = k + 1; i < n; ++i) vtv += v[i] * v[i];
    if (vtv == 0) continue;
    const T tau = 2 / vtv;
    // H <- P H
    for (std::size_t j = k; j < n; ++j) {
      T s = 0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
      s *= tau;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
    }
    // H <- H P
    for (std::size_t i = 0; i < n; ++i) {
      T s = 0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= tau;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
    }
    a(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0;
  }
}

namespace {

template <typename T>
T sign_of(T a, T b) {
  return b >= 0 ? std::fabs(a) : -std::fabs(a);
}

// Francis double-shift QR on an upper Hessenberg matrix. Indices inside are
// 1-based to keep the deflation bookkeeping readable.
template <typename T>
std::vector<std::complex<T>> hqr(Matrix<T>& h) {
  const int n = static_cast<int>(h.rows());
  auto a = [&](int i, int j) -> T& { return h(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); };
  std::vector<T> wr(static_cast<std::size_t>(n) + 1, 0), wi(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> found(static_cast<std::size_t>(n) + 1, false);
  const T eps = std::numeric_limits<T>::epsilon();
  const int max_total = 30 * std::max(n, 1);

  T anorm = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::fabs(a(i, j));
  }

  int nn = n;
  T t = 0;
  int total = 0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        const T s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
        const T ref = s == 0 ? anorm : s;
        if (std::fabs(a(l, l - 1)) <= eps * ref) {
          a(l, l - 1) = 0;
          break;
        }
      }
      const T x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0;
        found[nn] = true;
        --nn;
      } else {
        const T y = a(nn - 1, nn - 1);
        const T w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          const T p = T(0.5) * (y - x);
          const T q = p * p + w;
          const T z = std::sqrt(std::fabs(q));
          const T xs = x + t;
          if (q >= 0) {
            const T zz = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = xs + zz;
            if (zz != 0) wr[nn] = xs - w / zz;
            wi[nn - 1] = wi[nn] = 0;
          } else {
            wr[nn - 1] = wr[nn] = xs + p;
            wi[nn - 1] = -(wi[nn] = z);
          }
          found[nn] = found[nn - 1] = true;
          nn -= 2;
        } else {
          if (total >= max_total) {
            std::vector<std::complex<double>> partial;
            for (int i = 1; i <= n; ++i) {
              if (found[i]) partial.emplace_back(static_cast<double>(wr[i]), static_cast<double>(wi[i]));
            }
            throw ConvergenceError(std::move(partial), static_cast<std::size_t>(nn));
          }
          T xx = x;
          T yy = y;
          T ww = w;
          if (its == 10 || its == 20) {
            t += xx;
            for (int i = 1; i <= nn; ++i) a(i, i) -= xx;
            const T s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
            yy = xx = T(0.75) * s;
            ww = T(-0.4375) * s * s;
          }
          ++its;
          ++total;
          int m = 0;
          T p = 0, q = 0, r = 0, z = 0;
          for (m = nn - 2; m >= l; --m) {
            z = a(m, m);
            r = xx - z;
            const T s0 = yy - z;
            p = (r * s0 - ww) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s0;
            r = a(m + 2, m + 1);
            const T s = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const T u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            const T v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) + std::fabs(z) + std::fabs(a(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m; i <= nn - 2; ++i) {
            a(i + 2, i) = 0;
            if (i != m) a(i + 2, i - 1) = 0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              xx = std::fabs(p) + std::fabs(q) + std::fabs(r);
              if (xx != 0) {
                p /= xx;
                q /= xx;
                r /= xx;
              }
            }
            const T s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s != 0) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * xx;
              }
              p += s;
              xx = p / s;
              yy = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                T pp = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                  pp += r * a(k + 2, j);
                  a(k + 2, j) -= pp * z;
                }
                a(k + 1, j) -= pp * yy;
                a(k, j) -= pp * xx;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                T pp = xx * a(i, k) + yy * a(i, k + 1);
                if (k != nn - 1) {
                  pp += z * a(i, k + 2);
                  a(i, k + 2) -= pp * r;
                }
                a(i, k + 1) -= pp * q;
                a(i, k) -= pp;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }

  std::vector<std::complex<T>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

template <typename T>
using Cx = std::complex<T>;

// Solve (LU) x = b in place for a complex matrix factored with partial pivoting.
template <typename T>
struct ComplexLU {
  std::size_t n;
  std::vector<Cx<T>> lu;
  std::vector<std::size_t> piv;

  ComplexLU(const Matrix<T>& m, Cx<T> shift, T tiny) : n(m.rows()), lu(n * n), piv(n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) lu[i * n + j] = Cx<T>(m(i, j), 0);
      lu[i * n + i] -= shift;
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      T best = std::abs(lu[k * n + k]);
      for (std::size_t i = k + 1; i < n; ++i) {
        const T v = std::abs(lu[i * n + k]);
        if (v > best) {
          best = v;
          p = i;
        }
      }
      piv[k] = p;
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[p * n + j]);
      }
      if (std::abs(lu[k * n + k]) < tiny) lu[k * n + k] = Cx<T>(tiny, 0);
      const Cx<T> d = lu[k * n + k];
      for (std::size_t i = k + 1; i < n; ++i) {
        const Cx<T> f = lu[i * n + k] / d;
        lu[i * n + k] = f;
        if (f == Cx<T>{}) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= f * lu[k * n + j];
      }
    }
  }

  void solve(std::vector<Cx<T>>& b) const {
    for (std::size_t k = 0; k < n; ++k) {
      if (piv[k] != k) std::swap(b[k], b[piv[k]]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) b[i] -= lu[i * n + j] * b[j];
    }
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) b[i] -= lu[i * n + j] * b[j];
      b[i] /= lu[i * n + i];
    }
  }
};

template <typename T>
T vec_norm(const std::vector<Cx<T>>& v) {
  T s = 0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

template <typename T>
std::vector<std::complex<T>> dense_eigs(Matrix<T> a) {
  if (!a.square()) throw std::invalid_argument("dense_eigs: matrix must be square");
  for (T v : a.data()) {
    if (!std::isfinite(v)) throw NumericalError("dense_eigs: matrix has non-finite entries");
  }
  if (a.rows() == 0) return {};
  balance(a);
  hessenberg(a);
  return hqr(a);
}

template <typename T>
T eigenpair_residual(const Matrix<T>& m, std::complex<T> lambda) {
  if (!m.square()) throw std::invalid_argument("eigenpair_residual: matrix must be square");
  const std::size_t n = m.rows();
  if (n == 0) return 0;
  const T mnorm = m.norm();
  if (mnorm == 0) return std::abs(lambda);
  const T eps = std::numeric_limits<T>::epsilon();
  const ComplexLU<T> lu(m, lambda, eps * mnorm);

  std::vector<Cx<T>> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Cx<T>(1 + T(i % 7) / 13, T(i % 3) / 17);
  for (int it = 0; it < 3; ++it) {
    lu.solve(v);
    const T nv = vec_norm(v);
    if (!(nv > 0) || !std::isfinite(nv)) break;
    for (auto& z : v) z /= nv;
  }
  const T nv = vec_norm(v);
  if (!(nv > 0) || !std::isfinite(nv)) return std::numeric_limits<T>::infinity();
  for (auto& z : v) z /= nv;

  T res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Cx<T> s = -lambda * v[i];
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
    res += std::norm(s);
  }
  return std::sqrt(res) / mnorm;
}

template <typename T>
Matrix<T> companion(std::span<const T> coeffs) {
  if (coeffs.size() < 2 || coeffs.back() == 0) {
    throw std::invalid_argument("companion: need degree >= 1 with nonzero leading coefficient");
  }
  const std::size_t d = coeffs.size() - 1;
  Matrix<T> c(d, d);
  const T lead = coeffs.back();
  for (std::size_t j = 0; j < d; ++j) c(0, j) = -coeffs[d - 1 - j] / lead;
  for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1;
  return c;
}

std::vector<PolyRoot> poly_roots(std::span<const Real> coeffs) {
  std::size_t hi = coeffs.size();
  while (hi > 0 && coeffs[hi - 1] == 0) --hi;
  if (hi == 0) throw std::invalid_argument("poly_roots: zero polynomial");
  for (std::size_t k = 0; k < hi; ++k) {
    if (!std::isfinite(coeffs[k])) throw NumericalError("poly_roots: non-finite coefficient");
  }
  std::size_t lo = 0;
  while (coeffs[lo] == 0) ++lo;

  std::vector<PolyRoot> roots;
  for (std::size_t k = 0; k < lo; ++k) roots.push_back(PolyRoot{{0, 0}, 0, true});
  const std::size_t d = hi - 1 - lo;
  if (d == 0) return roots;

  const std::span<const Real> c = coeffs.subspan(lo, d + 1);
  Real cmax = 0;
  for (Real v : c) cmax = std::max(cmax, std::fabs(v));

  // Substitute z = s w with s = |c_0/c_d|^(1/d) so the extreme coefficients
  // of the scaled polynomial have equal magnitude.
  const Real log_s = (std::log(std::fabs(c[0])) - std::log(std::fabs(c[d]))) / static_cast<Real>(d);
  const Real s = std::exp(log_s);
  std::vector<Real> q(d + 1);
  Real log_max = -std::numeric_limits<Real>::infinity();
  std::vector<Real> logs(d + 1, -std::numeric_limits<Real>::infinity());
  for (std::size_t k = 0; k <= d; ++k) {
    if (c[k] != 0) {
      logs[k] = std::log(std::fabs(c[k])) + static_cast<Real>(k) * log_s;
      log_max = std::max(log_max, logs[k]);
    }
  }
  for (std::size_t k = 0; k <= d; ++k) {
    q[k] = c[k] == 0 ? 0 : std::copysign(std::exp(logs[k] - log_max), c[k]);
  }

  const auto w = dense_eigs(companion<Real>(q));

  auto eval = [&](std::complex<Real> z, std::complex<Real>& dp) {
    std::complex<Real> p = 0;
    dp = 0;
    for (std::size_t k = d + 1; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k] / cmax;
    }
    return p;
  };

  for (const auto& wk : w) {
    std::complex<Real> z = wk * s;
    if (wk.imag() == 0) z = {z.real(), 0};
    std::complex<Real> dp;
    std::complex<Real> p = eval(z, dp);
    // A few guarded Newton steps on the unscaled polynomial.
    for (int it = 0; it < 3; ++it) {
      if (dp == std::complex<Real>{}) break;
      std::complex<Real> zn = z - p / dp;
      if (z.imag() == 0) zn = {zn.real(), 0};
      std::complex<Real> dpn;
      const std::complex<Real> pn = eval(zn, dpn);
      if (!(std::abs(pn) < std::abs(p))) break;
      z = zn;
      p = pn;
      dp = dpn;
    }
    const Real r = std::abs(z);
    const Real growth = r > 1 ? std::pow(r, static_cast<Real>(d)) : Real(1);
    const Real res = std::abs(p) / growth;
    roots.push_back(PolyRoot{z, res, res <= root_residual_tol});
  }
  // Keep conjugate pairs exact after polishing.
  for (std::size_t i = lo; i + 1 < roots.size(); ++i) {
    auto& a = roots[i].value;
    auto& b = roots[i + 1].value;
    if (a.imag() != 0 && b.imag() != 0 && (a.imag() > 0) != (b.imag() > 0) &&
        std::abs(a - std::conj(b)) <= 1e-6L * std::abs(a)) {
      const std::complex<Real> avg = (a + std::conj(b)) / Real(2);
      a = avg;
      b = std::conj(avg);
      ++i;
    }
  }
  return roots;
}

template std::vector<double> balance<double>(Matrix<double>&);
template std::vector<long double> balance<long double>(Matrix<long double>&);
template void hessenberg<double>(Matrix<double>&);
template void hessenberg<long double>(Matrix<long double>&);
template std::vector<std::complex<double>> dense_eigs<double>(Matrix<double>);
template std::vector<std::complex<long double>> dense_eigs<long double>(Matrix<long double>);
template double eigenpair_residual<double>(const Matrix<double>&, std::complex<double>);
template long double eigenpair_residual<long double>(const Matrix<long double>&, std::complex<long double>);
template Matrix<double> companion<double>(std::span<const double>);
template Matrix<long double> companion<long double>(std::span<const long double>);

// ---------------------------------------------------------------------------

std::string_view to_string(EigenClass c) {
  switch (c) {
    case EigenClass::real_negative: return "real_negative";
    case EigenClass::spurious_positive: return "spurious_positive";
    case EigenClass::complex_pair: return "complex_pair";
    case EigenClass::near_infinite: return "near_infinite";
  }
  return "unknown";
}

ClassCounts SpectrumReport::counts() const {
  ClassCounts c;
  for (const auto& e : entries) {
    switch (e.cls) {
      case EigenClass::real_negative: ++c.real_negative; break;
      case EigenClass::spurious_positive: ++c.spurious_positive; break;
      case EigenClass::complex_pair: ++c.complex_pair; break;
      case EigenClass::near_infinite: ++c.near_infinite; break;
    }
  }
  return c;
}

std::optional<std::complex<double>> SpectrumReport::extreme() const {
  std::optional<std::complex<double>> best;
  for (const auto& e : entries) {
    if (e.cls == EigenClass::near_infinite) continue;
    if (!best || std::abs(e.lambda) > std::abs(*best)) best = e.lambda;
  }
  return best;
}

Real median_magnitude(std::span<const Eigenvalue> eigs) {
  std::vector<Real> mags;
  for (const auto& e : eigs) {
    if (!e.infinite) mags.push_back(std::abs(e.lambda));
  }
  if (mags.empty()) return 1;
  std::sort(mags.begin(), mags.end());
  const std::size_t mid = mags.size() / 2;
  const Real med = mags.size() % 2 ? mags[mid] : (mags[mid - 1] + mags[mid]) / 2;
  return med > 0 ? med : 1;
}

SpectrumReport classify(std::span<const Eigenvalue> eigs, Real scale, const Tolerances& tol) {
  if (!(scale > 0) || !std::isfinite(scale)) throw std::invalid_argument("classify: scale must be positive and finite");
  SpectrumReport rep;
  rep.tolerances = tol;
  for (const auto& e : eigs) {
    SpectrumEntry out;
    out.parity = e.parity;
    out.residual = static_cast<double>(e.residual);
    if (e.infinite) {
      out.cls = EigenClass::near_infinite;
      out.lambda = {0, 0};
    } else {
      const Real re = e.lambda.real();
      const Real im = e.lambda.imag();
      const Real bound = std::max(static_cast<Real>(tol.real_rel) * std::abs(e.lambda),
                                  static_cast<Real>(tol.real_abs_scale) * scale);
      if (std::fabs(im) <= bound) {
        out.lambda = {static_cast<double>(re), 0.0};
        out.cls = re > 0 ? EigenClass::spurious_positive : EigenClass::real_negative;
      } else {
        out.lambda = {static_cast<double>(re), static_cast<double>(im)};
        out.cls = EigenClass::complex_pair;
      }
    }
    rep.entries.push_back(out);
  }

  // Order: finite entries by real part descending (least negative first),
  // then imaginary part; infinite entries last.
  std::stable_sort(rep.entries.begin(), rep.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    const bool ai = a.cls == EigenClass::near_infinite;
    const bool bi = b.cls == EigenClass::near_infinite;
    if (ai != bi) return bi;
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
    return a.lambda.imag() > b.lambda.imag();
  });

  std::vector<const SpectrumEntry*> reals;
  for (const auto& e : rep.entries) {
    if (e.cls == EigenClass::real_negative || e.cls == EigenClass::spurious_positive) reals.push_back(&e);
  }
  for (std::size_t i = 0; i + 1 < reals.size(); ++i) {
    const double a = reals[i]->lambda.real();
    const double b = reals[i + 1]->lambda.real();
    const double ref = std::max(std::fabs(a), std::fabs(b));
    if (std::fabs(a - b) <= tol.distinct_rel * ref) rep.distinct = false;
  }

  const bool tagged = !reals.empty() && std::all_of(reals.begin(), reals.end(),
                                                    [](const SpectrumEntry* e) { return e->parity != Parity::none; });
  if (tagged) {
    bool alt = true;
    for (std::size_t i = 0; i + 1 < reals.size(); ++i) {
      if (reals[i]->parity == reals[i + 1]->parity) alt = false;
    }
    rep.interlaced = alt;
  }
  return rep;
}

SpectrumReport classify(std::span<const std::complex<Real>> eigs, Real scale, const Tolerances& tol) {
  std::vector<Eigenvalue> tagged;
  tagged.reserve(eigs.size());
  for (const auto& z : eigs) tagged.push_back(Eigenvalue{z});
  return classify(tagged, scale, tol);
}

}  // namespace gegtau
