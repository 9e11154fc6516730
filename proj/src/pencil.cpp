#include "gegtau/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gegtau/gegenbauer.hpp"
#include "gegtau/linalg.hpp"

namespace gegtau {

std::string_view to_string(MethodKind k) {
  switch (k) {
    case MethodKind::tau: return "tau";
    case MethodKind::inviscid_galerkin: return "inviscid";
    case MethodKind::galerkin: return "galerkin";
    case MethodKind::modified_tau: return "modified";
    case MethodKind::collocation: return "collocation";
  }
  return "unknown";
}

MethodKind method_from_string(std::string_view s) {
  if (s == "tau") return MethodKind::tau;
  if (s == "inviscid" || s == "inviscid_galerkin") return MethodKind::inviscid_galerkin;
  if (s == "galerkin") return MethodKind::galerkin;
  if (s == "modified" || s == "modified_tau") return MethodKind::modified_tau;
  if (s == "collocation") return MethodKind::collocation;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

namespace {

using Vec = std::vector<Real>;

Vec unit(std::size_t len, std::size_t j) {
  Vec e(len, 0);
  e[j] = 1;
  return e;
}

Vec padded(Vec v, std::size_t len) {
  v.resize(std::max(len, v.size()), 0);
  return v;
}

// (D^2 - alpha^2) applied in coefficient space; output has the input length.
Vec helmholtz(GegIndex g, const Vec& a, Real alpha2) {
  Vec d2 = diff_coeffs(g, diff_coeffs(g, a));
  d2 = padded(std::move(d2), a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d2[k] -= alpha2 * a[k];
  return d2;
}

// Coefficients of (1-x^2) p.
Vec one_minus_x2(GegIndex g, const Vec& a) {
  const Vec xa = mul_x_coeffs(g, a);
  Vec x2a = mul_x_coeffs(g, xa);
  for (std::size_t k = 0; k < a.size(); ++k) x2a[k] = a[k] - x2a[k];
  for (std::size_t k = a.size(); k < x2a.size(); ++k) x2a[k] = -x2a[k];
  return x2a;
}

struct Columns {
  std::vector<Vec> second;  // (D^2 - a^2) G_j
  std::vector<Vec> fourth;  // (D^2 - a^2)^2 G_j
};

Columns operator_columns(GegIndex g, int n, Real alpha) {
  const auto len = static_cast<std::size_t>(n) + 1;
  const Real a2 = alpha * alpha;
  Columns c;
  for (std::size_t j = 0; j < len; ++j) {
    Vec l1 = helmholtz(g, unit(len, j), a2);
    Vec l2 = helmholtz(g, l1, a2);
    c.second.push_back(std::move(l1));
    c.fourth.push_back(std::move(l2));
  }
  return c;
}

// Appends the four parity-pure clamped-end rows on the unknowns
// u_0..u_n starting at column `offset` of a pencil with `cols` columns.
void append_bc_rows(Pencil& p, GegIndex g, int n, std::size_t first_row, std::size_t offset) {
  std::size_t r = first_row;
  for (int order = 0; order <= 1; ++order) {
    for (Parity par : {Parity::even, Parity::odd}) {
      for (int k = 0; k <= n; ++k) {
        if (parity_of(k) != par) continue;
        p.A(r, offset + static_cast<std::size_t>(k)) = deriv_at_one(g, k, order).to_real();
      }
      p.row_parity[r] = par;
      p.bc_rows.push_back(r);
      ++r;
    }
  }
}

Pencil blank(std::size_t rows, std::size_t cols) {
  Pencil p;
  p.A = Matrix<Real>(rows, cols);
  p.B = Matrix<Real>(rows, cols);
  p.row_parity.assign(rows, Parity::none);
  p.col_parity.assign(cols, Parity::none);
  return p;
}

Pencil assemble_tau_like(const MethodConfig& cfg) {
  const GegIndex g(cfg.gamma);
  const int n = cfg.n;
  const auto len = static_cast<std::size_t>(n) + 1;
  const std::size_t ntau = len - 4;
  const Columns cols = operator_columns(g, n, cfg.alpha);
  Pencil p = blank(len, len);
  for (std::size_t j = 0; j < len; ++j) p.col_parity[j] = parity_of(static_cast<int>(j));

  if (cfg.kind == MethodKind::tau) {
    for (std::size_t k = 0; k < ntau; ++k) {
      for (std::size_t j = 0; j < len; ++j) {
        p.A(k, j) = cols.fourth[j][k];
        p.B(k, j) = cols.second[j][k];
      }
      p.row_parity[k] = parity_of(static_cast<int>(k));
    }
  } else {
    // Weighted residual against (1-x^2)^s G_i, s = 2 (Galerkin) or 1
    // (inviscid), evaluated through orthogonality: integral W G_k G_m = h_k delta.
    const int s = cfg.kind == MethodKind::galerkin ? 2 : 1;
    Vec h(len);
    for (std::size_t k = 0; k < len; ++k) h[k] = norm_h(g, static_cast<int>(k)).to_real();
    for (std::size_t i = 0; i < ntau; ++i) {
      Vec t = unit(i + 1, i);
      for (int r = 0; r < s; ++r) t = one_minus_x2(g, t);
      for (std::size_t j = 0; j < len; ++j) {
        Real sa = 0;
        Real sb = 0;
        for (std::size_t k = 0; k < t.size() && k < len; ++k) {
          if (t[k] == 0) continue;
          sa += t[k] * h[k] * cols.fourth[j][k];
          sb += t[k] * h[k] * cols.second[j][k];
        }
        p.A(i, j) = sa;
        p.B(i, j) = sb;
      }
      p.row_parity[i] = parity_of(static_cast<int>(i));
    }
  }
  append_bc_rows(p, g, n, ntau, 0);
  return p;
}

Pencil assemble_collocation(const MethodConfig& cfg) {
  const GegIndex g(cfg.gamma);
  const int n = cfg.n;
  const auto len = static_cast<std::size_t>(n) + 1;
  const Columns cols = operator_columns(g, n, cfg.alpha);
  const Vec nodes = lobatto_interior_nodes(g, n);
  Pencil p = blank(len, len);
  for (std::size_t j = 0; j < len; ++j) p.col_parity[j] = parity_of(static_cast<int>(j));

  // Symmetric and antisymmetric combinations (R(x)+-R(-x))/2 at x >= 0: the
  // even row only sees even columns and the odd row only odd ones.
  std::size_t r = 0;
  for (Parity par : {Parity::even, Parity::odd}) {
    for (Real x : nodes) {
      if (x < 0 || (x == 0 && par == Parity::odd)) continue;
      for (std::size_t j = 0; j < len; ++j) {
        if (p.col_parity[j] != par) continue;
        p.A(r, j) = GegCoeffs{g, cols.fourth[j]}(x);
        p.B(r, j) = GegCoeffs{g, cols.second[j]}(x);
      }
      p.row_parity[r] = par;
      ++r;
    }
  }
  if (r != len - 4) throw NumericalError("collocation: node count does not match the number of residual rows");
  append_bc_rows(p, g, n, r, 0);
  return p;
}

Pencil assemble_modified(const MethodConfig& cfg) {
  const GegIndex g(cfg.gamma);
  const int n = cfg.n;
  const auto len = static_cast<std::size_t>(n) + 1;
  const std::size_t nid = len - 2;  // k = 0..n-2
  const Real a2 = cfg.alpha * cfg.alpha;
  Pencil p = blank(2 * len, 2 * len);
  for (std::size_t j = 0; j < len; ++j) {
    p.col_parity[j] = parity_of(static_cast<int>(j));
    p.col_parity[len + j] = parity_of(static_cast<int>(j));
  }
  // Unknowns: u_0..u_n, then v_0..v_n.
  // Rows 0..n-2: [(D^2-a^2) u]_k - v_k = 0 (lambda-independent).
  // Rows n-1..2n-3: [(D^2-a^2) v]_k = lambda v_k.
  for (std::size_t j = 0; j < len; ++j) {
    const Vec l1 = helmholtz(g, unit(len, j), a2);
    for (std::size_t k = 0; k < nid; ++k) {
      p.A(k, j) = l1[k];
      p.A(nid + k, len + j) = l1[k];
    }
  }
  for (std::size_t k = 0; k < nid; ++k) {
    p.A(k, len + k) = -1;
    p.B(nid + k, len + k) = 1;
    p.row_parity[k] = parity_of(static_cast<int>(k));
    p.row_parity[nid + k] = parity_of(static_cast<int>(k));
    p.bc_rows.push_back(k);
  }
  append_bc_rows(p, g, n, 2 * nid, 0);
  return p;
}

void validate(const MethodConfig& cfg) {
  if (!std::isfinite(cfg.alpha) || cfg.alpha < 0) throw std::invalid_argument("alpha must be finite and >= 0");
  if (!std::isfinite(cfg.gamma)) throw std::invalid_argument("gamma must be finite");
  (void)GegIndex(cfg.gamma);
  const int min_n = cfg.kind == MethodKind::collocation ? 5 : 4;
  if (cfg.n < min_n) {
    throw std::invalid_argument(std::string(to_string(cfg.kind)) + " needs n >= " + std::to_string(min_n));
  }
}

}  // namespace

Pencil Pencil::restrict_to(Parity par) const {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < row_parity.size(); ++i) {
    if (row_parity[i] == par) rows.push_back(i);
  }
  for (std::size_t j = 0; j < col_parity.size(); ++j) {
    if (col_parity[j] == par) cols.push_back(j);
  }
  if (rows.size() != cols.size()) {
    throw std::invalid_argument("parity block is not square (" + std::to_string(rows.size()) + " rows, " +
                                std::to_string(cols.size()) + " columns)");
  }
  Pencil out;
  out.A = A.select(rows, cols);
  out.B = B.select(rows, cols);
  out.row_parity.assign(rows.size(), par);
  out.col_parity.assign(cols.size(), par);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::find(bc_rows.begin(), bc_rows.end(), rows[i]) != bc_rows.end()) out.bc_rows.push_back(i);
  }
  return out;
}

Pencil assemble(const MethodConfig& cfg) {
  validate(cfg);
  switch (cfg.kind) {
    case MethodKind::tau:
    case MethodKind::galerkin:
    case MethodKind::inviscid_galerkin:
      return assemble_tau_like(cfg);
    case MethodKind::modified_tau:
      return assemble_modified(cfg);
    case MethodKind::collocation:
      return assemble_collocation(cfg);
  }
  throw std::invalid_argument("unknown method kind");
}

Pencil assemble(const MethodConfig& cfg, Parity part) {
  if (!cfg.parity_split) throw std::invalid_argument("parity block requested but parity_split is off");
  if (part == Parity::none) throw std::invalid_argument("parity block must be even or odd");
  return assemble(cfg).restrict_to(part);
}

ReducedProblem reduce_to_standard(const Pencil& p) {
  const std::size_t n = p.dim();
  if (!p.A.square() || p.B.rows() != n || p.B.cols() != n) throw std::invalid_argument("pencil must be square");
  std::vector<bool> is_bc(n, false);
  for (std::size_t r : p.bc_rows) {
    if (!p.B.row_is_zero(r)) throw std::invalid_argument("lambda-independent row has nonzero B entries");
    is_bc[r] = true;
  }
  const std::size_t nc = p.bc_rows.size();
  if (nc > n) throw std::invalid_argument("too many constraint rows");

  Matrix<Real> c(nc, n);
  for (std::size_t i = 0; i < nc; ++i) {
    const auto src = p.A.row(p.bc_rows[i]);
    Real mx = 0;
    for (Real v : src) mx = std::max(mx, std::fabs(v));
    if (mx == 0) throw NumericalError("boundary row is identically zero");
    for (std::size_t j = 0; j < n; ++j) c(i, j) = src[j] / mx;
  }
  const Matrix<Real> z = nc > 0 ? null_basis(c) : Matrix<Real>::identity(n);

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_bc[i]) rest.push_back(i);
  }
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  const Matrix<Real> b_rest = p.B.select(rest, all);
  Matrix<Real> ar = p.A.select(rest, all) * z;
  Matrix<Real> br = b_rest * z;
  Real mu_scale = 0;
  // Row equilibration leaves the eigenvalues unchanged and keeps the
  // singularity test meaningful across rows of very different scale.
  for (std::size_t i = 0; i < ar.rows(); ++i) {
    Real mx = 0;
    for (Real v : ar.row(i)) mx = std::max(mx, std::fabs(v));
    if (mx == 0) throw NumericalError("reduced operator is singular (zero row)");
    for (auto& v : ar.row(i)) v /= mx;
    for (auto& v : br.row(i)) v /= mx;
    for (Real v : b_rest.row(i)) mu_scale = std::max(mu_scale, std::fabs(v) / mx);
  }
  return ReducedProblem{solve(ar, br), mu_scale};
}

std::vector<MappedEigenvalue> map_to_lambda(std::span<const std::complex<Real>> mu, Real infinite_rel,
                                            Real reference) {
  Real mmax = reference;
  for (const auto& m : mu) mmax = std::max(mmax, std::abs(m));
  std::vector<MappedEigenvalue> out;
  out.reserve(mu.size());
  for (const auto& m : mu) {
    MappedEigenvalue e;
    e.mu = m;
    e.infinite = m == std::complex<Real>{} || std::abs(m) < infinite_rel * mmax;
    e.lambda = e.infinite ? std::complex<Real>{} : Real(1) / m;
    out.push_back(e);
  }
  return out;
}

std::vector<Eigenvalue> pencil_eigenvalues(const Pencil& p, Parity tag, const Tolerances& tol) {
  const ReducedProblem red = reduce_to_standard(p);
  const auto mu = dense_eigs(red.M);
  const auto mapped = map_to_lambda(mu, static_cast<Real>(tol.infinite_rel), red.mu_scale);
  std::vector<Eigenvalue> out;
  out.reserve(mapped.size());
  for (const auto& m : mapped) {
    Eigenvalue e;
    e.lambda = m.lambda;
    e.infinite = m.infinite;
    e.parity = tag;
    e.residual = eigenpair_residual(red.M, m.mu);
    out.push_back(e);
  }
  return out;
}

SpectrumReport compute_spectrum(const MethodConfig& cfg, const Tolerances& tol, Parity only) {
  std::vector<Eigenvalue> eigs;
  if (cfg.parity_split) {
    const Pencil full = assemble(cfg);
    for (Parity par : {Parity::even, Parity::odd}) {
      if (only != Parity::none && only != par) continue;
      auto part = pencil_eigenvalues(full.restrict_to(par), par, tol);
      eigs.insert(eigs.end(), part.begin(), part.end());
    }
  } else {
    if (only != Parity::none) throw std::invalid_argument("parity selection requires parity_split");
    eigs = pencil_eigenvalues(assemble(cfg), Parity::none, tol);
  }
  SpectrumReport rep = classify(eigs, median_magnitude(eigs), tol);
  rep.config = cfg;
  return rep;
}

Real legendre_c(int l) {
  if (l < 0) throw std::invalid_argument("legendre_c: l must be >= 0");
  return static_cast<Real>(l + 1) * (l + 2) * (l + 3) * (l + 4) / 15;
}

std::vector<Real> legendre_bubble_coeffs(int l) {
  if (l < 0) throw std::invalid_argument("legendre_bubble_coeffs: l must be >= 0");
  const GegIndex leg(0.5L);
  // D^2 P_{l+2} = 15 G_l^(5/2) for l >= 1 and 3 G_0^(5/2) for l = 0.
  Vec a = diff_coeffs(leg, diff_coeffs(leg, unit(static_cast<std::size_t>(l) + 3, static_cast<std::size_t>(l) + 2)));
  const Real scale = l == 0 ? 3 : 15;
  for (auto& v : a) v /= scale;
  return one_minus_x2(leg, one_minus_x2(leg, a));
}

LegendreMatrices legendre_reduced_matrices(int n) {
  if (n < 6) throw std::invalid_argument("legendre_reduced_matrices needs n >= 6");
  const GegIndex leg(0.5L);
  const auto m = static_cast<std::size_t>(n) - 3;
  LegendreMatrices out{Matrix<Real>(m, m), Matrix<Real>(m, m)};
  for (std::size_t l = 0; l < m; ++l) {
    const Vec phi = legendre_bubble_coeffs(static_cast<int>(l));
    const Vec d2 = diff_coeffs(leg, diff_coeffs(leg, phi));
    const Vec d4 = diff_coeffs(leg, diff_coeffs(leg, d2));
    for (std::size_t k = 0; k < m; ++k) {
      const Real hk = Real(2) / static_cast<Real>(2 * k + 1);
      if (k < d4.size()) out.A(k, l) = hk * d4[k];
      if (k < d2.size()) out.B(k, l) = hk * d2[k];
    }
  }
  return out;
}

}  // namespace gegtau
