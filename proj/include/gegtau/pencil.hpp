#pragma once

#include <cstddef>
#include <vector>

#include "gegtau/eig.hpp"
#include "gegtau/matrix.hpp"
#include "gegtau/method_config.hpp"
#include "gegtau/types.hpp"

namespace gegtau {

/// Generalized eigenproblem mu A a = B a (mu = 1/lambda). A carries the
/// fourth-order operator and the lambda-independent rows, B the second-order
/// operator and zeros on the lambda-independent rows.
struct Pencil {
  Matrix<Real> A;
  Matrix<Real> B;
  std::vector<std::size_t> bc_rows;   // lambda-independent rows (zero in B)
  std::vector<Parity> row_parity;
  std::vector<Parity> col_parity;

  std::size_t dim() const { return A.rows(); }
  /// Rows and columns of the given parity. Exact for every method because
  /// all operators and boundary rows preserve parity.
  Pencil restrict_to(Parity p) const;
};

/// Full coupled pencil in Gegenbauer coefficients at index gamma.
Pencil assemble(const MethodConfig& config);

/// One parity block; requires config.parity_split.
Pencil assemble(const MethodConfig& config, Parity part);

/// Standard form M = A'^{-1} B' after eliminating the lambda-independent rows
/// through an orthonormal null-space basis. Eigenvalues of M are mu.
struct ReducedProblem {
  Matrix<Real> M;
  /// Largest entry of the B rows after the row equilibration of A', before
  /// the null-space product cancels anything: the natural size of mu.
  Real mu_scale = 0;
};

ReducedProblem reduce_to_standard(const Pencil& p);

/// lambda = 1/mu, or an infinite flag when |mu| < infinite_rel * max(max|mu|, reference).
/// The reference keeps the test meaningful when every mu of a block is zero.
struct MappedEigenvalue {
  std::complex<Real> mu;
  bool infinite = false;
  std::complex<Real> lambda;
};

std::vector<MappedEigenvalue> map_to_lambda(std::span<const std::complex<Real>> mu, Real infinite_rel,
                                            Real reference = 0);

/// Eigenvalues of a pencil, tagged with the given parity, residuals attached.
std::vector<Eigenvalue> pencil_eigenvalues(const Pencil& p, Parity tag, const Tolerances& tol = {});

/// Assemble, reduce, solve and classify. With parity_split the two parity
/// blocks are solved separately and merged; `only` restricts to one block.
SpectrumReport compute_spectrum(const MethodConfig& config, const Tolerances& tol = {},
                                Parity only = Parity::none);

/// The Legendre basis matrices with trial functions (1-x^2)^2 G_l^(5/2) and
/// test functions P_k, k, l = 0..n-4:
///   A(k,l) = integral P_k D^4 phi_l,  B(k,l) = integral P_k D^2 phi_l.
struct LegendreMatrices {
  Matrix<Real> A;
  Matrix<Real> B;
};

LegendreMatrices legendre_reduced_matrices(int n);

/// (l+1)(l+2)(l+3)(l+4)/15.
Real legendre_c(int l);

/// Legendre coefficients of (1-x^2)^2 G_l^(5/2), length l+5.
std::vector<Real> legendre_bubble_coeffs(int l);

}  // namespace gegtau
