#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gegtau/matrix.hpp"
#include "gegtau/method_config.hpp"
#include "gegtau/types.hpp"

namespace gegtau {

/// QR iteration failed to converge; carries whatever eigenvalues deflated.
class ConvergenceError : public NumericalError {
public:
  ConvergenceError(std::vector<std::complex<double>> partial, std::size_t unconverged);
  const std::vector<std::complex<double>>& partial() const { return partial_; }
  std::size_t unconverged() const { return unconverged_; }

private:
  std::vector<std::complex<double>> partial_;
  std::size_t unconverged_;
};

/// Diagonal similarity (powers of two) equalizing row and column norms.
/// Returns the scaling factors.
template <typename T>
std::vector<T> balance(Matrix<T>& a);

/// Orthogonal (Householder) reduction to upper Hessenberg form.
template <typename T>
void hessenberg(Matrix<T>& a);

/// All eigenvalues of a real square matrix: balancing, Hessenberg reduction,
/// Francis double-shift QR with deflation. Complex eigenvalues come out in
/// exact conjugate pairs. Throws ConvergenceError after 30*dim iterations.
template <typename T>
std::vector<std::complex<T>> dense_eigs(Matrix<T> a);

/// ||M v - lambda v|| / ||M||_F for the unit vector v obtained by inverse
/// iteration at lambda.
template <typename T>
T eigenpair_residual(const Matrix<T>& m, std::complex<T> lambda);

/// Frobenius companion matrix of sum_k c_k z^k (ascending powers, c.back() != 0).
template <typename T>
Matrix<T> companion(std::span<const T> coeffs);

struct PolyRoot {
  std::complex<Real> value;
  Real residual = 0;          // |p(root)| / (max|c| * max(1,|root|)^deg)
  bool within_bound = true;   // residual <= root_residual_tol
};

inline constexpr Real root_residual_tol = 1e-8L;

/// Roots of sum_k c_k z^k (ascending powers). Exact trailing zero
/// coefficients at the low end produce exact zero roots. The constant
/// polynomial has no roots; the zero polynomial is rejected.
std::vector<PolyRoot> poly_roots(std::span<const Real> coeffs);

// ---------------------------------------------------------------------------
// Spectrum classification

enum class EigenClass { real_negative, spurious_positive, complex_pair, near_infinite };

std::string_view to_string(EigenClass c);

struct Tolerances {
  double real_rel = 1e-8;         // |Im| <= real_rel * |lambda| counts as real
  double real_abs_scale = 1e-10;  // ... or |Im| <= real_abs_scale * scale
  double distinct_rel = 1e-8;     // minimum relative gap between real eigenvalues
  double infinite_rel = 1e-12;    // |mu| < infinite_rel * max|mu| is lambda = infinity
};

/// One eigenvalue as delivered to classify.
struct Eigenvalue {
  std::complex<Real> lambda;
  Parity parity = Parity::none;
  bool infinite = false;  // flagged upstream (|mu| below the cutoff)
  Real residual = 0;
};

struct SpectrumEntry {
  std::complex<double> lambda;  // zero for near_infinite entries
  EigenClass cls = EigenClass::real_negative;
  Parity parity = Parity::none;
  double residual = 0;
};

struct ClassCounts {
  std::size_t real_negative = 0;
  std::size_t spurious_positive = 0;
  std::size_t complex_pair = 0;  // counts eigenvalues, not pairs
  std::size_t near_infinite = 0;
  std::size_t total() const { return real_negative + spurious_positive + complex_pair + near_infinite; }
};

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;
  bool distinct = true;
  std::optional<bool> interlaced;  // set only when every real entry has a parity tag
  Tolerances tolerances;
  std::optional<MethodConfig> config;

  ClassCounts counts() const;
  /// Finite eigenvalue of largest magnitude, if any.
  std::optional<std::complex<double>> extreme() const;
};

SpectrumReport classify(std::span<const Eigenvalue> eigs, Real scale, const Tolerances& tol = {});
SpectrumReport classify(std::span<const std::complex<Real>> eigs, Real scale, const Tolerances& tol = {});

/// Median |lambda| over finite eigenvalues; 1 when there are none.
Real median_magnitude(std::span<const Eigenvalue> eigs);

}  // namespace gegtau
