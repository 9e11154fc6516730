#pragma once

#include "gegtau/matrix.hpp"
#include "gegtau/types.hpp"

namespace gegtau {

/// Orthonormal basis (as columns) of the null space of c, which must have
/// full row rank. Householder QR of c^T with column pivoting; throws
/// NumericalError if the rows are numerically dependent.
Matrix<Real> null_basis(const Matrix<Real>& c);

/// Solves a x = b by LU with partial pivoting. Throws NumericalError when a
/// pivot falls below dim * eps times the largest entry of its column.
Matrix<Real> solve(const Matrix<Real>& a, const Matrix<Real>& b);

}  // namespace gegtau
