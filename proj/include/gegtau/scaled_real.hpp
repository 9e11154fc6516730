#pragma once

#include <cstdint>
#include <iosfwd>

#include "gegtau/types.hpp"

namespace gegtau {

/// Sign/magnitude number with an unbounded binary exponent.
///
/// Values at x = 1 of high-order Gegenbauer derivatives involve Gamma-function
/// ratios that leave the floating-point range long before the polynomial
/// degree becomes unreasonable. ScaledReal keeps a normalized mantissa in
/// [0.5, 1) and a 64-bit exponent, so products and quotients never overflow
/// and conversion back to Real is exact whenever the value is representable.
class ScaledReal {
public:
  ScaledReal() = default;
  ScaledReal(Real value);  // NOLINT(google-explicit-constructor): numeric promotion

  static ScaledReal zero() { return {}; }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }

  /// Natural log of |value|; undefined (returns -inf) for zero.
  Real log_mag() const;

  /// Mantissa in [0.5, 1) and binary exponent with |value| = mantissa * 2^exponent.
  Real mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }

  /// Conversion to Real; saturates to +-inf / 0 outside the representable range.
  Real to_real() const;
  double to_double() const { return static_cast<double>(to_real()); }

  ScaledReal abs() const;
  ScaledReal operator-() const;

  ScaledReal& operator*=(const ScaledReal& rhs);
  ScaledReal& operator/=(const ScaledReal& rhs);
  ScaledReal& operator+=(const ScaledReal& rhs);
  ScaledReal& operator-=(const ScaledReal& rhs) { return *this += -rhs; }

  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { return a *= b; }
  friend ScaledReal operator/(ScaledReal a, const ScaledReal& b) { return a /= b; }
  friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) { return a += b; }
  friend ScaledReal operator-(ScaledReal a, const ScaledReal& b) { return a -= b; }

  /// Compares |a| and |b|.
  static int compare_magnitude(const ScaledReal& a, const ScaledReal& b);

  friend bool operator==(const ScaledReal& a, const ScaledReal& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || (a.mant_ == b.mant_ && a.exp_ == b.exp_));
  }
  friend bool operator<(const ScaledReal& a, const ScaledReal& b);

private:
  void normalize();

  int sign_ = 0;
  Real mant_ = 0;  // in [0.5, 1) when sign_ != 0
  std::int64_t exp_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ScaledReal& v);

}  // namespace gegtau
