#include "gegtau/scaled_real.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace gegtau {

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "none";
}

ScaledReal::ScaledReal(Real value) {
  if (std::isnan(value) || std::isinf(value)) {
    throw std::domain_error("ScaledReal requires a finite value");
  }
  if (value == 0) return;
  sign_ = value < 0 ? -1 : 1;
  int e = 0;
  mant_ = std::frexp(std::fabs(value), &e);
  exp_ = e;
}

void ScaledReal::normalize() {
  if (mant_ == 0) {
    sign_ = 0;
    exp_ = 0;
    return;
  }
  int e = 0;
  mant_ = std::frexp(mant_, &e);
  exp_ += e;
}

Real ScaledReal::log_mag() const {
  if (sign_ == 0) return -std::numeric_limits<Real>::infinity();
  return std::log(mant_) + static_cast<Real>(exp_) * std::numbers::ln2_v<Real>;
}

Real ScaledReal::to_real() const {
  if (sign_ == 0) return 0;
  constexpr auto max_exp = std::numeric_limits<Real>::max_exponent;
  constexpr auto min_exp = std::numeric_limits<Real>::min_exponent - std::numeric_limits<Real>::digits;
  if (exp_ > max_exp) return sign_ * std::numeric_limits<Real>::infinity();
  if (exp_ < min_exp) return sign_ * Real(0);
  return sign_ * std::ldexp(mant_, static_cast<int>(exp_));
}

ScaledReal ScaledReal::abs() const {
  ScaledReal r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

ScaledReal ScaledReal::operator-() const {
  ScaledReal r = *this;
  r.sign_ = -r.sign_;
  return r;
}

ScaledReal& ScaledReal::operator*=(const ScaledReal& rhs) {
  if (sign_ == 0 || rhs.sign_ == 0) return *this = ScaledReal{};
  sign_ *= rhs.sign_;
  mant_ *= rhs.mant_;
  exp_ += rhs.exp_;
  normalize();
  return *this;
}

ScaledReal& ScaledReal::operator/=(const ScaledReal& rhs) {
  if (rhs.sign_ == 0) throw std::domain_error("ScaledReal division by zero");
  if (sign_ == 0) return *this;
  sign_ *= rhs.sign_;
  mant_ /= rhs.mant_;
  exp_ -= rhs.exp_;
  normalize();
  return *this;
}

ScaledReal& ScaledReal::operator+=(const ScaledReal& rhs) {
  if (rhs.sign_ == 0) return *this;
  if (sign_ == 0) return *this = rhs;
  // Factor out the larger exponent; the smaller term is shifted down and
  // vanishes once it falls below the mantissa precision.
  const ScaledReal& big = exp_ >= rhs.exp_ ? *this : rhs;
  const ScaledReal& small = exp_ >= rhs.exp_ ? rhs : *this;
  const std::int64_t shift = big.exp_ - small.exp_;
  ScaledReal out;
  out.exp_ = big.exp_;
  Real m = big.sign_ * big.mant_;
  if (shift <= std::numeric_limits<Real>::digits + 2) {
    m += small.sign_ * std::ldexp(small.mant_, -static_cast<int>(shift));
  }
  out.sign_ = m < 0 ? -1 : (m > 0 ? 1 : 0);
  out.mant_ = std::fabs(m);
  out.normalize();
  return *this = out;
}

int ScaledReal::compare_magnitude(const ScaledReal& a, const ScaledReal& b) {
  if (a.sign_ == 0 || b.sign_ == 0) {
    return (a.sign_ != 0) - (b.sign_ != 0);
  }
  if (a.exp_ != b.exp_) return a.exp_ < b.exp_ ? -1 : 1;
  if (a.mant_ != b.mant_) return a.mant_ < b.mant_ ? -1 : 1;
  return 0;
}

bool operator<(const ScaledReal& a, const ScaledReal& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  const int c = ScaledReal::compare_magnitude(a, b);
  return a.sign_ >= 0 ? c < 0 : c > 0;
}

std::ostream& operator<<(std::ostream& os, const ScaledReal& v) {
  if (v.is_zero()) return os << "0";
  const Real r = v.to_real();
  if (std::isfinite(r) && r != 0) return os << static_cast<double>(r);
  // Decimal mantissa/exponent from the log magnitude.
  const Real l10 = v.log_mag() / std::numbers::ln10_v<Real>;
  const Real e10 = std::floor(l10);
  return os << (v.sign() < 0 ? "-" : "") << static_cast<double>(std::pow(Real(10), l10 - e10)) << "e"
            << static_cast<long long>(e10);
}

}  // namespace gegtau
