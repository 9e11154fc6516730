#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gegtau {

// All spectral arithmetic is carried out in extended precision; results are
// exported as double at the reporting boundary.
using Real = long double;

enum class Parity { even, odd, none };

std::string_view to_string(Parity p);

inline Parity parity_of(int k) { return (k % 2 == 0) ? Parity::even : Parity::odd; }

/// Gegenbauer index gamma > -1/2, selecting the weight (1-x^2)^(gamma-1/2).
class GegIndex {
public:
  explicit GegIndex(Real gamma) : gamma_(gamma) {
    if (!(gamma > Real(-0.5))) {
      throw std::domain_error("Gegenbauer index must satisfy gamma > -1/2, got " +
                              std::to_string(static_cast<double>(gamma)));
    }
  }

  Real value() const { return gamma_; }

  GegIndex shifted(Real by) const { return GegIndex(gamma_ + by); }

  friend bool operator==(const GegIndex&, const GegIndex&) = default;

private:
  Real gamma_;
};

/// Raised when a computation is mathematically well posed but numerically
/// breaks down (singular reduced matrix, QR non-convergence).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace gegtau
