#pragma once

#include <string_view>

#include "gegtau/types.hpp"

namespace gegtau {

enum class MethodKind { tau, inviscid_galerkin, galerkin, modified_tau, collocation };

std::string_view to_string(MethodKind k);
MethodKind method_from_string(std::string_view s);

/// One discretization of (D^2 - alpha^2)^2 u = lambda (D^2 - alpha^2) u with
/// clamped ends. Galerkin(gamma) shares its spectrum with tau(gamma+2) and the
/// inviscid variant with tau(gamma+1).
struct MethodConfig {
  MethodKind kind = MethodKind::tau;
  Real gamma = 0;
  int n = 16;
  Real alpha = 0;
  bool parity_split = true;

  static MethodConfig make(MethodKind kind, Real gamma, int n, Real alpha = 0) {
    return MethodConfig{kind, gamma, n, alpha, alpha == 0};
  }
};

}  // namespace gegtau
