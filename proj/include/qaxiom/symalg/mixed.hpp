#pragma once

#include <array>

#include "qaxiom/symalg/polynomial.hpp"

namespace qaxiom::symalg {

enum class DerivativeMode { position, momentum };

using CoefficientMatrix = std::array<std::array<Coefficient, 2>, 2>;

/// Exact decomposition of D1(f2 .) - D2(f1 .) where f_m = sum_n c_mn X_n and
/// D_m = -i hbar d/dQ_m (position mode, X = Q) or +i hbar d/dP_m (momentum
/// mode, X = P):
///
///   D1(f2 psi) - D2(f1 psi) = scalar * psi + prefactor * (f2 d1 - f1 d2) psi
///
/// with scalar = prefactor * (c21 - c12) and prefactor = -/+ i hbar.
struct MixedCommutatorResult {
  DerivativeMode mode = DerivativeMode::position;
  Coefficient scalar;
  Coefficient prefactor;
  NCPolynomial f1;
  NCPolynomial f2;

  bool remainder_is_zero() const { return f1.is_zero() && f2.is_zero(); }
};

MixedCommutatorResult mixed_commutator(const CoefficientMatrix& c, DerivativeMode mode);

/// c_mn = scale * eps_mn for the given sign of eps_12.
CoefficientMatrix epsilon_matrix(const Coefficient& scale, int epsilon12);

}  // namespace qaxiom::symalg
