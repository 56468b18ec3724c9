#include "qaxiom/symalg/mixed.hpp"

namespace qaxiom::symalg {

MixedCommutatorResult mixed_commutator(const CoefficientMatrix& c, DerivativeMode mode) {
  auto variable = [mode](int n) {
    return mode == DerivativeMode::position ? Generator::Q(n) : Generator::P(n);
  };
  MixedCommutatorResult out;
  out.mode = mode;
  const Coefficient i_hbar = Coefficient::i() * Coefficient::constant("hbar");
  out.prefactor = mode == DerivativeMode::position ? -i_hbar : i_hbar;

  for (int n = 1; n <= 2; ++n) {
    out.f1 += NCPolynomial(variable(n)) * c[0][n - 1];
    out.f2 += NCPolynomial(variable(n)) * c[1][n - 1];
  }
  // d1 f2 = c21, d2 f1 = c12
  out.scalar = out.prefactor * (c[1][0] - c[0][1]);
  return out;
}

CoefficientMatrix epsilon_matrix(const Coefficient& scale, int epsilon12) {
  CoefficientMatrix c;
  c[0][0] = Coefficient::zero();
  c[1][1] = Coefficient::zero();
  c[0][1] = scale * Coefficient(epsilon12);
  c[1][0] = scale * Coefficient(-epsilon12);
  return c;
}

}  // namespace qaxiom::symalg
