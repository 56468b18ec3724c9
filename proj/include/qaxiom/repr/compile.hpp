#pragma once

#include <optional>
#include <vector>

#include "qaxiom/repr/representation.hpp"
#include "qaxiom/symalg/polynomial.hpp"

namespace qaxiom::repr {

/// Homomorphic image of p: words become matrix products in word order,
/// coefficients are evaluated from the representation's params.
/// Throws UnknownGenerator, MissingParam.
Matrix compile(const symalg::NCPolynomial& p, const Representation& rep);

/// compile(p) * x without forming compile(p); words are applied right to
/// left, so the cost is linear in x.cols().
Matrix apply(const symalg::NCPolynomial& p, const Representation& rep, const Matrix& x);

/// x * compile(p), words applied left to right.
Matrix apply_left(const Matrix& x, const symalg::NCPolynomial& p, const Representation& rep);

/// Largest entry of V^dagger (M - M^dagger) for M = compile(p): zero for a
/// Hermitian operator, evaluated without forming M.
double hermiticity_defect(const symalg::NCPolynomial& p, const Representation& rep);

/// V^dagger compile(p) V on the representation's protected subspace.
Matrix project(const symalg::NCPolynomial& p, const Representation& rep);

/// Largest singular value.
double operator_norm(const Matrix& m);

struct ResidualReport {
  Generator left;
  Generator right;
  symalg::Coefficient declared;
  double norm = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// || V^dagger ([g, h] - c) V || evaluated from the images g V, h V.
double commutator_residual(const Representation& rep, const Matrix& g, const Matrix& h,
                           std::complex<double> expected);
double commutator_residual(const Representation& rep, Generator g, Generator h,
                           const symalg::Coefficient& expected);

/// Default audit tolerance for a pair: 1e-10 on ladder representations;
/// on grids 1e-5 when the pair involves a discretized derivative against a
/// position (or a gauge-coupled momentum), 1e-12 otherwise.
double default_tolerance(const Representation& rep, Generator g, Generator h);

/// One report per declared pair of the algebra.
std::vector<ResidualReport> representation_audit(const Representation& rep,
                                                 const symalg::Algebra& a,
                                                 std::optional<double> tolerance = std::nullopt);

}  // namespace qaxiom::repr
