#pragma once

#include <map>

#include "qaxiom/symalg/algebra.hpp"

namespace qaxiom::symalg {

/// Simultaneous replacement of generators by polynomials of degree <= 1.
/// Generators not listed map to themselves.
class Substitution {
 public:
  Substitution() = default;
  /// Throws NonLinearSubstitution if any image has degree > 1.
  explicit Substitution(std::map<Generator, NCPolynomial> images);

  static Substitution identity() { return {}; }
  /// P_m -> e B eps_mn Q_n with the algebra's epsilon sign (k = 2 only).
  static Substitution flux_relation(const Algebra& a);

  const std::map<Generator, NCPolynomial>& images() const { return images_; }
  NCPolynomial image(Generator g) const;

  /// Replaces every occurrence without reordering.
  NCPolynomial apply(const NCPolynomial& p) const;

 private:
  std::map<Generator, NCPolynomial> images_;
};

/// Simultaneous replacement followed by normal_order under a.
NCPolynomial substitute(const NCPolynomial& p, const Substitution& s, const Algebra& a);

}  // namespace qaxiom::symalg
