#pragma once

#include <map>
#include <string>
#include <vector>

#include "qaxiom/symalg/algebra.hpp"
#include "qaxiom/symalg/substitution.hpp"

namespace qaxiom::symalg {

struct JacobiTriple {
  Generator g, h, l;
  NCPolynomial residual;  // [g,[h,l]] + [h,[l,g]] + [l,[g,h]]
};

struct JacobiReport {
  std::size_t triples_checked = 0;
  std::vector<JacobiTriple> violations;
  bool consistent() const { return violations.empty(); }
};

/// Evaluates the Jacobi residual for every ordered generator triple.
JacobiReport jacobi_check(const Algebra& a);

struct EquivalenceEntry {
  Generator left, right;
  Coefficient declared;
  NCPolynomial derived;
  NCPolynomial residual;  // derived - declared
};

struct EquivalenceReport {
  std::vector<EquivalenceEntry> entries;
  bool consistent() const;
};

/// Recomputes each declared bracket after substituting both sides and
/// compares against the declared value.
EquivalenceReport equivalence_check(const Algebra& a, const Substitution& s);

/// Length exponents in geometric units for generators and constants.
struct DimensionMap {
  std::map<Generator, int> generators;
  std::map<std::string, int> constants;

  /// Q: +1, P: -1, hbar: 0, e: 0, B: -2, M: -1, alphadot: -1.
  static DimensionMap geometric(int pair_count = 2);
};

struct DimensionEntry {
  Generator left, right;
  Coefficient value;
  int lhs = 0;
  std::vector<int> rhs;  // one per monomial of the value
  bool pass = true;
};

struct DimensionReport {
  std::vector<DimensionEntry> entries;
  bool pass() const;
};

/// Checks dim(g) + dim(h) == dim(c) for every declared [g, h] = c. A zero
/// value is dimensionless-agnostic and passes. Throws MissingDimension.
DimensionReport dimension_check(const Algebra& a, const DimensionMap& d);

}  // namespace qaxiom::symalg
