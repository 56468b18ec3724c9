#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qaxiom/symalg/polynomial.hpp"

namespace qaxiom::symalg {

/// One declared bracket [lhs, rhs] = value * identity, in the orientation the
/// user wrote it.
struct TableEntry {
  Generator left;
  Generator right;
  Coefficient value;
};

/// A central commutator table over generators P1..Pk, Q1..Qk together with
/// the total order used for normal forms and the sign of epsilon_12.
///
/// Undeclared pairs commute. Reversed lookups return the negated value and
/// [g, g] is always zero.
class Algebra {
 public:
  /// Validates and builds an algebra. The entries' right-hand sides must be
  /// scalar polynomials (NotCentral otherwise); a pair may be declared only
  /// once in either orientation (DuplicatePair).
  static Algebra create(int pair_count, std::vector<Generator> order, int epsilon12,
                        const std::vector<std::pair<std::pair<Generator, Generator>, NCPolynomial>>&
                            entries,
                        std::string name = "custom");

  /// Canonical commutation relations: [P_i, Q_j] = -i hbar delta_ij, all
  /// other brackets zero.
  static Algebra heisenberg(int pair_count = 2, int epsilon12 = -1);
  /// Magnetic algebra for k = 2: [P_m, Q_n] = -i hbar delta_mn,
  /// [P_m, P_n] = i eps_mn hbar e B, [Q_m, Q_n] = -i eps_mn hbar (e B)^-1.
  static Algebra magnetic(int epsilon12 = -1);

  static std::vector<Generator> default_order(int pair_count);

  const std::string& name() const { return name_; }
  int pair_count() const { return pair_count_; }
  int epsilon12() const { return epsilon12_; }
  /// Levi-Civita symbol eps_mn for m, n in {1, 2} under this algebra's sign.
  int epsilon(int m, int n) const;

  const std::vector<Generator>& order() const { return order_; }
  bool has_generator(Generator g) const {
    return std::find(order_.begin(), order_.end(), g) != order_.end();
  }
  const std::vector<TableEntry>& entries() const { return entries_; }
  bool contains(Generator g) const { return rank_.count(g) != 0; }
  /// Position of g in the generator order; throws UnknownGenerator.
  int rank(Generator g) const;

  /// [g, h] as a central coefficient.
  Coefficient bracket(Generator g, Generator h) const;

  /// Copy with the value of one declared pair replaced (orientation as
  /// given).
  Algebra with_entry(Generator g, Generator h, const Coefficient& value) const;

  std::set<std::string> symbols() const;

 private:
  Algebra() = default;

  std::string name_;
  int pair_count_ = 0;
  int epsilon12_ = -1;
  std::vector<Generator> order_;
  std::map<Generator, int> rank_;
  std::vector<TableEntry> entries_;
  // Keyed by (lower, higher) in generator order.
  std::map<std::pair<Generator, Generator>, Coefficient> table_;
};

}  // namespace qaxiom::symalg
