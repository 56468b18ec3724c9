#pragma once

#include "qaxiom/symalg/algebra.hpp"

namespace qaxiom::symalg {

/// True iff the word's generators are sorted (non-strictly) by a's order.
bool is_normal_ordered(const Word& w, const Algebra& a);

/// Rewrites every word into a's generator order using gh = hg + [g, h].
/// Each swap of an adjacent inversion either removes one inversion or
/// shortens the word by two, so the rewrite terminates.
/// Throws UnknownGenerator if p uses a generator outside a.
NCPolynomial normal_order(const NCPolynomial& p, const Algebra& a);

/// normal_order(pq - qp).
NCPolynomial commutator(const NCPolynomial& p, const NCPolynomial& q, const Algebra& a);

}  // namespace qaxiom::symalg
