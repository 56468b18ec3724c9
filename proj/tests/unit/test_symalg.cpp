#include <doctest.h>

#include <algorithm>
#include <random>

#include "qaxiom/error.hpp"
#include "qaxiom/symalg/checks.hpp"
#include "qaxiom/symalg/mixed.hpp"
#include "qaxiom/symalg/rewrite.hpp"
#include "qaxiom/symalg/substitution.hpp"
#include "symbolic_oracles.hpp"

using namespace qaxiom::symalg;

namespace {

const Generator P1 = Generator::P(1), P2 = Generator::P(2);
const Generator Q1 = Generator::Q(1), Q2 = Generator::Q(2);

Coefficient hbar() { return Coefficient::constant("hbar"); }
Coefficient eB() { return Coefficient::constant("e") * Coefficient::constant("B"); }
Coefficient I() { return Coefficient::i(); }

NCPolynomial W(std::initializer_list<Generator> gens) { return NCPolynomial(Word(gens), 1); }

Algebra random_central_algebra(std::mt19937_64& rng) {
  auto order = Algebra::default_order(2);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<std::pair<Generator, Generator>, NCPolynomial>> entries;
  std::bernoulli_distribution declare(0.8), flip(0.5);
  auto gens = Algebra::default_order(2);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (declare(rng)) {
        auto pair = flip(rng) ? std::pair{gens[j], gens[i]} : std::pair{gens[i], gens[j]};
        entries.push_back({pair, NCPolynomial(oracle::random_coefficient(rng))});
      }
  std::bernoulli_distribution sign(0.5);
  return Algebra::create(2, order, sign(rng) ? 1 : -1, entries);
}

}  // namespace

TEST_SUITE("scalar") {
  TEST_CASE("coefficient arithmetic is exact and canonical") {
    Coefficient a = Coefficient::constant("e") * Coefficient::constant("B");
    CHECK(a * a.pow(-1) == Coefficient::one());
    CHECK((a - a).is_zero());
    Coefficient half{Gaussian(Rational(1, 2))};
    CHECK(half + half == Coefficient::one());
    CHECK(I() * I() == Coefficient(-1));
    CHECK(Coefficient::constant("hbar", 0) == Coefficient::one());
  }

  TEST_CASE("rendering") {
    CHECK(to_string(-I() * hbar()) == "-i*hbar");
    CHECK(to_string(I() * hbar() * eB().pow(-1)) == "i*hbar*e^-1*B^-1");
    CHECK(to_string(Coefficient{Gaussian(Rational(1, 2))} * hbar()) == "(1/2)*hbar");
    CHECK(to_string(Coefficient::zero()) == "0");
  }

  TEST_CASE("evaluation needs every constant") {
    std::map<std::string, double> vals{{"hbar", 2.0}, {"e", 1.0}, {"B", 4.0}};
    CHECK(std::abs((I() * hbar() * eB().pow(-1)).evaluate(vals) - std::complex<double>(0, 0.5)) <
          1e-15);
    CHECK_THROWS_AS((hbar() * Coefficient::constant("M")).evaluate(vals), qaxiom::MissingParam);
  }

  TEST_CASE("negative power of a sum is rejected") {
    CHECK_THROWS_AS((hbar() + eB()).pow(-1), qaxiom::NotInvertible);
  }
}

TEST_SUITE("normal_order") {
  TEST_CASE("P1 Q1 under the canonical relations") {
    auto a = Algebra::heisenberg();
    NCPolynomial expected = W({Q1, P1}) + NCPolynomial(-I() * hbar());
    CHECK(normal_order(W({P1, Q1}), a) == expected);
  }

  TEST_CASE("already ordered commuting pair is unchanged") {
    auto a = Algebra::heisenberg();
    CHECK(normal_order(W({Q1, Q2}), a) == W({Q1, Q2}));
  }

  TEST_CASE("P1 P1 Q1 matches the pairwise-swap oracle and the frozen value") {
    auto a = Algebra::heisenberg();
    NCPolynomial expected = W({Q1, P1, P1}) + NCPolynomial(Word{P1}, Coefficient(-2) * I() * hbar());
    NCPolynomial p = W({P1, P1, Q1});
    CHECK(oracle::bubble_normal_order(p, a) == expected);
    CHECK(normal_order(p, a) == expected);
  }

  TEST_CASE("unknown generator is rejected") {
    auto a = Algebra::heisenberg(1);
    CHECK_THROWS_AS(normal_order(W({P2}), a), qaxiom::UnknownGenerator);
  }

  TEST_CASE("configurable order changes the normal form but not the value") {
    auto a = Algebra::create(2, {P1, P2, Q1, Q2}, -1,
                             {{{P1, Q1}, NCPolynomial(-I() * hbar())}});
    CHECK(normal_order(W({Q1, P1}), a) == W({P1, Q1}) + NCPolynomial(I() * hbar()));
  }

  TEST_CASE("idempotent on random polynomials") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      auto a = trial % 2 ? Algebra::magnetic() : random_central_algebra(rng);
      auto p = oracle::random_polynomial(rng, a, 5);
      auto n = normal_order(p, a);
      CHECK(normal_order(n, a) == n);
      for (const auto& [w, c] : n.terms()) CHECK(is_normal_ordered(w, a));
    }
  }

  TEST_CASE("agrees with the bubble-sort oracle on all words up to length 4") {
    for (const auto& a : {Algebra::heisenberg(), Algebra::magnetic(-1), Algebra::magnetic(1)}) {
      for (const auto& w : oracle::all_words(a, 4)) {
        NCPolynomial p(w, 1);
        REQUIRE(normal_order(p, a) == oracle::bubble_normal_order(p, a));
      }
    }
  }
}

TEST_SUITE("commutator") {
  TEST_CASE("frozen examples") {
    auto h = Algebra::heisenberg();
    CHECK(commutator(P1, Q1, h) == NCPolynomial(-I() * hbar()));
    CHECK(commutator(Q1, Q1, h).is_zero());
    CHECK(commutator(Q1, Q1, Algebra::magnetic()).is_zero());
    NCPolynomial expected(Word{P2}, -I() * hbar());
    CHECK(oracle::leibniz_word_bracket({P1, P2}, Q1, h) == expected);
    CHECK(commutator(W({P1, P2}), Q1, h) == expected);
  }

  TEST_CASE("magnetic preset reproduces its table") {
    auto m = Algebra::magnetic(-1);
    CHECK(commutator(P1, P2, m) == NCPolynomial(-I() * hbar() * eB()));
    CHECK(commutator(Q1, Q2, m) == NCPolynomial(I() * hbar() * eB().pow(-1)));
    CHECK(commutator(P2, Q2, m) == NCPolynomial(-I() * hbar()));
    CHECK(commutator(P1, Q2, m).is_zero());
  }

  TEST_CASE("antisymmetric, bilinear and Leibniz on random input") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = trial % 3 == 0 ? Algebra::magnetic() : random_central_algebra(rng);
      auto p = oracle::random_polynomial(rng, a, 3);
      auto q = oracle::random_polynomial(rng, a, 3);
      auto r = oracle::random_polynomial(rng, a, 3);
      auto alpha = oracle::random_coefficient(rng);
      CHECK(commutator(p, q, a) == -commutator(q, p, a));
      CHECK(commutator(p * alpha + r, q, a) == commutator(p, q, a) * alpha + commutator(r, q, a));
      CHECK(commutator(p * q, r, a) ==
            normal_order(p * commutator(q, r, a) + commutator(p, r, a) * q, a));
    }
  }
}

TEST_SUITE("jacobi") {
  TEST_CASE("both presets are computed to vanish") {
    for (const auto& a : {Algebra::heisenberg(), Algebra::magnetic()}) {
      auto report = jacobi_check(a);
      CHECK(report.triples_checked == 64);
      CHECK(report.consistent());
    }
  }

  TEST_CASE("non-central table is rejected before the check runs") {
    CHECK_THROWS_AS(Algebra::create(2, {}, -1, {{{Q1, Q2}, NCPolynomial(Q1)}}), qaxiom::NotCentral);
  }

  TEST_CASE("duplicate declaration in reversed orientation") {
    CHECK_THROWS_AS(Algebra::create(2, {}, -1,
                                    {{{P1, Q1}, NCPolynomial(1)}, {{Q1, P1}, NCPolynomial(-1)}}),
                    qaxiom::DuplicatePair);
  }

  TEST_CASE("random central tables") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 25; ++trial) CHECK(jacobi_check(random_central_algebra(rng)).consistent());
  }
}

TEST_SUITE("substitution") {
  TEST_CASE("identity substitution") {
    auto a = Algebra::magnetic();
    NCPolynomial p = W({P1, Q2, P2}) + NCPolynomial(hbar());
    CHECK(substitute(p, Substitution::identity(), a) == normal_order(p, a));
  }

  TEST_CASE("formal bracket under the flux relation") {
    auto a = Algebra::magnetic(-1);
    auto s = Substitution::flux_relation(a);
    CHECK(s.image(P1) == NCPolynomial(Word{Q2}, -eB()));
    CHECK(s.image(P2) == NCPolynomial(Word{Q1}, eB()));
    NCPolynomial bracket = W({P1, Q1}) - W({Q1, P1});
    CHECK(substitute(bracket, s, a) == NCPolynomial(I() * hbar()));
    CHECK(substitute(W({P1, Q2}), s, a) == NCPolynomial(Word{Q2, Q2}, -eB()));
  }

  TEST_CASE("nonlinear image is rejected") {
    CHECK_THROWS_AS(Substitution({{P1, W({Q1, Q2})}}), qaxiom::NonLinearSubstitution);
  }
}

TEST_SUITE("equivalence") {
  TEST_CASE("identity substitution is consistent for every algebra") {
    std::mt19937_64 rng(5);
    CHECK(equivalence_check(Algebra::heisenberg(), Substitution::identity()).consistent());
    for (int trial = 0; trial < 20; ++trial)
      CHECK(equivalence_check(random_central_algebra(rng), Substitution::identity()).consistent());
  }

  TEST_CASE("magnetic preset under the flux relation flags P-Q and P-P pairs") {
    for (int eps : {-1, 1}) {
      auto a = Algebra::magnetic(eps);
      auto report = equivalence_check(a, Substitution::flux_relation(a));
      CHECK_FALSE(report.consistent());
      for (const auto& e : report.entries) {
        bool mixed = e.left.kind != e.right.kind;
        bool diagonal = e.left.index == e.right.index;
        if (e.left.kind == GenKind::Q && e.right.kind == GenKind::Q) {
          CHECK(e.residual.is_zero());
        } else if (mixed && !diagonal) {
          CHECK(e.residual.is_zero());
        } else {
          CHECK(e.derived == NCPolynomial(-e.declared));
        }
      }
    }
  }

  TEST_CASE("flipping the Q-Q sign makes the flux relation consistent") {
    auto a = Algebra::magnetic(-1);
    auto flipped = a.with_entry(Q1, Q2, -a.bracket(Q1, Q2));
    auto report = equivalence_check(flipped, Substitution::flux_relation(flipped));
    CHECK(report.consistent());
  }
}

TEST_SUITE("dimensions") {
  TEST_CASE("magnetic preset is homogeneous in geometric units") {
    auto report = dimension_check(Algebra::magnetic(), DimensionMap::geometric());
    CHECK(report.pass());
    CHECK(dimension_check(Algebra::heisenberg(), DimensionMap::geometric()).pass());
  }

  TEST_CASE("empty table passes vacuously") {
    auto a = Algebra::create(2, {}, -1, {});
    CHECK(dimension_check(a, DimensionMap::geometric()).pass());
  }

  TEST_CASE("[P1,Q1] = -i B fails") {
    auto a = Algebra::create(2, {}, -1, {{{P1, Q1}, NCPolynomial(-I() * Coefficient::constant("B"))}});
    auto report = dimension_check(a, DimensionMap::geometric());
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].lhs == 0);
    CHECK(report.entries[0].rhs == std::vector<int>{-2});
    CHECK_FALSE(report.pass());
  }

  TEST_CASE("missing symbols are listed") {
    DimensionMap d = DimensionMap::geometric();
    d.constants.erase("B");
    CHECK_THROWS_AS(dimension_check(Algebra::magnetic(), d), qaxiom::MissingDimension);
  }
}

namespace {

// Applies D1(f2 psi) - D2(f1 psi) to psi = x1^a x2^b with explicit
// product-rule differentiation, and compares to the claimed decomposition.
bool decomposition_holds(const CoefficientMatrix& c, DerivativeMode mode, int a, int b) {
  const MixedCommutatorResult r = mixed_commutator(c, mode);
  Coefficient pref = (mode == DerivativeMode::position ? -I() : I()) * hbar();
  oracle::CommPoly psi;
  psi.add(a, b, 1);
  auto f1 = oracle::linear(c[0][0], c[0][1]);
  auto f2 = oracle::linear(c[1][0], c[1][1]);
  auto lhs = (f2 * psi).derivative(1).scaled(pref) + (f1 * psi).derivative(2).scaled(-pref);

  auto as_comm = [](const NCPolynomial& p) {
    oracle::CommPoly out;
    for (const auto& [w, k] : p.terms()) {
      int e1 = 0, e2 = 0;
      for (Generator g : w) (g.index == 1 ? e1 : e2)++;
      out.add(e1, e2, k);
    }
    return out;
  };
  auto rhs = psi.scaled(r.scalar) + (as_comm(r.f2) * psi.derivative(1)).scaled(r.prefactor) +
             (as_comm(r.f1) * psi.derivative(2)).scaled(-r.prefactor);
  return lhs == rhs && r.prefactor == pref;
}

}  // namespace

TEST_SUITE("mixed_commutator") {
  const Coefficient Malpha = Coefficient::constant("M") * Coefficient::constant("alphadot");

  TEST_CASE("bounded motion: scalar part and remainder") {
    auto c = epsilon_matrix(Malpha, -1);
    auto r = mixed_commutator(c, DerivativeMode::position);
    CHECK(r.scalar == Coefficient(-2) * I() * hbar() * Malpha);
    CHECK(r.f1 == NCPolynomial(Word{Q2}, -Malpha));
    CHECK(r.f2 == NCPolynomial(Word{Q1}, Malpha));
    CHECK_FALSE(r.remainder_is_zero());
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) CHECK(decomposition_holds(c, DerivativeMode::position, a, b));
  }

  TEST_CASE("momentum representation dual") {
    auto c = epsilon_matrix(-Malpha.pow(-1), -1);
    auto r = mixed_commutator(c, DerivativeMode::momentum);
    CHECK(r.scalar == Coefficient(-2) * I() * hbar() * Malpha.pow(-1));
    CHECK(r.f1.generators() == std::set<Generator>{P2});
  }

  TEST_CASE("zero matrix") {
    CoefficientMatrix c;
    auto r = mixed_commutator(c, DerivativeMode::position);
    CHECK(r.scalar.is_zero());
    CHECK(r.remainder_is_zero());
  }

  TEST_CASE("identity matrix has no scalar part") {
    CoefficientMatrix c{{{Coefficient(1), Coefficient(0)}, {Coefficient(0), Coefficient(1)}}};
    auto r = mixed_commutator(c, DerivativeMode::position);
    CHECK(r.scalar.is_zero());
    CHECK(r.f2 == NCPolynomial(Q2));
    CHECK(r.f1 == NCPolynomial(Q1));
  }

  TEST_CASE("scalar formula and product-rule decomposition on random matrices") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      CoefficientMatrix c;
      for (auto& row : c)
        for (auto& x : row) x = oracle::random_coefficient(rng);
      for (auto mode : {DerivativeMode::position, DerivativeMode::momentum}) {
        auto r = mixed_commutator(c, mode);
        Coefficient sign = mode == DerivativeMode::position ? Coefficient(-1) : Coefficient(1);
        CHECK(r.scalar == sign * I() * hbar() * (c[1][0] - c[0][1]));
        CHECK(decomposition_holds(c, mode, trial % 3, (trial / 3) % 3));
      }
    }
  }
}
