#include "qaxiom/symalg/substitution.hpp"

#include "qaxiom/error.hpp"
#include "qaxiom/symalg/rewrite.hpp"

namespace qaxiom::symalg {

Substitution::Substitution(std::map<Generator, NCPolynomial> images) : images_(std::move(images)) {
  for (const auto& [g, p] : images_)
    if (p.degree() > 1)
      throw NonLinearSubstitution(to_string(g) + " -> " + to_string(p) + " has degree " +
                                  std::to_string(p.degree()));
}

Substitution Substitution::flux_relation(const Algebra& a) {
  if (a.pair_count() != 2)
    throw InvalidAlgebra("the flux substitution is defined for two pairs only");
  const Coefficient eB = Coefficient::constant("e") * Coefficient::constant("B");
  std::map<Generator, NCPolynomial> images;
  for (int m = 1; m <= 2; ++m) {
    NCPolynomial image;
    for (int n = 1; n <= 2; ++n)
      if (int eps = a.epsilon(m, n); eps != 0)
        image += NCPolynomial(Generator::Q(n)) * (eB * Coefficient(eps));
    images[Generator::P(m)] = image;
  }
  return Substitution(std::move(images));
}

NCPolynomial Substitution::image(Generator g) const {
  auto it = images_.find(g);
  return it == images_.end() ? NCPolynomial(g) : it->second;
}

NCPolynomial Substitution::apply(const NCPolynomial& p) const {
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    NCPolynomial term(c);
    for (Generator g : w) term = term * image(g);
    out += term;
  }
  return out;
}

NCPolynomial substitute(const NCPolynomial& p, const Substitution& s, const Algebra& a) {
  return normal_order(s.apply(p), a);
}

}  // namespace qaxiom::symalg
