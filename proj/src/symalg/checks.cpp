#include "qaxiom/symalg/checks.hpp"

#include <algorithm>

#include "qaxiom/error.hpp"
#include "qaxiom/symalg/rewrite.hpp"

namespace qaxiom::symalg {

JacobiReport jacobi_check(const Algebra& a) {
  JacobiReport report;
  const auto& gens = a.order();
  for (Generator g : gens) {
    for (Generator h : gens) {
      for (Generator l : gens) {
        NCPolynomial G(g), H(h), L(l);
        NCPolynomial residual = commutator(G, commutator(H, L, a), a) +
                                commutator(H, commutator(L, G, a), a) +
                                commutator(L, commutator(G, H, a), a);
        residual = normal_order(residual, a);
        ++report.triples_checked;
        if (!residual.is_zero()) report.violations.push_back({g, h, l, residual});
      }
    }
  }
  return report;
}

bool EquivalenceReport::consistent() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const EquivalenceEntry& e) { return e.residual.is_zero(); });
}

EquivalenceReport equivalence_check(const Algebra& a, const Substitution& s) {
  EquivalenceReport report;
  for (const auto& entry : a.entries()) {
    NCPolynomial bracket = NCPolynomial(entry.left) * NCPolynomial(entry.right) -
                           NCPolynomial(entry.right) * NCPolynomial(entry.left);
    NCPolynomial derived = substitute(bracket, s, a);
    NCPolynomial residual = derived - NCPolynomial(entry.value);
    report.entries.push_back({entry.left, entry.right, entry.value, derived, residual});
  }
  return report;
}

DimensionMap DimensionMap::geometric(int pair_count) {
  DimensionMap d;
  for (int i = 1; i <= pair_count; ++i) {
    d.generators[Generator::Q(i)] = 1;
    d.generators[Generator::P(i)] = -1;
  }
  d.constants = {{"hbar", 0}, {"e", 0}, {"B", -2}, {"M", -1}, {"alphadot", -1}};
  return d;
}

bool DimensionReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const DimensionEntry& e) { return e.pass; });
}

DimensionReport dimension_check(const Algebra& a, const DimensionMap& d) {
  std::vector<std::string> missing;
  for (const auto& entry : a.entries()) {
    for (Generator g : {entry.left, entry.right})
      if (!d.generators.count(g)) missing.push_back(to_string(g));
    for (const auto& name : entry.value.symbols())
      if (!d.constants.count(name)) missing.push_back(name);
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw MissingDimension("no length dimension for: " + list);
  }

  DimensionReport report;
  for (const auto& entry : a.entries()) {
    DimensionEntry out{entry.left, entry.right, entry.value, 0, {}, true};
    out.lhs = d.generators.at(entry.left) + d.generators.at(entry.right);
    for (const auto& [mono, g] : entry.value.terms()) {
      int dim = 0;
      for (const auto& [name, e] : mono.exponents()) dim += e * d.constants.at(name);
      out.rhs.push_back(dim);
      if (dim != out.lhs) out.pass = false;
    }
    report.entries.push_back(std::move(out));
  }
  return report;
}

}  // namespace qaxiom::symalg
