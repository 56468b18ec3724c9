#include "qaxiom/symalg/rewrite.hpp"

#include <map>

namespace qaxiom::symalg {

bool is_normal_ordered(const Word& w, const Algebra& a) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (a.rank(w[i - 1]) > a.rank(w[i])) return false;
  return true;
}

namespace {

class Orderer {
 public:
  explicit Orderer(const Algebra& a) : algebra_(a) {}

  const NCPolynomial& word(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;

    std::size_t i = 1;
    while (i < w.size() && algebra_.rank(w[i - 1]) <= algebra_.rank(w[i])) ++i;

    NCPolynomial out;
    if (i >= w.size()) {
      out = NCPolynomial(w, Coefficient::one());
    } else {
      // w = u g h v with g > h:  u g h v = u h g v + [g, h] u v
      Word swapped = w;
      std::swap(swapped[i - 1], swapped[i]);
      out = word(swapped);
      Coefficient c = algebra_.bracket(w[i - 1], w[i]);
      if (!c.is_zero()) {
        Word contracted;
        contracted.reserve(w.size() - 2);
        contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<long>(i) - 1);
        contracted.insert(contracted.end(), w.begin() + static_cast<long>(i) + 1, w.end());
        out += word(contracted) * c;
      }
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

 private:
  const Algebra& algebra_;
  std::map<Word, NCPolynomial> memo_;
};

}  // namespace

NCPolynomial normal_order(const NCPolynomial& p, const Algebra& a) {
  for (Generator g : p.generators()) a.rank(g);
  Orderer orderer(a);
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) out += orderer.word(w) * c;
  return out;
}

NCPolynomial commutator(const NCPolynomial& p, const NCPolynomial& q, const Algebra& a) {
  return normal_order(p * q - q * p, a);
}

}  // namespace qaxiom::symalg
