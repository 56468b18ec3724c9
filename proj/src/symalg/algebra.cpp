#include "qaxiom/symalg/algebra.hpp"

#include <algorithm>

#include "qaxiom/error.hpp"

namespace qaxiom::symalg {

std::vector<Generator> Algebra::default_order(int pair_count) {
  std::vector<Generator> out;
  for (int i = 1; i <= pair_count; ++i) out.push_back(Generator::Q(i));
  for (int i = 1; i <= pair_count; ++i) out.push_back(Generator::P(i));
  return out;
}

Algebra Algebra::create(
    int pair_count, std::vector<Generator> order, int epsilon12,
    const std::vector<std::pair<std::pair<Generator, Generator>, NCPolynomial>>& entries,
    std::string name) {
  if (pair_count < 1) throw InvalidAlgebra("pair count must be at least 1");
  if (epsilon12 != 1 && epsilon12 != -1) throw InvalidAlgebra("epsilon12 must be +1 or -1");

  Algebra a;
  a.name_ = std::move(name);
  a.pair_count_ = pair_count;
  a.epsilon12_ = epsilon12;
  if (order.empty()) order = default_order(pair_count);

  auto expected = default_order(pair_count);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::sort(expected.begin(), expected.end());
  if (sorted != expected)
    throw InvalidAlgebra("generator order must list each of P1..P" + std::to_string(pair_count) +
                         ", Q1..Q" + std::to_string(pair_count) + " exactly once");
  a.order_ = std::move(order);
  for (std::size_t i = 0; i < a.order_.size(); ++i) a.rank_[a.order_[i]] = static_cast<int>(i);

  for (const auto& [pair, rhs] : entries) {
    auto [g, h] = pair;
    for (Generator x : {g, h})
      if (!a.contains(x)) throw UnknownGenerator("generator " + to_string(x) + " is not in the algebra");
    if (!rhs.is_scalar())
      throw NotCentral("[" + to_string(g) + ", " + to_string(h) + "] = " + to_string(rhs) +
                       " is not a scalar multiple of the identity");
    Coefficient value = rhs.scalar_part();
    if (g == h) {
      if (!value.is_zero())
        throw InvalidAlgebra("[" + to_string(g) + ", " + to_string(g) + "] must be zero");
      continue;
    }
    bool flipped = a.rank_.at(g) > a.rank_.at(h);
    auto key = flipped ? std::pair{h, g} : std::pair{g, h};
    if (a.table_.count(key))
      throw DuplicatePair("pair {" + to_string(g) + ", " + to_string(h) + "} declared twice");
    a.table_.emplace(key, flipped ? -value : value);
    a.entries_.push_back({g, h, value});
  }
  return a;
}

Algebra Algebra::heisenberg(int pair_count, int epsilon12) {
  std::vector<std::pair<std::pair<Generator, Generator>, NCPolynomial>> entries;
  const Coefficient minus_i_hbar = -Coefficient::i() * Coefficient::constant("hbar");
  for (int m = 1; m <= pair_count; ++m)
    for (int n = 1; n <= pair_count; ++n)
      entries.push_back({{Generator::P(m), Generator::Q(n)},
                         m == n ? NCPolynomial(minus_i_hbar) : NCPolynomial::zero()});
  for (int m = 1; m <= pair_count; ++m)
    for (int n = m + 1; n <= pair_count; ++n)
      entries.push_back({{Generator::P(m), Generator::P(n)}, NCPolynomial::zero()});
  for (int m = 1; m <= pair_count; ++m)
    for (int n = m + 1; n <= pair_count; ++n)
      entries.push_back({{Generator::Q(m), Generator::Q(n)}, NCPolynomial::zero()});
  return create(pair_count, default_order(pair_count), epsilon12, entries,
                "heisenberg" + std::to_string(pair_count));
}

Algebra Algebra::magnetic(int epsilon12) {
  const Coefficient i = Coefficient::i();
  const Coefficient hbar = Coefficient::constant("hbar");
  const Coefficient eB = Coefficient::constant("e") * Coefficient::constant("B");
  const Coefficient eps{Gaussian(epsilon12)};

  std::vector<std::pair<std::pair<Generator, Generator>, NCPolynomial>> entries;
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n)
      entries.push_back({{Generator::P(m), Generator::Q(n)},
                         m == n ? NCPolynomial(-i * hbar) : NCPolynomial::zero()});
  entries.push_back({{Generator::P(1), Generator::P(2)}, NCPolynomial(i * eps * hbar * eB)});
  entries.push_back({{Generator::Q(1), Generator::Q(2)}, NCPolynomial(-i * eps * hbar * eB.pow(-1))});
  return create(2, default_order(2), epsilon12, entries, "magnetic2");
}

int Algebra::epsilon(int m, int n) const {
  if (m == n) return 0;
  return (m == 1 && n == 2) ? epsilon12_ : -epsilon12_;
}

int Algebra::rank(Generator g) const {
  auto it = rank_.find(g);
  if (it == rank_.end())
    throw UnknownGenerator("generator " + to_string(g) + " is not in algebra " + name_);
  return it->second;
}

Coefficient Algebra::bracket(Generator g, Generator h) const {
  int rg = rank(g), rh = rank(h);
  if (rg == rh) return {};
  bool flipped = rg > rh;
  auto it = table_.find(flipped ? std::pair{h, g} : std::pair{g, h});
  if (it == table_.end()) return {};
  return flipped ? -it->second : it->second;
}

Algebra Algebra::with_entry(Generator g, Generator h, const Coefficient& value) const {
  std::vector<std::pair<std::pair<Generator, Generator>, NCPolynomial>> entries;
  bool replaced = false;
  for (const auto& e : entries_) {
    bool same = (e.left == g && e.right == h);
    bool reversed = (e.left == h && e.right == g);
    if (same || reversed) {
      entries.push_back({{e.left, e.right}, NCPolynomial(reversed ? -value : value)});
      replaced = true;
    } else {
      entries.push_back({{e.left, e.right}, NCPolynomial(e.value)});
    }
  }
  if (!replaced) entries.push_back({{g, h}, NCPolynomial(value)});
  return create(pair_count_, order_, epsilon12_, entries, name_ + "*");
}

std::set<std::string> Algebra::symbols() const {
  std::set<std::string> out;
  for (const auto& e : entries_) {
    auto s = e.value.symbols();
    out.insert(s.begin(), s.end());
  }
  return out;
}

}  // namespace qaxiom::symalg
