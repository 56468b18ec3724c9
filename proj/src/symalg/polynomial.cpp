#include "qaxiom/symalg/polynomial.hpp"

#include <algorithm>
#include <charconv>

namespace qaxiom::symalg {

std::string to_string(Generator g) {
  return (g.kind == GenKind::P ? "P" : "Q") + std::to_string(g.index);
}

std::optional<Generator> parse_generator(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'P' && text[0] != 'Q')) return std::nullopt;
  if (text[1] == '0') return std::nullopt;
  int index = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), index);
  if (ec != std::errc{} || ptr != text.data() + text.size() || index < 1) return std::nullopt;
  return Generator{text[0] == 'P' ? GenKind::P : GenKind::Q, index};
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += to_string(w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

NCPolynomial::NCPolynomial(Coefficient c) { add({}, c); }

NCPolynomial::NCPolynomial(Generator g) { add({g}, Coefficient::one()); }

NCPolynomial::NCPolynomial(Word w, Coefficient c) { add(w, c); }

std::size_t NCPolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

bool NCPolynomial::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Coefficient NCPolynomial::scalar_part() const { return coefficient({}); }

Coefficient NCPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Coefficient{} : it->second;
}

std::set<Generator> NCPolynomial::generators() const {
  std::set<Generator> out;
  for (const auto& [w, c] : terms_) out.insert(w.begin(), w.end());
  return out;
}

std::set<std::string> NCPolynomial::symbols() const {
  std::set<std::string> out;
  for (const auto& [w, c] : terms_) {
    auto s = c.symbols();
    out.insert(s.begin(), s.end());
  }
  return out;
}

void NCPolynomial::add(const Word& w, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPolynomial NCPolynomial::operator-() const {
  NCPolynomial out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const Coefficient& k) {
  if (k.is_zero()) {
    terms_.clear();
    return *this;
  }
  Terms scaled;
  for (auto& [w, c] : terms_) {
    Coefficient prod = c * k;
    if (!prod.is_zero()) scaled.emplace(w, std::move(prod));
  }
  terms_ = std::move(scaled);
  return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ca * cb);
    }
  }
  return out;
}

NCPolynomial NCPolynomial::adjoint() const {
  NCPolynomial out;
  for (const auto& [w, c] : terms_) out.add(Word(w.rbegin(), w.rend()), c.conj());
  return out;
}

std::string to_string(const NCPolynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<const Word*, const Coefficient*>> order;
  for (const auto& [w, c] : p.terms()) order.emplace_back(&w, &c);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first->size() > b.first->size();
  });

  std::string out;
  for (const auto& [w, c] : order) {
    std::string term;
    if (w->empty()) {
      term = to_string(*c);
      if (c->terms().size() > 1 && !out.empty()) term = "(" + term + ")";
    } else if (*c == Coefficient::one()) {
      term = to_string(*w);
    } else if (*c == -Coefficient::one()) {
      term = "-" + to_string(*w);
    } else if (c->terms().size() == 1) {
      term = to_string(*c) + "*" + to_string(*w);
    } else {
      term = "(" + to_string(*c) + ")*" + to_string(*w);
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace qaxiom::symalg
