#include "qaxiom/symalg/scalar.hpp"

#include <algorithm>
#include <sstream>

#include "qaxiom/error.hpp"

namespace qaxiom::symalg {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

Gaussian Gaussian::inverse() const {
  Rational norm = re * re + im * im;
  if (norm == 0) throw NotInvertible("division by zero coefficient");
  return {re / norm, -im / norm};
}

std::complex<double> Gaussian::to_complex() const {
  return {static_cast<double>(re), static_cast<double>(im)};
}

namespace {

// A rational as a factor: bare when it is an integer, parenthesized otherwise.
std::string rational_factor(const Rational& r) {
  if (denominator(r) == 1) return to_string(r);
  return "(" + to_string(r) + ")";
}

}  // namespace

std::string to_string(const Gaussian& g) {
  if (g.im == 0) return to_string(g.re);
  std::string imag;
  if (g.im == 1) {
    imag = "i";
  } else if (g.im == -1) {
    imag = "-i";
  } else {
    imag = rational_factor(g.im) + "*i";
  }
  if (g.re == 0) return imag;
  std::string out = "(" + to_string(g.re);
  if (imag.front() == '-') {
    out += " - " + imag.substr(1);
  } else {
    out += " + " + imag;
  }
  return out + ")";
}

bool is_builtin_constant(std::string_view name) {
  return std::find(std::begin(kBuiltinConstants), std::end(kBuiltinConstants), name) !=
         std::end(kBuiltinConstants);
}

bool ConstantOrder::operator()(const std::string& a, const std::string& b) const {
  auto rank = [](const std::string& s) -> std::ptrdiff_t {
    auto it = std::find(std::begin(kBuiltinConstants), std::end(kBuiltinConstants), s);
    return it - std::begin(kBuiltinConstants);
  };
  auto ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

Monomial Monomial::constant(const std::string& name, int exponent) {
  Monomial m;
  if (exponent != 0) m.exps_[name] = exponent;
  return m;
}

int Monomial::exponent(const std::string& name) const {
  auto it = exps_.find(name);
  return it == exps_.end() ? 0 : it->second;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out = *this;
  for (const auto& [name, e] : other.exps_) {
    int& slot = out.exps_[name];
    slot += e;
    if (slot == 0) out.exps_.erase(name);
  }
  return out;
}

Monomial Monomial::pow(int n) const {
  Monomial out;
  if (n == 0) return out;
  for (const auto& [name, e] : exps_) out.exps_[name] = e * n;
  return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
  ConstantOrder less;
  auto ia = a.exps_.begin(), ib = b.exps_.begin();
  for (; ia != a.exps_.end() && ib != b.exps_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return less(ia->first, ib->first);
    if (ia->second != ib->second) return ia->second > ib->second;
  }
  return ia == a.exps_.end() && ib != b.exps_.end();
}

Coefficient::Coefficient(Gaussian g) { add_term(Monomial{}, g); }

Coefficient::Coefficient(Gaussian g, Monomial m) { add_term(m, g); }

Coefficient Coefficient::constant(const std::string& name, int exponent) {
  return Coefficient(Gaussian(1), Monomial::constant(name, exponent));
}

void Coefficient::add_term(const Monomial& m, const Gaussian& g) {
  if (g.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, g);
  if (!inserted) {
    it->second = it->second + g;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Coefficient::is_number() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Gaussian Coefficient::number() const {
  if (terms_.empty()) return {};
  return terms_.begin()->second;
}

bool Coefficient::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.im == 0; });
}

std::set<std::string> Coefficient::symbols() const {
  std::set<std::string> out;
  for (const auto& [m, g] : terms_)
    for (const auto& [name, e] : m.exponents()) out.insert(name);
  return out;
}

Coefficient Coefficient::operator-() const {
  Coefficient out = *this;
  for (auto& [m, g] : out.terms_) g = -g;
  return out;
}

Coefficient Coefficient::conj() const {
  Coefficient out = *this;
  for (auto& [m, g] : out.terms_) g = g.conj();
  return out;
}

Coefficient Coefficient::pow(int n) const {
  if (n == 0) return one();
  if (n < 0) {
    if (terms_.size() != 1)
      throw NotInvertible("negative power of a coefficient that is not a single monomial: " +
                          to_string(*this));
    const auto& [m, g] = *terms_.begin();
    Gaussian inv = g.inverse();
    Gaussian acc(1);
    for (int k = 0; k < -n; ++k) acc = acc * inv;
    return Coefficient(acc, m.pow(n));
  }
  Coefficient acc = one();
  for (int k = 0; k < n; ++k) acc = acc * *this;
  return acc;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  for (const auto& [m, g] : o.terms_) add_term(m, g);
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
  for (const auto& [m, g] : o.terms_) add_term(m, -g);
  return *this;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  Coefficient out;
  for (const auto& [ma, ga] : a.terms_)
    for (const auto& [mb, gb] : b.terms_) out.add_term(ma * mb, ga * gb);
  return out;
}

std::complex<double> Coefficient::evaluate(const std::map<std::string, double>& values) const {
  std::complex<double> sum = 0.0;
  for (const auto& [m, g] : terms_) {
    std::complex<double> term = g.to_complex();
    for (const auto& [name, e] : m.exponents()) {
      auto it = values.find(name);
      if (it == values.end()) throw MissingParam("no numeric value for constant '" + name + "'");
      term *= std::pow(it->second, e);
    }
    sum += term;
  }
  return sum;
}

namespace {

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (const auto& [name, e] : m.exponents()) {
    if (!out.empty()) out += '*';
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string term_string(const Monomial& m, const Gaussian& g) {
  std::string mono = monomial_string(m);
  if (mono.empty()) return to_string(g);
  if (g == Gaussian(1)) return mono;
  if (g == Gaussian(-1)) return "-" + mono;
  if (g.im == 0) {
    if (g.re < 0) return "-" + rational_factor(-g.re) + "*" + mono;
    return rational_factor(g.re) + "*" + mono;
  }
  return to_string(g) + "*" + mono;
}

}  // namespace

std::string to_string(const Coefficient& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [m, g] : c.terms()) {
    std::string t = term_string(m, g);
    if (out.empty()) {
      out = t;
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

}  // namespace qaxiom::symalg
