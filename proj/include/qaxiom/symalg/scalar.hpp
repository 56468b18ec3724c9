#pragma once

// Exact scalars for the symbolic core: Gaussian rationals times Laurent
// monomials in named positive constants (hbar, e, B, ...).

#include <complex>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qaxiom::symalg {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

std::string to_string(const Rational& r);

/// Exact complex number re + i*im with rational parts.
struct Gaussian {
  Rational re{0};
  Rational im{0};

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  Gaussian(int r) : re(r) {}

  static Gaussian i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  Gaussian conj() const { return {re, -im}; }
  Gaussian inverse() const;
  std::complex<double> to_complex() const;

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const Gaussian& g);

/// Built-in constant names. User-declared constants sort after these.
inline constexpr std::string_view kBuiltinConstants[] = {"hbar", "e", "B", "M",
                                                         "alphadot"};
bool is_builtin_constant(std::string_view name);

/// Orders constant names: built-ins in declaration order, then the rest
/// lexicographically.
struct ConstantOrder {
  bool operator()(const std::string& a, const std::string& b) const;
};

/// Product of constants with integer (possibly negative) exponents. Zero
/// exponents are never stored.
class Monomial {
 public:
  using Exponents = std::map<std::string, int, ConstantOrder>;

  Monomial() = default;
  static Monomial constant(const std::string& name, int exponent = 1);

  const Exponents& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }
  int exponent(const std::string& name) const;

  Monomial operator*(const Monomial& other) const;
  Monomial pow(int n) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  Exponents exps_;
};

/// A finite sum of Gaussian-rational multiples of monomials. This is the
/// central-element coefficient attached to every word of a polynomial.
class Coefficient {
 public:
  using Terms = std::map<Monomial, Gaussian>;

  Coefficient() = default;
  Coefficient(Gaussian g);
  Coefficient(int n) : Coefficient(Gaussian(n)) {}
  Coefficient(Gaussian g, Monomial m);

  static Coefficient zero() { return {}; }
  static Coefficient one() { return Coefficient(1); }
  static Coefficient i() { return Coefficient(Gaussian::i()); }
  static Coefficient constant(const std::string& name, int exponent = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True iff the value has no constants (a plain Gaussian rational).
  bool is_number() const;
  /// Gaussian rational value; only meaningful when is_number().
  Gaussian number() const;
  /// True iff all coefficients are real rationals.
  bool is_real() const;

  std::set<std::string> symbols() const;

  Coefficient operator-() const;
  Coefficient conj() const;
  Coefficient pow(int n) const;

  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);

  friend bool operator==(const Coefficient&, const Coefficient&) = default;

  /// Numeric value for the supplied constant values. Throws MissingParam.
  std::complex<double> evaluate(const std::map<std::string, double>& values) const;

 private:
  void add_term(const Monomial& m, const Gaussian& g);
  Terms terms_;
};

/// Renders a coefficient in the expression syntax accepted by the parser,
/// e.g. "-i*hbar", "(1/2)*hbar*e*B", "i*hbar*e^-1*B^-1".
std::string to_string(const Coefficient& c);

}  // namespace qaxiom::symalg
