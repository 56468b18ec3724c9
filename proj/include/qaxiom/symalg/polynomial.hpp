#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qaxiom/symalg/scalar.hpp"

namespace qaxiom::symalg {

enum class GenKind { Q, P };

/// A momentum (P) or position (Q) generator with a 1-based index.
struct Generator {
  GenKind kind = GenKind::Q;
  int index = 1;

  static Generator Q(int i) { return {GenKind::Q, i}; }
  static Generator P(int i) { return {GenKind::P, i}; }

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

std::string to_string(Generator g);
/// Parses "P1", "Q12", ...; nullopt when the text is not a generator name.
std::optional<Generator> parse_generator(std::string_view text);

using Word = std::vector<Generator>;

std::string to_string(const Word& w);

/// Noncommutative polynomial: a finite map from generator words to nonzero
/// coefficients. The empty word is the identity.
class NCPolynomial {
 public:
  using Terms = std::map<Word, Coefficient>;

  NCPolynomial() = default;
  NCPolynomial(Coefficient c);
  NCPolynomial(Generator g);
  NCPolynomial(Word w, Coefficient c);

  static NCPolynomial zero() { return {}; }
  static NCPolynomial identity() { return NCPolynomial(Coefficient::one()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Longest stored word; 0 for the zero polynomial and for scalars.
  std::size_t degree() const;
  /// True iff only the identity word carries a coefficient (zero included).
  bool is_scalar() const;
  /// Coefficient of the identity word.
  Coefficient scalar_part() const;
  Coefficient coefficient(const Word& w) const;
  std::set<Generator> generators() const;
  std::set<std::string> symbols() const;

  void add(const Word& w, const Coefficient& c);

  NCPolynomial operator-() const;
  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  NCPolynomial& operator*=(const Coefficient& c);
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend NCPolynomial operator*(NCPolynomial a, const Coefficient& c) { return a *= c; }
  friend NCPolynomial operator*(const Coefficient& c, NCPolynomial a) { return a *= c; }

  /// Hermitian adjoint for self-adjoint generators: reverses words and
  /// conjugates coefficients.
  NCPolynomial adjoint() const;

  friend bool operator==(const NCPolynomial&, const NCPolynomial&) = default;

 private:
  Terms terms_;
};

/// Parser-compatible rendering, highest degree first, e.g. "Q1*P1 - i*hbar".
std::string to_string(const NCPolynomial& p);

}  // namespace qaxiom::symalg
