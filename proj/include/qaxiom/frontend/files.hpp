#pragma once

#include <set>
#include <string>

#include "qaxiom/error.hpp"
#include "qaxiom/symalg/algebra.hpp"
#include "qaxiom/symalg/substitution.hpp"

namespace qaxiom::frontend {

/// Malformed statement in an algebra or substitution file (1-based line).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An algebra together with the user constants it declares.
struct LoadedAlgebra {
  symalg::Algebra algebra;
  std::set<std::string> constants;
};

/// Statements, one per line ('#' starts a comment):
///   k = 2
///   order = Q1 Q2 P1 P2
///   epsilon12 = -1
///   name = my-algebra
///   const lambda mu
///   comm P1 Q1 = -i*hbar
/// Header statements must precede the first `comm`. `epsilon12` defaults
/// to `default_epsilon12`. Errors raised for a statement (ParseError,
/// DuplicatePair, NotCentral, UnknownSymbol, UnknownGenerator, SyntaxError)
/// carry "line N" in their message.
LoadedAlgebra parse_algebra_file(const std::string& text, int default_epsilon12 = -1);

/// Preset name (heisenberg2, magnetic2) or path to an algebra file.
LoadedAlgebra load_algebra(const std::string& spec, int epsilon12 = -1);

/// Statements `P1 -> <expr>`, one per line, '#' comments.
/// Throws ParseError (including repeated generators), NonLinearSubstitution,
/// UnknownSymbol, UnknownGenerator.
symalg::Substitution parse_substitution_file(const std::string& text, const LoadedAlgebra& a);

/// `preset:flux` (P_m -> e B eps_mn Q_n; `preset:eq5` is an alias),
/// `preset:identity`, or a file path.
symalg::Substitution load_substitution(const std::string& spec, const LoadedAlgebra& a);

/// Whole file contents. Throws UsageError when it cannot be read.
std::string read_file(const std::string& path);

}  // namespace qaxiom::frontend
