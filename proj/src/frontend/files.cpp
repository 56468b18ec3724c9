#include "qaxiom/frontend/files.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "qaxiom/frontend/expression.hpp"

namespace qaxiom::frontend {

using symalg::Algebra;
using symalg::Generator;
using symalg::NCPolynomial;

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error("ParseError", "line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

// Re-raises a library error with the offending line in its message,
// keeping its type.
template <typename F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
  const std::string where = "line " + std::to_string(line) + ": ";
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const SyntaxError& e) {
    throw ParseError(line, e.what());
  } catch (const DuplicatePair& e) {
    throw DuplicatePair(where + e.what());
  } catch (const NotCentral& e) {
    throw NotCentral(where + e.what());
  } catch (const UnknownSymbol& e) {
    throw UnknownSymbol(where + e.what());
  } catch (const UnknownGenerator& e) {
    throw UnknownGenerator(where + e.what());
  } catch (const NonLinearSubstitution& e) {
    throw NonLinearSubstitution(where + e.what());
  } catch (const NotInvertible& e) {
    throw NotInvertible(where + e.what());
  }
}

Generator generator_token(const std::string& s, int k, std::size_t line) {
  auto e = at_line(line, [&] { return parse_expression(s); });
  if (e->kind != Expr::Kind::generator) throw ParseError(line, "expected a generator, got '" + s + "'");
  if (e->gen.index < 1 || e->gen.index > k)
    throw UnknownGenerator("line " + std::to_string(line) + ": " + s + " is outside k = " +
                           std::to_string(k));
  return e->gen;
}

std::string strip_comment(const std::string& raw) {
  const auto hash = raw.find('#');
  return trim(hash == std::string::npos ? raw : raw.substr(0, hash));
}

}  // namespace

LoadedAlgebra parse_algebra_file(const std::string& text, int default_epsilon12) {
  int k = 2;
  int eps = default_epsilon12;
  std::string name = "custom";
  std::optional<std::vector<std::string>> order_words;
  std::size_t order_line = 0;
  std::set<std::string> constants;
  struct Comm {
    std::size_t line;
    Generator left, right;
    ExprPtr value;
  };
  std::vector<Comm> comms;

  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip_comment(raw);
    if (s.empty()) continue;
    const auto w = words(s);
    if (w[0] == "comm") {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ParseError(line, "expected 'comm G H = <expr>'");
      const auto lhs = words(s.substr(0, eq));
      if (lhs.size() != 3) throw ParseError(line, "expected two generators after 'comm'");
      const std::string rhs = trim(s.substr(eq + 1));
      if (rhs.empty()) throw ParseError(line, "missing right-hand side");
      comms.push_back({line, generator_token(lhs[1], k, line), generator_token(lhs[2], k, line),
                       at_line(line, [&] { return parse_expression(rhs); })});
      continue;
    }
    if (w[0] == "const") {
      if (w.size() < 2) throw ParseError(line, "expected constant names after 'const'");
      for (std::size_t j = 1; j < w.size(); ++j) {
        if (!is_identifier(w[j]) || w[j] == "i" || w[j] == "eps12" ||
            ((w[j][0] == 'P' || w[j][0] == 'Q') && w[j].size() > 1 &&
             std::isdigit(static_cast<unsigned char>(w[j][1]))))
          throw ParseError(line, "'" + w[j] + "' cannot name a constant");
        constants.insert(w[j]);
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "unrecognized statement '" + s + "'");
    if (!comms.empty()) throw ParseError(line, "header statements must precede 'comm' lines");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key == "k") {
      try {
        std::size_t used = 0;
        k = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ParseError(line, "k must be an integer");
      }
      if (k < 1 || k > 64) throw ParseError(line, "k must be between 1 and 64");
    } else if (key == "epsilon12") {
      if (value == "-1") {
        eps = -1;
      } else if (value == "1" || value == "+1") {
        eps = 1;
      } else {
        throw ParseError(line, "epsilon12 must be +1 or -1");
      }
    } else if (key == "order") {
      order_words = words(value);
      order_line = line;
    } else if (key == "name") {
      if (value.empty()) throw ParseError(line, "empty name");
      name = value;
    } else {
      throw ParseError(line, "unknown setting '" + key + "'");
    }
  }

  std::vector<Generator> order;
  if (order_words) {
    for (const auto& g : *order_words) order.push_back(generator_token(g, k, order_line));
    if (order.size() != static_cast<std::size_t>(2 * k))
      throw ParseError(order_line, "order must list all " + std::to_string(2 * k) + " generators");
  }

  const Algebra scratch = Algebra::heisenberg(k, eps);
  std::vector<std::pair<std::pair<Generator, Generator>, NCPolynomial>> entries;
  std::set<std::pair<Generator, Generator>> seen;
  for (const auto& c : comms) {
    auto key = std::minmax(c.left, c.right);
    if (!seen.insert(key).second)
      throw DuplicatePair("line " + std::to_string(c.line) + ": pair [" +
                          symalg::to_string(c.left) + ", " + symalg::to_string(c.right) +
                          "] is already declared");
    NCPolynomial value = at_line(c.line, [&] { return lower(c.value, scratch, constants); });
    if (!value.is_scalar())
      throw NotCentral("line " + std::to_string(c.line) + ": right-hand side " +
                       symalg::to_string(value) + " is not central");
    entries.push_back({{c.left, c.right}, value});
  }
  return {Algebra::create(k, order, eps, entries, name), constants};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedAlgebra load_algebra(const std::string& spec, int epsilon12) {
  if (spec == "heisenberg2") return {Algebra::heisenberg(2, epsilon12), {}};
  if (spec == "magnetic2") return {Algebra::magnetic(epsilon12), {}};
  return parse_algebra_file(read_file(spec), epsilon12);
}

symalg::Substitution parse_substitution_file(const std::string& text, const LoadedAlgebra& a) {
  std::map<Generator, NCPolynomial> images;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  const int k = a.algebra.pair_count();
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip_comment(raw);
    if (s.empty()) continue;
    const auto arrow = s.find("->");
    if (arrow == std::string::npos) throw ParseError(line, "expected '<generator> -> <expr>'");
    const Generator g = generator_token(trim(s.substr(0, arrow)), k, line);
    if (images.count(g))
      throw ParseError(line, "generator " + symalg::to_string(g) + " is substituted twice");
    const std::string rhs = trim(s.substr(arrow + 2));
    if (rhs.empty()) throw ParseError(line, "missing right-hand side");
    auto e = at_line(line, [&] { return parse_expression(rhs); });
    NCPolynomial image = at_line(line, [&] { return lower(e, a.algebra, a.constants); });
    if (image.degree() > 1)
      throw NonLinearSubstitution("line " + std::to_string(line) + ": image of " +
                                  symalg::to_string(g) + " has degree " +
                                  std::to_string(image.degree()));
    images[g] = image;
  }
  return symalg::Substitution(images);
}

symalg::Substitution load_substitution(const std::string& spec, const LoadedAlgebra& a) {
  if (spec == "preset:flux" || spec == "preset:eq5") {
    if (a.algebra.pair_count() != 2) throw UsageError(spec + " needs an algebra with k = 2");
    return symalg::Substitution::flux_relation(a.algebra);
  }
  if (spec == "preset:identity") return symalg::Substitution::identity();
  if (spec.rfind("preset:", 0) == 0)
    throw UsageError("unknown substitution preset '" + spec + "' (expected preset:flux or preset:identity)");
  return parse_substitution_file(read_file(spec), a);
}

}  // namespace qaxiom::frontend
