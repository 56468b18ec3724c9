#include "qaxiom/frontend/expression.hpp"

#include <cctype>
#include <climits>

#include "qaxiom/symalg/rewrite.hpp"

namespace qaxiom::frontend {

using symalg::Coefficient;
using symalg::Gaussian;
using symalg::Generator;
using symalg::NCPolynomial;
using symalg::Rational;

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += k + 1 == xs.size() ? " or " : ", ";
    out += "'" + xs[k] + "'";
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected,
                         const std::string& found)
    : Error("SyntaxError", "at position " + std::to_string(position) + ": expected " +
                               join(expected) + ", found " + found),
      position_(position),
      expected_(std::move(expected)) {}

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr Expr::literal(Rational v) { return make({Kind::literal, std::move(v), {}, {}, 0, {}}); }
ExprPtr Expr::imaginary() { return make({Kind::imaginary, 0, {}, {}, 0, {}}); }
ExprPtr Expr::constant(std::string name) { return make({Kind::constant, 0, std::move(name), {}, 0, {}}); }
ExprPtr Expr::generator(Generator g) { return make({Kind::generator, 0, {}, g, 0, {}}); }
ExprPtr Expr::sum(std::vector<ExprPtr> terms) { return make({Kind::sum, 0, {}, {}, 0, std::move(terms)}); }
ExprPtr Expr::product(std::vector<ExprPtr> factors) {
  return make({Kind::product, 0, {}, {}, 0, std::move(factors)});
}
ExprPtr Expr::power(ExprPtr base, int exponent) {
  return make({Kind::power, 0, {}, {}, exponent, {std::move(base)}});
}
ExprPtr Expr::bracket(ExprPtr left, ExprPtr right) {
  return make({Kind::bracket, 0, {}, {}, 0, {std::move(left), std::move(right)}});
}
ExprPtr Expr::negation(ExprPtr operand) {
  return make({Kind::negation, 0, {}, {}, 0, {std::move(operand)}});
}

namespace {

struct Token {
  enum class Type { integer, identifier, symbol, end } type;
  std::string text;
  std::size_t position;  // 1-based
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[k]);
    if (std::isspace(c)) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    if (std::isdigit(c)) {
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      out.push_back({Token::Type::integer, s.substr(start, k - start), start + 1});
    } else if (std::isalpha(c) || c == '_') {
      while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_')) ++k;
      out.push_back({Token::Type::identifier, s.substr(start, k - start), start + 1});
    } else if (std::string_view("+-*^/()[],").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Type::symbol, std::string(1, static_cast<char>(c)), start + 1});
      ++k;
    } else {
      throw SyntaxError(start + 1, {"integer", "identifier", "operator"},
                        "'" + std::string(1, static_cast<char>(c)) + "'");
    }
  }
  out.push_back({Token::Type::end, "", s.size() + 1});
  return out;
}

const std::vector<std::string> kOperators{"+", "-", "*", "^"};
const std::vector<std::string> kOperandStart{"integer", "i", "identifier", "(", "[", "-"};

std::vector<std::string> with_operators(const std::string& closer) {
  std::vector<std::string> out = kOperators;
  out.push_back(closer);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    expect_end(with_operators("end of input"));
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at_symbol(char c) const { return peek().type == Token::Type::symbol && peek().text[0] == c; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw SyntaxError(t.position, std::move(expected),
                      t.type == Token::Type::end ? "end of input" : "'" + t.text + "'");
  }

  void expect_symbol(char c, std::vector<std::string> expected) {
    if (!at_symbol(c)) fail(std::move(expected));
    ++pos_;
  }

  void expect_end(std::vector<std::string> expected) {
    if (peek().type != Token::Type::end) fail(std::move(expected));
  }

  ExprPtr expr() {
    std::vector<ExprPtr> terms{term()};
    while (at_symbol('+') || at_symbol('-')) {
      const bool minus = at_symbol('-');
      ++pos_;
      ExprPtr t = term();
      terms.push_back(minus ? Expr::negation(t) : t);
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

  ExprPtr term() {
    std::vector<ExprPtr> factors{unary()};
    while (at_symbol('*')) {
      ++pos_;
      factors.push_back(unary());
    }
    return factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
  }

  ExprPtr unary() {
    if (at_symbol('-')) {
      ++pos_;
      return Expr::negation(unary());
    }
    return power();
  }

  int exponent() {
    bool paren = false;
    if (at_symbol('(')) {
      paren = true;
      ++pos_;
    }
    bool negative = false;
    if (at_symbol('-')) {
      negative = true;
      ++pos_;
    }
    if (peek().type != Token::Type::integer) fail({"integer exponent"});
    const Token& t = peek();
    if (t.text.size() > 9) throw SyntaxError(t.position, {"integer exponent below 10^9"}, t.text);
    int n = std::stoi(t.text);
    ++pos_;
    if (paren) expect_symbol(')', {")"});
    return negative ? -n : n;
  }

  ExprPtr power() {
    ExprPtr base = primary();
    while (at_symbol('^')) {
      ++pos_;
      base = Expr::power(base, exponent());
    }
    return base;
  }

  ExprPtr primary() {
    const Token t = peek();
    switch (t.type) {
      case Token::Type::integer: {
        ++pos_;
        Rational v{symalg::Integer(t.text)};
        if (at_symbol('/')) {
          ++pos_;
          if (peek().type != Token::Type::integer) fail({"integer denominator"});
          const Token d = peek();
          symalg::Integer den(d.text);
          if (den == 0) throw SyntaxError(d.position, {"nonzero integer denominator"}, "'0'");
          ++pos_;
          v = Rational(symalg::Integer(t.text), den);
        }
        return Expr::literal(v);
      }
      case Token::Type::identifier: {
        ++pos_;
        if (t.text == "i") return Expr::imaginary();
        if (auto g = generator_name(t.text)) return Expr::generator(*g);
        return Expr::constant(t.text);
      }
      case Token::Type::symbol:
        if (t.text == "(") {
          ++pos_;
          ExprPtr e = expr();
          expect_symbol(')', with_operators(")"));
          return e;
        }
        if (t.text == "[") {
          ++pos_;
          ExprPtr a = expr();
          expect_symbol(',', with_operators(","));
          ExprPtr b = expr();
          expect_symbol(']', with_operators("]"));
          return Expr::bracket(a, b);
        }
        break;
      case Token::Type::end:
        break;
    }
    fail(kOperandStart);
  }

  static std::optional<Generator> generator_name(const std::string& s) {
    if (s.size() < 2 || (s[0] != 'P' && s[0] != 'Q') || s[1] == '0') return std::nullopt;
    for (std::size_t k = 1; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
    if (s.size() > 6) return std::nullopt;
    const int index = std::stoi(s.substr(1));
    return s[0] == 'P' ? Generator::P(index) : Generator::Q(index);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

namespace {

// Binding strength of the printed form; children weaker than required get
// parentheses.
int strength(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::sum:
      return 1;
    case Expr::Kind::product:
      return 2;
    case Expr::Kind::negation:
      return 3;
    case Expr::Kind::literal:
      return e.value < 0 ? 3 : 5;
    case Expr::Kind::power:
      return 4;
    default:
      return 5;
  }
}

std::string print_at(const ExprPtr& e, int required);

std::string print_node(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::literal: {
      const auto num = boost::multiprecision::numerator(e.value);
      const auto den = boost::multiprecision::denominator(e.value);
      if (den == 1) return num.str();
      std::string body = symalg::Integer(boost::multiprecision::abs(num)).str() + "/" + den.str();
      return num < 0 ? "-(" + body + ")" : "(" + body + ")";
    }
    case Expr::Kind::imaginary:
      return "i";
    case Expr::Kind::constant:
      return e.name;
    case Expr::Kind::generator:
      return symalg::to_string(e.gen);
    case Expr::Kind::sum: {
      std::string out;
      for (std::size_t k = 0; k < e.children.size(); ++k) {
        const ExprPtr& c = e.children[k];
        if (k == 0) {
          out += print_at(c, 2);
        } else if (c->kind == Expr::Kind::negation) {
          out += " - " + print_at(c->children.front(), 2);
        } else {
          out += " + " + print_at(c, 2);
        }
      }
      return out;
    }
    case Expr::Kind::product: {
      std::string out;
      for (std::size_t k = 0; k < e.children.size(); ++k) {
        if (k) out += "*";
        out += print_at(e.children[k], 3);
      }
      return out;
    }
    case Expr::Kind::power:
      return print_at(e.children.front(), 5) + "^" + std::to_string(e.exponent);
    case Expr::Kind::bracket:
      return "[" + print_at(e.children[0], 1) + ", " + print_at(e.children[1], 1) + "]";
    case Expr::Kind::negation:
      return "-" + print_at(e.children.front(), 3);
  }
  return {};
}

std::string print_at(const ExprPtr& e, int required) {
  std::string s = print_node(*e);
  return strength(*e) < required ? "(" + s + ")" : s;
}

}  // namespace

std::string print_expression(const ExprPtr& e) { return print_at(e, 1); }

namespace {

class Lowering {
 public:
  Lowering(const symalg::Algebra* algebra, int epsilon12, const std::set<std::string>& extra)
      : algebra_(algebra), epsilon12_(epsilon12), extra_(extra) {}

  NCPolynomial run(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::literal:
        return NCPolynomial(Coefficient(Gaussian(e.value)));
      case Expr::Kind::imaginary:
        return NCPolynomial(Coefficient::i());
      case Expr::Kind::constant:
        return NCPolynomial(constant(e.name));
      case Expr::Kind::generator:
        if (!algebra_)
          throw NotCentral("generator " + symalg::to_string(e.gen) + " in a scalar expression");
        if (!algebra_->has_generator(e.gen))
          throw UnknownGenerator(symalg::to_string(e.gen) + " is not a generator of algebra '" +
                                 algebra_->name() + "'");
        return NCPolynomial(e.gen);
      case Expr::Kind::sum: {
        NCPolynomial out;
        for (const auto& c : e.children) out += run(*c);
        return out;
      }
      case Expr::Kind::product: {
        NCPolynomial out = NCPolynomial::identity();
        for (const auto& c : e.children) out = order(out * run(*c));
        return out;
      }
      case Expr::Kind::power: {
        NCPolynomial base = run(*e.children.front());
        if (e.exponent < 0) {
          if (!base.is_scalar())
            throw NotInvertible("negative power of an operator: " + symalg::to_string(base));
          return NCPolynomial(base.scalar_part().pow(e.exponent));
        }
        NCPolynomial out = NCPolynomial::identity();
        for (int k = 0; k < e.exponent; ++k) out = order(out * base);
        return out;
      }
      case Expr::Kind::bracket: {
        NCPolynomial a = run(*e.children[0]), b = run(*e.children[1]);
        return order(a * b - b * a);
      }
      case Expr::Kind::negation:
        return -run(*e.children.front());
    }
    return {};
  }

  NCPolynomial order(const NCPolynomial& p) const {
    return algebra_ ? symalg::normal_order(p, *algebra_) : p;
  }

 private:
  Coefficient constant(const std::string& name) const {
    if (name == "eps12") return Coefficient(epsilon12_);
    for (const auto& b : symalg::kBuiltinConstants)
      if (name == b) return Coefficient::constant(name);
    if (extra_.count(name)) return Coefficient::constant(name);
    throw UnknownSymbol("unknown symbol '" + name + "'");
  }

  const symalg::Algebra* algebra_;
  int epsilon12_;
  const std::set<std::string>& extra_;
};

}  // namespace

NCPolynomial lower(const ExprPtr& e, const symalg::Algebra& a,
                   const std::set<std::string>& extra_constants) {
  Lowering l(&a, a.epsilon12(), extra_constants);
  return l.order(l.run(*e));
}

Coefficient lower_scalar(const ExprPtr& e, int epsilon12, const std::set<std::string>& extra_constants) {
  NCPolynomial p = Lowering(nullptr, epsilon12, extra_constants).run(*e);
  if (!p.is_scalar()) throw NotCentral("expression is not a scalar: " + symalg::to_string(p));
  return p.scalar_part();
}

}  // namespace qaxiom::frontend
