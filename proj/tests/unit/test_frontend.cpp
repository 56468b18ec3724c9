#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ast_generator.hpp"
#include "qaxiom/frontend/dispatch.hpp"
#include "qaxiom/frontend/expression.hpp"
#include "qaxiom/frontend/files.hpp"
#include "qaxiom/symalg/rewrite.hpp"

using namespace qaxiom;
using namespace qaxiom::frontend;
using symalg::Algebra;
using symalg::Coefficient;
using symalg::Generator;
using symalg::NCPolynomial;

namespace {

const Generator P1 = Generator::P(1), P2 = Generator::P(2), Q1 = Generator::Q(1), Q2 = Generator::Q(2);

NCPolynomial L(const std::string& text, const Algebra& a = Algebra::magnetic()) {
  return lower(parse_expression(text), a);
}

SyntaxError syntax_error_of(const std::string& text) {
  try {
    parse_expression(text);
  } catch (const SyntaxError& e) {
    return e;
  }
  FAIL("no SyntaxError for '" << text << "'");
  return SyntaxError(0, {}, "");
}

// Writes `text` to a fresh file in the temp directory and removes it when
// the guard goes out of scope.
struct TempFile {
  std::filesystem::path path;
  TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / ("qaxiom_test_" + name)) {
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

const char* kMagneticFile = R"(# magnetic algebra written out by hand
k = 2
epsilon12 = -1
name = magnetic-file
comm P1 Q1 = -i*hbar
comm P2 Q2 = -i*hbar
comm P1 Q2 = 0
comm P2 Q1 = 0
comm P1 P2 = i*eps12*hbar*e*B
comm Q1 Q2 = -i*eps12*hbar*(e*B)^-1
)";

}  // namespace

TEST_SUITE("parse_expression") {
  TEST_CASE("bracket of two generators") {
    auto e = parse_expression("[P1,Q1]");
    REQUIRE(e->kind == Expr::Kind::bracket);
    REQUIRE(e->children.size() == 2);
    CHECK(e->children[0]->kind == Expr::Kind::generator);
    CHECK(e->children[0]->gen == P1);
    CHECK(e->children[1]->gen == Q1);
  }

  TEST_CASE("sum of products with an exponent") {
    auto e = parse_expression("(1/2)*P1^2 + i*hbar*Q2");
    REQUIRE(e->kind == Expr::Kind::sum);
    REQUIRE(e->children.size() == 2);
    const auto& first = e->children[0];
    REQUIRE(first->kind == Expr::Kind::product);
    CHECK(first->children[0]->kind == Expr::Kind::literal);
    CHECK(first->children[0]->value == symalg::Rational(1, 2));
    REQUIRE(first->children[1]->kind == Expr::Kind::power);
    CHECK(first->children[1]->exponent == 2);
    CHECK(first->children[1]->children[0]->gen == P1);
    const auto& second = e->children[1];
    REQUIRE(second->kind == Expr::Kind::product);
    CHECK(second->children[0]->kind == Expr::Kind::imaginary);
    CHECK(second->children[1]->kind == Expr::Kind::constant);
    CHECK(second->children[1]->name == "hbar");
    CHECK(second->children[2]->gen == Q2);
  }

  TEST_CASE("precedence: ^ over * over +/-, unary minus before factors") {
    const Algebra a = Algebra::heisenberg();
    CHECK(L("2*Q1^2+1", a) == L("(2*(Q1^2))+1", a));
    CHECK(L("-Q1^2", a) == -L("Q1*Q1", a));
    CHECK(L("Q1 - Q2 - Q1", a) == -L("Q2", a));
    CHECK(L("2^3", a) == NCPolynomial(Coefficient(8)));
    CHECK(L("Q1^2^2", a) == L("Q1*Q1*Q1*Q1", a));
  }

  TEST_CASE("whitespace is insignificant") {
    CHECK(L("  [ P1 ,\tP2 ]  ") == L("[P1,P2]"));
    CHECK(L("( 1 / 2 ) * hbar") == L("(1/2)*hbar"));
  }

  TEST_CASE("unbalanced bracket reports end-of-input position and expected tokens") {
    auto e = syntax_error_of("[P1,Q1");
    // Six characters; the end of input is character 7.
    CHECK(e.position() == 7);
    const auto& ex = e.expected();
    CHECK(std::find(ex.begin(), ex.end(), "]") != ex.end());
  }

  TEST_CASE("missing comma inside a bracket") {
    auto e = syntax_error_of("[P1 Q1]");
    CHECK(e.position() == 5);
    CHECK(std::find(e.expected().begin(), e.expected().end(), ",") != e.expected().end());
  }

  TEST_CASE("syntax error positions") {
    CHECK(syntax_error_of("P1 +").position() == 5);
    CHECK(syntax_error_of("P1 + * Q1").position() == 6);
    CHECK(syntax_error_of("(P1").position() == 4);
    CHECK(syntax_error_of("P1)").position() == 3);
    CHECK(syntax_error_of("").position() == 1);
    CHECK(syntax_error_of("1.5*P1").position() == 2);
    CHECK(syntax_error_of("P1^x").position() == 4);
    CHECK(syntax_error_of("1/0").position() == 3);
    CHECK(syntax_error_of("P1 $ Q1").position() == 4);
  }

  TEST_CASE("printed form parses back") {
    for (const char* text : {"[P1,Q1]", "(1/2)*P1^2 + i*hbar*Q2", "-(Q1 - Q2)^2", "e^-1*B^(-2)*[Q1,[P2,Q2]]",
                             "-3/4*P2 - -P1", "[Q1*Q2, P1^3]"}) {
      const auto e = parse_expression(text);
      const std::string printed = print_expression(e);
      CHECK_MESSAGE(L(printed) == L(text), text << " printed as " << printed);
      CHECK(print_expression(parse_expression(printed)) == printed);
    }
  }
}

TEST_SUITE("lower") {
  TEST_CASE("brackets use the algebra table") {
    CHECK(L("[P1,P2]") == NCPolynomial(Coefficient::i() * Coefficient(-1) * Coefficient::constant("hbar") *
                                       Coefficient::constant("e") * Coefficient::constant("B")));
    CHECK(L("[P1,Q1]", Algebra::heisenberg()) ==
          NCPolynomial(-Coefficient::i() * Coefficient::constant("hbar")));
    CHECK(L("[Q1,Q2]", Algebra::heisenberg()).is_zero());
  }

  TEST_CASE("eps12 follows the algebra sign") {
    CHECK(L("eps12", Algebra::magnetic(-1)) == NCPolynomial(Coefficient(-1)));
    CHECK(L("eps12", Algebra::magnetic(1)) == NCPolynomial(Coefficient(1)));
  }

  TEST_CASE("result is normal ordered") {
    const Algebra a = Algebra::magnetic();
    const auto p = L("P2*Q1*P1*Q2", a);
    for (const auto& [w, c] : p.terms()) CHECK(symalg::is_normal_ordered(w, a));
    CHECK(p == symalg::normal_order(p, a));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(L("lambda*P1"), UnknownSymbol);
    CHECK_THROWS_AS(L("P3"), UnknownGenerator);
    CHECK_THROWS_AS(L("P1^-1"), NotInvertible);
    CHECK_THROWS_AS(L("(hbar+e)^-1"), NotInvertible);
    CHECK(lower(parse_expression("lambda*P1"), Algebra::magnetic(), {"lambda"}).degree() == 1);
    CHECK_THROWS_AS(lower_scalar(parse_expression("hbar*Q1"), -1), NotCentral);
    CHECK(lower_scalar(parse_expression("2*eps12*hbar"), -1) == Coefficient(-2) * Coefficient::constant("hbar"));
  }
}

TEST_SUITE("parser round trip property") {
  TEST_CASE("500 random ASTs of depth <= 6 lower identically after print and parse") {
    std::mt19937_64 rng(8128);
    const Algebra a = Algebra::magnetic();
    int max_depth_seen = 0;
    for (int trial = 0; trial < 500; ++trial) {
      AstGenerator gen(rng, 6);
      const ExprPtr ast = gen.expression();
      max_depth_seen = std::max(max_depth_seen, ast_depth(ast));
      const std::string printed = print_expression(ast);
      ExprPtr reparsed;
      REQUIRE_NOTHROW_MESSAGE(reparsed = parse_expression(printed), printed);
      CHECK_MESSAGE(lower(reparsed, a) == lower(ast, a), printed);
      CHECK(ast_depth(ast) <= 6);
    }
    CHECK(max_depth_seen == 6);
  }
}

TEST_SUITE("algebra files") {
  TEST_CASE("hand-written magnetic table equals the preset") {
    const auto la = parse_algebra_file(kMagneticFile);
    const Algebra m = Algebra::magnetic(-1);
    CHECK(la.algebra.name() == "magnetic-file");
    for (auto g : m.order())
      for (auto h : m.order()) CHECK(la.algebra.bracket(g, h) == m.bracket(g, h));
  }

  TEST_CASE("presets resolve by name") {
    const Algebra h = load_algebra("heisenberg2").algebra;
    CHECK(h.pair_count() == 2);
    CHECK(h.bracket(P1, Q1) == -Coefficient::i() * Coefficient::constant("hbar"));
    CHECK(h.bracket(P1, P2).is_zero());
    const Algebra m = load_algebra("magnetic2", 1).algebra;
    CHECK(m.epsilon12() == 1);
    CHECK(m.bracket(Q1, Q2) == Algebra::magnetic(1).bracket(Q1, Q2));
  }

  TEST_CASE("duplicate declaration is reported at the second line") {
    const std::string text = "k = 2\ncomm P1 Q1 = -i*hbar\n\ncomm P1 Q1 = -i*hbar\n";
    try {
      parse_algebra_file(text);
      FAIL("expected DuplicatePair");
    } catch (const DuplicatePair& e) {
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_algebra_file("comm P1 Q1 = 1\ncomm Q1 P1 = -1\n"), DuplicatePair);
  }

  TEST_CASE("statement errors carry their line") {
    auto line_of = [](const std::string& text) -> std::size_t {
      try {
        parse_algebra_file(text);
      } catch (const ParseError& e) {
        return e.line();
      }
      return 0;
    };
    CHECK(line_of("k = 2\nbogus\n") == 2);
    CHECK(line_of("k = two\n") == 1);
    CHECK(line_of("comm P1 Q1 = -i*hbar\nk = 2\n") == 2);
    CHECK(line_of("\n\ncomm P1 = 1\n") == 3);
    CHECK(line_of("comm P1 Q1 = (1 +\n") == 1);
    CHECK(line_of("epsilon12 = 0\n") == 1);
    CHECK(line_of("order = Q1 Q2 P1\n") == 1);
  }

  TEST_CASE("semantic errors") {
    CHECK_THROWS_AS(parse_algebra_file("comm P1 Q1 = P2\n"), NotCentral);
    CHECK_THROWS_AS(parse_algebra_file("comm P1 Q1 = lambda\n"), UnknownSymbol);
    CHECK_THROWS_AS(parse_algebra_file("k = 1\ncomm P1 Q2 = 1\n"), UnknownGenerator);
    CHECK_NOTHROW(parse_algebra_file("const lambda\ncomm P1 Q1 = lambda\n"));
    try {
      parse_algebra_file("k = 2\n\ncomm P1 Q1 = P2*hbar\n");
    } catch (const NotCentral& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("epsilon12 default applies only without an explicit line") {
    CHECK(parse_algebra_file("comm P1 Q1 = 1\n", 1).algebra.epsilon12() == 1);
    CHECK(parse_algebra_file("epsilon12 = -1\ncomm P1 Q1 = 1\n", 1).algebra.epsilon12() == -1);
  }

  TEST_CASE("custom order") {
    const auto la = parse_algebra_file("order = P1 P2 Q1 Q2\ncomm P1 Q1 = -i*hbar\n");
    CHECK(la.algebra.order().front() == P1);
    const auto p = lower(parse_expression("Q1*P1"), la.algebra);
    CHECK(p == NCPolynomial(symalg::Word{P1, Q1}, Coefficient(1)) +
                   NCPolynomial(Coefficient::i() * Coefficient::constant("hbar")));
  }
}

TEST_SUITE("substitution files") {
  const LoadedAlgebra la{Algebra::magnetic(-1), {}};

  TEST_CASE("linear images") {
    const auto s = parse_substitution_file("# comment\nP1 -> e*B*eps12*Q2\nP2 -> -e*B*eps12*Q1\n", la);
    const auto flux_rule = symalg::Substitution::flux_relation(la.algebra);
    CHECK(s.image(P1) == flux_rule.image(P1));
    CHECK(s.image(P2) == flux_rule.image(P2));
    CHECK(s.image(Q1) == NCPolynomial(Q1));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(parse_substitution_file("P1 -> Q1*Q2\n", la), NonLinearSubstitution);
    CHECK_THROWS_AS(parse_substitution_file("P1 = Q1\n", la), ParseError);
    CHECK_THROWS_AS(parse_substitution_file("P1 -> Q1\nP1 -> Q2\n", la), ParseError);
    CHECK_THROWS_AS(parse_substitution_file("P1 -> lambda*Q1\n", la), UnknownSymbol);
    CHECK_THROWS_AS(parse_substitution_file("P3 -> Q1\n", la), UnknownGenerator);
    CHECK_THROWS_AS(load_substitution("preset:nope", la), UsageError);
    CHECK_THROWS_AS(load_substitution("/nonexistent/qaxiom.subst", la), UsageError);
  }
}

TEST_SUITE("dispatch") {
  TEST_CASE("commute on magnetic2 returns the table value as JSON") {
    const auto r = dispatch({"commute", "[P1,P2]", "--algebra", "magnetic2", "--json"});
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["command"] == "commute");
    CHECK(j["result"]["text"] == "-i*hbar*e*B");
    CHECK(j["result"]["central"] == true);
    CHECK(j["algebra"]["epsilon12"] == -1);
    CHECK(j["input"]["argv"] == Json({"commute", "[P1,P2]", "--algebra", "magnetic2", "--json"}));
    const auto plus = dispatch({"commute", "[P1,P2]", "--epsilon12", "+1", "--json"});
    CHECK(Json::parse(plus.out)["result"]["text"] == "i*hbar*e*B");
  }

  TEST_CASE("two-operand commute equals the bracket form") {
    const auto a = dispatch({"commute", "Q1*P1", "P1*Q2", "--json"});
    const auto b = dispatch({"commute", "[Q1*P1,P1*Q2]", "--json"});
    CHECK(Json::parse(a.out)["result"] == Json::parse(b.out)["result"]);
  }

  TEST_CASE("equiv on the flux relation is INCONSISTENT with exit 1") {
    const auto r = dispatch({"equiv", "--algebra", "magnetic2", "--subst", "preset:eq5"});
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("residual") != std::string::npos);
    CHECK(r.out.find("[P1,P2]") != std::string::npos);
    CHECK(r.report["entries"].size() == 6);
  }

  TEST_CASE("unknown command prints usage and exits 2") {
    const auto r = dispatch({"nosuchcmd"});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(r.err.find("commute") != std::string::npos);
  }

  TEST_CASE("syntax errors exit 2 with position in JSON") {
    const auto r = dispatch({"commute", "[P1,Q1", "--json"});
    CHECK(r.exit_code == 2);
    const Json j = Json::parse(r.out);
    CHECK(j["error"]["kind"] == "SyntaxError");
    CHECK(j["error"]["position"] == 7);
  }

  TEST_CASE("golden exit codes") {
    const TempFile dup("dup.alg", "comm P1 Q1 = -i*hbar\ncomm P1 Q1 = -i*hbar\n");
    const TempFile good("good.alg", kMagneticFile);
    const TempFile subst("eq5.subst", "P1 -> e*B*eps12*Q2\nP2 -> -e*B*eps12*Q1\n");
    const TempFile ident("id.subst", "P1 -> P1\n");
    const TempFile open_csv("open.csv", "x,y\n0,0\n1,0\n1,1\n");
    struct Golden {
      std::vector<std::string> argv;
      int exit_code;
    };
    const std::vector<Golden> cases{
        {{"commute", "[P1,Q1]"}, 0},
        {{"commute", "[P1,Q1]", "--algebra", "heisenberg2", "--json"}, 0},
        {{"commute"}, 2},
        {{"commute", "[P1,Q1"}, 2},
        {{"commute", "[P1,P3]"}, 2},
        {{"commute", "[P1,Q1]", "--algebra", dup.str()}, 2},
        {{"commute", "[P1,Q1]", "--algebra", "/nonexistent.alg"}, 2},
        {{"commute", "[P1,Q1]", "--epsilon12", "2"}, 2},
        {{"commute", "[P1,Q1]", "--no-such-flag"}, 2},
        {{"normal-order", "P1*Q1", "--algebra", good.str()}, 0},
        {{"jacobi", "--algebra", "magnetic2"}, 0},
        {{"jacobi", "--algebra", "heisenberg2"}, 0},
        {{"dims", "--algebra", "magnetic2"}, 0},
        {{"dims", "--algebra", "magnetic2", "--param", "B=-1"}, 1},
        {{"subst", "P1*P2", "--subst", subst.str()}, 0},
        {{"equiv", "--algebra", "magnetic2", "--subst", "preset:eq5"}, 1},
        {{"equiv", "--algebra", "magnetic2", "--subst", subst.str()}, 1},
        {{"equiv", "--algebra", "magnetic2", "--subst", ident.str()}, 0},
        {{"equiv", "--algebra", "magnetic2", "--subst", "preset:identity"}, 0},
        {{"equiv", "--algebra", "magnetic2", "--subst", "preset:flux"}, 1},
        {{"equiv"}, 1},
        {{"mixed"}, 0},
        {{"mixed", "--mode", "momentum"}, 0},
        {{"mixed", "--mode", "sideways"}, 2},
        {{"mixed", "--matrix", "0;1;-1"}, 2},
        {{"audit", "--algebra", "heisenberg2", "--ntrunc", "32"}, 1},
        {{"audit", "--algebra", "magnetic2", "--epsilon12", "+1", "--ntrunc", "16", "--guiding", "8"}, 0},
        {{"audit", "--ntrunc", "1"}, 2},
        {{"spectrum", "--ntrunc", "32", "--levels", "3"}, 0},
        {{"spectrum", "--ntrunc", "32", "--levels", "3", "--convention", "paper"}, 0},
        {{"spectrum", "--ntrunc", "32", "--levels", "30"}, 2},
        {{"uncertainty", "--ntrunc", "32"}, 0},
        {{"uncertainty", "--ntrunc", "32", "--samples", "5"}, 0},
        {{"uncertainty", "--ntrunc", "32", "--state", "nonsense"}, 2},
        {{"scan", "--values", "1,0.5"}, 0},
        {{"scan", "--values", "1,abc"}, 2},
        {{"flux"}, 0},
        {{"flux", "--path", "circle:r=1,n=512"}, 1},
        {{"flux", "--path", open_csv.str()}, 2},
        {{"flux", "--hbar", "0"}, 2},
        {{"plaquette", "--npoints", "8"}, 0},
        {{"plaquette", "--npoints", "1"}, 2},
        {{"nosuchcmd"}, 2},
        {{}, 2},
    };
    for (const auto& g : cases) {
      const auto r = dispatch(g.argv);
      std::string joined;
      for (const auto& s : g.argv) joined += s + " ";
      CHECK_MESSAGE(r.exit_code == g.exit_code, joined << "\n" << r.out << r.err);
    }
  }

  TEST_CASE("JSON output is byte-identical across runs") {
    const std::vector<std::vector<std::string>> runs{
        {"commute", "[Q1*P2, P1^2]", "--json"},
        {"equiv", "--json"},
        {"jacobi", "--json"},
        {"uncertainty", "--ntrunc", "24", "--samples", "4", "--json"},
        {"scan", "--quantity", "uncertaintyProduct", "--ntrunc", "24", "--json"},
        {"flux", "--subst", "preset:field", "--json"},
        {"spectrum", "--ntrunc", "24", "--levels", "3", "--json"},
    };
    for (const auto& argv : runs) {
      const auto first = dispatch(argv).out;
      const auto second = dispatch(argv).out;
      CHECK(first == second);
      const Json j = Json::parse(first);
      CHECK(j.dump(2) + "\n" == first);  // keys already sorted
    }
  }

  TEST_CASE("every result echoes its input") {
    for (std::vector<std::string> argv :
         {std::vector<std::string>{"jacobi"}, {"bogus", "x"}, {"commute", "[P1,"}}) {
      const auto r = dispatch(argv);
      CHECK(r.report["input"]["argv"] == Json(argv));
    }
  }
}
