#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qaxiom/error.hpp"
#include "qaxiom/flux/flux.hpp"
#include "qaxiom/symalg/algebra.hpp"

using namespace qaxiom;
using namespace qaxiom::flux;
using symalg::Coefficient;
using symalg::Generator;
using symalg::NCPolynomial;

namespace {

constexpr double pi = std::numbers::pi;

// Area of the regular n-gon inscribed in a circle of radius r.
double inscribed_area(double r, long n) {
  return 0.5 * static_cast<double>(n) * r * r * std::sin(2 * pi / static_cast<double>(n));
}

double circ_dist(double a, double b) { return std::abs(std::remainder(a - b, 2 * pi)); }

LoopPath rectangle(double x0, double y0, double x1, double y1) {
  return LoopPath({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

}  // namespace

TEST_SUITE("paths") {
  TEST_CASE("validation") {
    CHECK_THROWS_AS(LoopPath({{0, 0}}), InvalidPath);
    CHECK_THROWS_AS(LoopPath({{0, 0}, {1, 0}}), InvalidPath);
    CHECK_THROWS_AS(LoopPath({{0, 0}, {1, 0}, {1, 1}, {0, 0}}), InvalidPath);
    CHECK_THROWS_AS(LoopPath({{0, 0}, {NAN, 0}, {1, 1}}), InvalidPath);
    CHECK_NOTHROW(LoopPath({{0, 0}, {1, 0}}, false));
  }

  TEST_CASE("generator strings") {
    auto c = LoopPath::parse_generator("circle:r=2,n=1000");
    CHECK(c.points().size() == 1000);
    CHECK(c.closed());
    CHECK(c.signed_area() == doctest::Approx(inscribed_area(2.0, 1000)).epsilon(1e-12));
    auto shifted = LoopPath::parse_generator("circle:n=16,cx=3,cy=-1");
    CHECK(shifted.points()[0][0] == doctest::Approx(4.0));
    for (const char* bad : {"square:r=1", "circle:r=1", "circle:r=1,n=2.5", "circle:r=-1,n=10",
                            "circle:r=1,n=10,z=3", "circle:r=1;n=10"})
      CHECK_THROWS_AS(LoopPath::parse_generator(bad), InvalidPath);
  }

  TEST_CASE("csv") {
    auto closed = LoopPath::parse_csv("x,y\n0,0\n1,0\n# comment\n\n1,1\n0,1\n0,0\n");
    CHECK(closed.closed());
    CHECK(closed.points().size() == 4);
    CHECK(closed.signed_area() == doctest::Approx(1.0));
    auto open = LoopPath::parse_csv("0 0\n1 0\n1 1\n");
    CHECK_FALSE(open.closed());
    CHECK_THROWS_AS(LoopPath::parse_csv("0,0\n1,x\n"), InvalidPath);
    CHECK_THROWS_AS(LoopPath::parse_csv("0,0,0\n"), InvalidPath);
  }
}

TEST_SUITE("loop_integral") {
  TEST_CASE("unit circle, symmetric gauge") {
    GaugeField g(GaugeKind::symmetric, 1.0, 1.0);
    auto c = LoopPath::circle(1.0, 100000);
    CHECK(std::abs(loop_integral(c, g) - pi) < 1e-8);
    CHECK(g.curl() == 1.0);
    CHECK(symalg::to_string(g.symbolic_curl()) == "B");
  }

  TEST_CASE("unit circle, paper gauge exposes a doubled curl") {
    GaugeField g(GaugeKind::paper, 1.0, 1.0, -1);
    auto c = LoopPath::circle(1.0, 100000);
    const double v = loop_integral(c, g);
    CHECK(std::abs(std::abs(v) - 2 * pi) < 1e-8);
    CHECK(v * g.curl() > 0);
    CHECK(symalg::to_string(g.symbolic_curl()) == "2*B");
    CHECK(symalg::to_string(GaugeField(GaugeKind::paper, 1.0, 1.0, 1).symbolic_curl()) == "-2*B");
  }

  TEST_CASE("degenerate path encloses nothing") {
    GaugeField g(GaugeKind::symmetric, 3.0, 2.0);
    LoopPath flat({{0, 0}, {1, 1}, {2, 2}});
    CHECK(std::abs(loop_integral(flat, g)) < 1e-12);
  }

  TEST_CASE("open path") {
    GaugeField g(GaugeKind::landau, 1.0);
    CHECK_THROWS_AS(loop_integral(LoopPath({{0, 0}, {1, 0}, {1, 1}}, false), g), OpenPath);
  }

  TEST_CASE("equals e curl times the polygon area for every gauge") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (auto kind : {GaugeKind::paper, GaugeKind::symmetric, GaugeKind::landau})
      for (int trial = 0; trial < 5; ++trial) {
        GaugeField g(kind, u(rng), 1.0 + std::abs(u(rng)), trial % 2 ? 1 : -1);
        auto c = LoopPath::circle(0.5 + std::abs(u(rng)), 64 + trial, {u(rng), u(rng)});
        const double expected = g.e() * g.curl() * c.signed_area();
        CHECK(loop_integral(c, g) == doctest::Approx(expected).epsilon(1e-12));
      }
  }

  TEST_CASE("additive under concatenation, odd under reversal") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-3, 3);
    for (auto kind : {GaugeKind::paper, GaugeKind::symmetric, GaugeKind::landau})
      for (int trial = 0; trial < 10; ++trial) {
        GaugeField g(kind, u(rng), 1.3);
        double x0 = u(rng), x1 = x0 + 1 + std::abs(u(rng)), x2 = x1 + std::abs(u(rng)) + 0.1;
        double y0 = u(rng), y1 = y0 + 0.5 + std::abs(u(rng));
        const double left = loop_integral(rectangle(x0, y0, x1, y1), g);
        const double right = loop_integral(rectangle(x1, y0, x2, y1), g);
        const double whole = loop_integral(rectangle(x0, y0, x2, y1), g);
        CHECK(left + right == doctest::Approx(whole).epsilon(1e-12));
        auto c = LoopPath::circle(1.0 + std::abs(u(rng)), 333, {u(rng), u(rng)});
        CHECK(loop_integral(c.reversed(), g) == doctest::Approx(-loop_integral(c, g)).epsilon(1e-13));
      }
  }

  TEST_CASE("ratio to the enclosed circle area converges at second order") {
    for (auto kind : {GaugeKind::paper, GaugeKind::symmetric, GaugeKind::landau}) {
      GaugeField g(kind, 1.7, 0.9);
      const double r = 1.3;
      auto error = [&](long n) {
        double ratio = loop_integral(LoopPath::circle(r, n), g) / (g.e() * pi * r * r);
        return std::abs(ratio - g.curl());
      };
      const double e3 = error(1000), e4 = error(10000), e5 = error(100000);
      const double order = std::log10(e3 / e5) / 2.0;
      CHECK(order >= 1.9);
      CHECK(e4 < e3);
      CHECK(e5 == doctest::Approx(std::abs(g.curl()) * (1 - inscribed_area(r, 100000) / (pi * r * r))).epsilon(1e-3));
    }
  }

  TEST_CASE("rigid translation keeps the symmetric-gauge flux") {
    GaugeField g(GaugeKind::symmetric, 2.5, 1.0);
    auto c = LoopPath::circle(1.0, 5000);
    const double base = loop_integral(c, g);
    for (Point shift : {Point{10, 0}, Point{-3, 7}, Point{100, -100}}) {
      auto moved = c.translated(shift);
      CHECK(std::abs(loop_integral(moved, g) - base) < 1e-12 * moved.length() * (1 + std::abs(shift[0]) + std::abs(shift[1])));
    }
  }

  TEST_CASE("serial and OpenMP kernels agree") {
    GaugeField g(GaugeKind::paper, 1.1, 0.7);
    auto c = LoopPath::circle(2.0, 250001, {0.3, -0.2});
    const double s = loop_integral(c, g, Backend::serial);
    const double p = loop_integral(c, g, Backend::openmp);
    CHECK(std::abs(s - p) < 1e-12 * std::abs(s));
  }
}

TEST_SUITE("flux_quantization") {
  TEST_CASE("examples") {
    const double h = 2 * pi;
    auto exact = flux_quantization(3 * h, h);
    CHECK(exact.nearest_n == 3);
    CHECK(exact.residual == 0.0);
    CHECK(exact.quantized);
    auto half = flux_quantization(0.5 * h, h);
    CHECK(half.residual == 0.5);
    CHECK_FALSE(half.quantized);
    GaugeField g(GaugeKind::symmetric, 1.0, 1.0);
    auto c = flux_quantization(loop_integral(LoopPath::circle(std::sqrt(2.0), 100000), g), h);
    CHECK(c.nearest_n == 1);
    CHECK(c.quantized);
    CHECK_THROWS_AS(flux_quantization(1.0, 0.0), NonPositiveQuantum);
    CHECK_THROWS_AS(flux_quantization(1.0, -2.0), NonPositiveQuantum);
  }

  TEST_CASE("residual equals |delta| / h") {
    // Dyadic values keep N h + delta exact in binary.
    for (int n = -5; n <= 5; ++n)
      for (double delta : {0.0, 0.125, -0.25, 0.375, -0.4375})
        for (double h : {1.0, 0.5, 4.0}) {
          auto r = flux_quantization(n * h + delta * h, h);
          CHECK(r.nearest_n == n);
          CHECK(r.residual == std::abs(delta));
          CHECK(r.residual <= 0.5);
        }
  }
}

TEST_SUITE("plaquette_phase") {
  TEST_CASE("closed-form phases") {
    CHECK(circ_dist(plaquette_phase(8, 1.0, GaugeField(GaugeKind::symmetric, 2 * pi), 1.0).phase, 0.0) < 1e-12);
    auto half = plaquette_phase(8, 1.0, GaugeField(GaugeKind::symmetric, pi), 1.0);
    CHECK(circ_dist(half.phase, pi) < 1e-12);
    CHECK(half.max_deviation < 1e-12);
    CHECK(plaquette_phase(8, 1.0, GaugeField(GaugeKind::symmetric, 0.0), 1.0).phase == 0.0);
  }

  TEST_CASE("uniform for constant B and equal to e curl a^2 / hbar") {
    for (auto kind : {GaugeKind::paper, GaugeKind::symmetric, GaugeKind::landau}) {
      GaugeField g(kind, 0.37, 1.4, -1);
      auto r = plaquette_phase(41, 0.8, g, 0.9);
      CHECK(r.plaquettes == 1600);
      CHECK(r.max_deviation < 1e-12);
      CHECK(circ_dist(r.phase, g.e() * g.curl() * 0.64 / 0.9) < 1e-12);
      CHECK(circ_dist(r.phase, r.expected_phase) < 1e-12);
      CHECK(circ_dist(r.total_phase, 1600 * g.e() * g.curl() * 0.64 / 0.9) < 1e-9);
    }
  }

  TEST_CASE("gauges agree exactly when their curls agree") {
    const double a = 0.5, hbar = 1.0;
    GaugeField sym(GaugeKind::symmetric, 2.0);
    GaugeField paper_same(GaugeKind::paper, 1.0, 1.0, -1);  // curl 2 B = 2
    GaugeField paper_diff(GaugeKind::paper, 2.0, 1.0, -1);  // curl 4
    auto expected = [&](const GaugeField& g) { return g.e() * g.curl() * a * a / hbar; };
    CHECK(expected(sym) == expected(paper_same));
    CHECK(expected(sym) != expected(paper_diff));
    CHECK(circ_dist(plaquette_phase(10, a, sym, hbar).phase, plaquette_phase(10, a, paper_same, hbar).phase) < 1e-12);
    CHECK(circ_dist(plaquette_phase(10, a, sym, hbar).phase, plaquette_phase(10, a, paper_diff, hbar).phase) > 0.1);
  }

  TEST_CASE("backends agree and inputs are validated") {
    GaugeField g(GaugeKind::landau, 1.9);
    auto s = plaquette_phase(64, 0.3, g, 1.0, Backend::serial);
    auto p = plaquette_phase(64, 0.3, g, 1.0, Backend::openmp);
    CHECK(circ_dist(s.total_phase, p.total_phase) < 1e-12);
    CHECK(s.max_deviation == p.max_deviation);
    CHECK_THROWS_AS(plaquette_phase(1, 1.0, g, 1.0), InvalidGrid);
    CHECK_THROWS_AS(plaquette_phase(4, 0.0, g, 1.0), InvalidGrid);
    CHECK_THROWS_AS(plaquette_phase(4, 1.0, g, 0.0), InvalidParam);
  }
}

TEST_SUITE("canonical_action_integral") {
  TEST_CASE("P = eA reproduces the loop integral") {
    auto c = LoopPath::circle(1.0, 100000);
    for (int eps : {-1, 1}) {
      GaugeField g(GaugeKind::paper, 1.0, 1.0, eps);
      auto rule = field_momentum_rule(g);
      CHECK(std::abs(canonical_action_integral(c, rule, g) - loop_integral(c, g)) < 1e-14);
      // The symbolic flux relation is the same rule.
      auto relation = symalg::Substitution::flux_relation(symalg::Algebra::magnetic(eps));
      CHECK(std::abs(canonical_action_integral(c, relation, g) - loop_integral(c, g)) < 1e-14);
    }
    GaugeField lg(GaugeKind::landau, 0.6, 2.0);
    CHECK(std::abs(canonical_action_integral(c, field_momentum_rule(lg), lg) - loop_integral(c, lg)) < 1e-14);
  }

  TEST_CASE("P = 0 gives zero") {
    GaugeField g(GaugeKind::symmetric, 1.0);
    symalg::Substitution zero({{Generator::P(1), NCPolynomial()}, {Generator::P(2), NCPolynomial()}});
    CHECK(canonical_action_integral(LoopPath::circle(1.0, 1000), zero, g) == 0.0);
  }

  TEST_CASE("rotating-frame rule with M alphadot = eB/2 matches the symmetric gauge") {
    GaugeField g(GaugeKind::symmetric, 1.0, 1.0);
    const Coefficient ma = Coefficient::constant("M") * Coefficient::constant("alphadot");
    // P_m = eps_mn M alphadot Q_n with eps12 = -1.
    symalg::Substitution rule({{Generator::P(1), NCPolynomial({Generator::Q(2)}, -ma)},
                               {Generator::P(2), NCPolynomial({Generator::Q(1)}, ma)}});
    auto c = LoopPath::circle(1.0, 100000);
    const double v = canonical_action_integral(c, rule, g, {{"M", 2.0}, {"alphadot", 0.25}});
    CHECK(std::abs(v - loop_integral(c, g)) < 1e-8);
    CHECK_THROWS_AS(canonical_action_integral(c, rule, g, {{"M", 2.0}}), MissingParam);
  }

  TEST_CASE("rules that are not affine in positions") {
    GaugeField g(GaugeKind::symmetric, 1.0);
    auto c = LoopPath::circle(1.0, 100);
    CHECK_THROWS_AS(canonical_action_integral(c, symalg::Substitution::identity(), g), NonLinearSubstitution);
    symalg::Substitution mixes({{Generator::P(1), NCPolynomial(Generator::P(2))},
                                {Generator::P(2), NCPolynomial()}});
    CHECK_THROWS_AS(canonical_action_integral(c, mixes, g), NonLinearSubstitution);
    symalg::Substitution complex_rule({{Generator::P(1), NCPolynomial({Generator::Q(2)}, Coefficient::i())},
                                       {Generator::P(2), NCPolynomial()}});
    CHECK_THROWS_AS(canonical_action_integral(c, complex_rule, g), NonLinearSubstitution);
    CHECK_THROWS_AS(canonical_action_integral(LoopPath({{0, 0}, {1, 0}}, false), mixes, g), OpenPath);
  }
}
