#include "qaxiom/frontend/dispatch.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "qaxiom/flux/flux.hpp"
#include "qaxiom/frontend/expression.hpp"
#include "qaxiom/frontend/files.hpp"
#include "qaxiom/repr/compile.hpp"
#include "qaxiom/spectra/spectra.hpp"
#include "qaxiom/symalg/checks.hpp"
#include "qaxiom/symalg/mixed.hpp"
#include "qaxiom/symalg/rewrite.hpp"

namespace qaxiom::frontend {

using symalg::Coefficient;
using symalg::Generator;
using symalg::NCPolynomial;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240531;

struct Options {
  bool json = false;
  std::string algebra = "magnetic2";
  std::string epsilon12 = "-1";
  double hbar = 1.0, e = 1.0, B = 1.0, M = 1.0;
  std::vector<std::string> params;
  std::optional<double> tolerance;
  std::uint64_t seed = kDefaultSeed;

  // Bracket expressions are kept in plain strings: CLI11 would split a
  // "[a,b]" token bound to a vector option.
  std::optional<std::string> first, second;
  std::vector<std::string> exprs;
  std::string subst;
  std::string matrix = "auto";
  std::string mode;
  std::string rep = "landau";
  int ntrunc = 64;
  int guiding = 16;
  std::optional<int> npoints;
  double boxsize = 14.0;
  std::string gauge = "symmetric";
  int levels = 5;
  std::string convention = "standard";
  std::string hamiltonian;
  std::string state = "ground";
  int samples = 0;
  std::string quantity = "commutatorScale";
  std::string sector = "QQ";
  std::string over = "B";
  std::string values = "1,0.1,0.01";
  std::string path = "circle:r=1.4142135623730951,n=4096";
  double spacing = 0.25;
};

struct Outcome {
  int exit_code = 0;
  Json report;
  std::string text;
};

int parse_epsilon(const std::string& s) {
  if (s == "-1") return -1;
  if (s == "+1" || s == "1") return 1;
  throw UsageError("--epsilon12 must be +1 or -1, got '" + s + "'");
}

std::pair<std::string, double> parse_assignment(const std::string& s, const char* flag) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0)
    throw UsageError(std::string(flag) + " expects name=value, got '" + s + "'");
  const std::string value = s.substr(eq + 1);
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return {s.substr(0, eq), v};
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " value '" + value + "' is not a number");
  }
}

repr::Params make_params(const Options& o) {
  repr::Params p;
  p.hbar = o.hbar;
  p.e = o.e;
  p.B = o.B;
  p.M = o.M;
  for (const auto& s : o.params) {
    auto [name, v] = parse_assignment(s, "--param");
    if (name == "hbar" || name == "e" || name == "B" || name == "M")
      throw UsageError("use --" + name + " instead of --param " + name + "=...");
    p.extra[name] = v;
  }
  return p;
}

GaugeKind parse_gauge(const std::string& s) {
  if (s == "paper") return GaugeKind::paper;
  if (s == "symmetric") return GaugeKind::symmetric;
  if (s == "landau") return GaugeKind::landau;
  if (s == "none") return GaugeKind::none;
  throw UsageError("--gauge must be paper, symmetric, landau or none, got '" + s + "'");
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_assignment("v=" + item, "--values").second);
  if (out.empty()) throw UsageError("--values needs at least one number");
  return out;
}

NCPolynomial lower_text(const std::string& text, const LoadedAlgebra& la) {
  return lower(parse_expression(text), la.algebra, la.constants);
}

Json poly_json(const NCPolynomial& p) {
  return Json{{"text", symalg::to_string(p)},
              {"central", p.is_scalar()},
              {"degree", p.is_zero() ? 0 : static_cast<long long>(p.degree())}};
}

std::string pair_label(Generator g, Generator h) {
  return "[" + symalg::to_string(g) + "," + symalg::to_string(h) + "]";
}

std::string verdict(bool ok, const char* yes = "PASS", const char* no = "FAIL") {
  return ok ? yes : no;
}

Json algebra_json(const symalg::Algebra& a) {
  return Json{{"name", a.name()}, {"k", a.pair_count()}, {"epsilon12", a.epsilon12()}};
}

repr::Representation make_representation(const Options& o, const symalg::Algebra& a) {
  const auto p = make_params(o);
  if (o.rep == "landau") return repr::landau_representation(o.ntrunc, p, a.epsilon12(), o.guiding);
  if (o.rep == "grid")
    return repr::grid_representation(o.npoints.value_or(32), o.boxsize, parse_gauge(o.gauge), p,
                                     a.epsilon12());
  throw UsageError("--rep must be landau or grid, got '" + o.rep + "'");
}

Json representation_json(const repr::Representation& rep, const Options& o) {
  Json j{{"label", rep.label()},
         {"kind", o.rep},
         {"dimension", static_cast<long long>(rep.dimension())},
         {"projector_rank", static_cast<long long>(rep.projector_rank())},
         {"epsilon12", rep.epsilon12()}};
  if (o.rep == "landau") {
    j["ntrunc"] = o.ntrunc;
    if (rep.epsilon12() == 1) j["guiding_trunc"] = o.guiding;
  } else {
    j["npoints"] = o.npoints.value_or(32);
    j["boxsize"] = o.boxsize;
    j["gauge"] = o.gauge;
  }
  return j;
}

Json params_json(const repr::Params& p) {
  Json j{{"hbar", p.hbar}, {"e", p.e}, {"B", p.B}, {"M", p.M}};
  for (const auto& [k, v] : p.extra) j[k] = v;
  return j;
}

// ---------------------------------------------------------------- commands

Outcome cmd_commute(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  if (o.exprs.empty() || o.exprs.size() > 2)
    throw UsageError("commute takes one bracket expression or two operands");
  NCPolynomial result;
  std::string shown;
  if (o.exprs.size() == 1) {
    const auto e = parse_expression(o.exprs[0]);
    shown = print_expression(e);
    result = lower(e, la.algebra, la.constants);
  } else {
    const auto a = parse_expression(o.exprs[0]);
    const auto b = parse_expression(o.exprs[1]);
    shown = print_expression(Expr::bracket(a, b));
    result = symalg::commutator(lower(a, la.algebra, la.constants),
                                lower(b, la.algebra, la.constants), la.algebra);
  }
  Outcome out;
  out.report = {{"algebra", algebra_json(la.algebra)}, {"expression", shown}, {"result", poly_json(result)}};
  out.text = key_values({{"algebra", la.algebra.name()},
                         {"epsilon12", std::to_string(la.algebra.epsilon12())},
                         {"expression", shown},
                         {"result", symalg::to_string(result)},
                         {"central", result.is_scalar() ? "yes" : "no"}});
  return out;
}

Outcome cmd_normal_order(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  if (o.exprs.size() != 1) throw UsageError("normal-order takes exactly one expression");
  const auto e = parse_expression(o.exprs[0]);
  const NCPolynomial result = lower(e, la.algebra, la.constants);
  std::vector<std::string> order;
  for (auto g : la.algebra.order()) order.push_back(symalg::to_string(g));
  Outcome out;
  out.report = {{"algebra", algebra_json(la.algebra)},
                {"order", order},
                {"expression", print_expression(e)},
                {"result", poly_json(result)}};
  std::string order_text;
  for (const auto& g : order) order_text += (order_text.empty() ? "" : " < ") + g;
  out.text = key_values({{"algebra", la.algebra.name()},
                         {"order", order_text},
                         {"expression", print_expression(e)},
                         {"normal form", symalg::to_string(result)}});
  return out;
}

Outcome cmd_jacobi(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  const auto r = symalg::jacobi_check(la.algebra);
  Json violations = Json::array();
  TextTable table({"triple", "residual"});
  for (const auto& v : r.violations) {
    const std::string t = symalg::to_string(v.g) + "," + symalg::to_string(v.h) + "," + symalg::to_string(v.l);
    violations.push_back({{"triple", t}, {"residual", symalg::to_string(v.residual)}});
    table.add_row({t, symalg::to_string(v.residual)});
  }
  Outcome out;
  out.exit_code = r.consistent() ? 0 : 1;
  out.report = {{"algebra", algebra_json(la.algebra)},
                {"triples_checked", r.triples_checked},
                {"violations", violations},
                {"verdict", verdict(r.consistent(), "CONSISTENT", "INCONSISTENT")}};
  out.text = key_values({{"algebra", la.algebra.name()},
                         {"triples checked", std::to_string(r.triples_checked)},
                         {"violations", std::to_string(r.violations.size())}});
  if (!r.consistent()) out.text += table.render();
  out.text += "verdict: " + verdict(r.consistent(), "CONSISTENT", "INCONSISTENT") + "\n";
  return out;
}

Outcome cmd_dims(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  auto dims = symalg::DimensionMap::geometric(la.algebra.pair_count());
  for (const auto& s : o.params) {
    auto [name, v] = parse_assignment(s, "--param");
    if (v != std::floor(v)) throw UsageError("dimension of '" + name + "' must be an integer");
    if (auto g = symalg::parse_generator(name))
      dims.generators[*g] = static_cast<int>(v);
    else
      dims.constants[name] = static_cast<int>(v);
  }
  const auto r = symalg::dimension_check(la.algebra, dims);
  Json entries = Json::array();
  TextTable table({"pair", "value", "dim lhs", "dim rhs", "status"});
  for (const auto& e : r.entries) {
    std::string rhs;
    for (int d : e.rhs) rhs += (rhs.empty() ? "" : ",") + std::to_string(d);
    entries.push_back({{"pair", pair_label(e.left, e.right)},
                       {"value", symalg::to_string(e.value)},
                       {"lhs", e.lhs},
                       {"rhs", e.rhs},
                       {"pass", e.pass}});
    table.add_row({pair_label(e.left, e.right), symalg::to_string(e.value), std::to_string(e.lhs),
                   rhs.empty() ? "-" : rhs, verdict(e.pass)});
  }
  Json map;
  for (const auto& [g, d] : dims.generators) map[symalg::to_string(g)] = d;
  for (const auto& [c, d] : dims.constants) map[c] = d;
  Outcome out;
  out.exit_code = r.pass() ? 0 : 1;
  out.report = {{"algebra", algebra_json(la.algebra)},
                {"dimensions", map},
                {"entries", entries},
                {"verdict", verdict(r.pass())}};
  out.text = "algebra: " + la.algebra.name() + "\n" + table.render() + "verdict: " + verdict(r.pass()) + "\n";
  return out;
}

Outcome cmd_subst(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  if (o.exprs.size() != 1) throw UsageError("subst takes exactly one expression");
  const std::string spec = o.subst.empty() ? "preset:flux" : o.subst;
  const auto s = load_substitution(spec, la);
  const auto e = parse_expression(o.exprs[0]);
  const NCPolynomial result = symalg::substitute(lower(e, la.algebra, la.constants), s, la.algebra);
  Json images;
  for (const auto& [g, p] : s.images()) images[symalg::to_string(g)] = symalg::to_string(p);
  Outcome out;
  out.report = {{"algebra", algebra_json(la.algebra)},
                {"substitution", spec},
                {"images", images},
                {"expression", print_expression(e)},
                {"result", poly_json(result)}};
  out.text = key_values({{"algebra", la.algebra.name()},
                         {"substitution", spec},
                         {"expression", print_expression(e)},
                         {"result", symalg::to_string(result)}});
  return out;
}

Outcome cmd_equiv(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  const std::string spec = o.subst.empty() ? "preset:flux" : o.subst;
  const auto r = symalg::equivalence_check(la.algebra, load_substitution(spec, la));
  Json entries = Json::array();
  TextTable table({"pair", "declared", "derived", "residual"});
  for (const auto& e : r.entries) {
    entries.push_back({{"pair", pair_label(e.left, e.right)},
                       {"declared", symalg::to_string(e.declared)},
                       {"derived", symalg::to_string(e.derived)},
                       {"residual", symalg::to_string(e.residual)},
                       {"zero", e.residual.is_zero()}});
    table.add_row({pair_label(e.left, e.right), symalg::to_string(e.declared),
                   symalg::to_string(e.derived), symalg::to_string(e.residual)});
  }
  const bool ok = r.consistent();
  Outcome out;
  out.exit_code = ok ? 0 : 1;
  out.report = {{"algebra", algebra_json(la.algebra)},
                {"substitution", spec},
                {"entries", entries},
                {"verdict", verdict(ok, "CONSISTENT", "INCONSISTENT")}};
  out.text = key_values({{"algebra", la.algebra.name()}, {"substitution", spec}}) + table.render() +
             "verdict: " + verdict(ok, "CONSISTENT", "INCONSISTENT") + "\n";
  return out;
}

Outcome cmd_mixed(const Options& o) {
  const int eps = parse_epsilon(o.epsilon12);
  const std::string mode_name = o.mode.empty() ? "position" : o.mode;
  symalg::DerivativeMode mode;
  if (mode_name == "position")
    mode = symalg::DerivativeMode::position;
  else if (mode_name == "momentum")
    mode = symalg::DerivativeMode::momentum;
  else
    throw UsageError("--mode must be position or momentum for mixed, got '" + mode_name + "'");

  std::string matrix = o.matrix;
  if (matrix == "auto")
    matrix = mode == symalg::DerivativeMode::position ? "cyclotron" : "cyclotron-inverse";
  const Coefficient malpha = Coefficient::constant("M") * Coefficient::constant("alphadot");
  symalg::CoefficientMatrix c;
  if (matrix == "cyclotron") {
    c = symalg::epsilon_matrix(malpha, eps);
  } else if (matrix == "cyclotron-inverse") {
    c = symalg::epsilon_matrix(-malpha.pow(-1), eps);
  } else {
    std::vector<std::string> cells;
    std::stringstream in(matrix);
    for (std::string item; std::getline(in, item, ';');) cells.push_back(item);
    if (cells.size() != 4)
      throw UsageError("--matrix must be cyclotron, cyclotron-inverse or 'c11;c12;c21;c22'");
    std::set<std::string> extra;
    for (const auto& s : o.params) extra.insert(parse_assignment(s, "--param").first);
    for (int k = 0; k < 4; ++k) c[k / 2][k % 2] = lower_scalar(parse_expression(cells[k]), eps, extra);
  }
  const auto r = symalg::mixed_commutator(c, mode);
  Json cm = Json::array();
  for (const auto& row : c) cm.push_back({symalg::to_string(row[0]), symalg::to_string(row[1])});
  Outcome out;
  out.report = {{"mode", mode_name},
                {"epsilon12", eps},
                {"matrix", cm},
                {"scalar", symalg::to_string(r.scalar)},
                {"prefactor", symalg::to_string(r.prefactor)},
                {"f1", symalg::to_string(r.f1)},
                {"f2", symalg::to_string(r.f2)},
                {"remainder_zero", r.remainder_is_zero()}};
  const char* d = mode == symalg::DerivativeMode::position ? "Q" : "P";
  out.text = key_values({{"mode", mode_name},
                         {"epsilon12", std::to_string(eps)},
                         {"c", "[[" + cm[0][0].get<std::string>() + ", " + cm[0][1].get<std::string>() +
                                   "], [" + cm[1][0].get<std::string>() + ", " +
                                   cm[1][1].get<std::string>() + "]]"},
                         {"scalar part", symalg::to_string(r.scalar)},
                         {"remainder", "(" + symalg::to_string(r.prefactor) + ") * ((" +
                                           symalg::to_string(r.f2) + ") d/d" + d + "1 - (" +
                                           symalg::to_string(r.f1) + ") d/d" + d + "2)"},
                         {"remainder zero", r.remainder_is_zero() ? "yes" : "no"}});
  return out;
}

Outcome cmd_audit(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  const auto rep = make_representation(o, la.algebra);
  const auto rows = repr::representation_audit(rep, la.algebra, o.tolerance);
  Json entries = Json::array();
  TextTable table({"pair", "declared", "residual", "tolerance", "status"});
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.pass;
    entries.push_back({{"pair", pair_label(r.left, r.right)},
                       {"declared", symalg::to_string(r.declared)},
                       {"residual", json_number(r.norm)},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    table.add_row({pair_label(r.left, r.right), symalg::to_string(r.declared), format_number(r.norm),
                   format_number(r.tolerance), verdict(r.pass)});
  }
  Outcome out;
  out.exit_code = ok ? 0 : 1;
  out.report = {{"algebra", algebra_json(la.algebra)},
                {"representation", representation_json(rep, o)},
                {"params", params_json(rep.params())},
                {"entries", entries},
                {"verdict", verdict(ok)}};
  out.text = key_values({{"algebra", la.algebra.name()},
                         {"representation", rep.label()},
                         {"dimension", std::to_string(rep.dimension())},
                         {"projector rank", std::to_string(rep.projector_rank())}}) +
             table.render() + "verdict: " + verdict(ok) + "\n";
  return out;
}

spectra::Convention parse_convention(const std::string& s) {
  if (s == "standard") return spectra::Convention::standard;
  if (s == "paper") return spectra::Convention::paper;
  throw UsageError("--convention must be standard or paper, got '" + s + "'");
}

Outcome cmd_spectrum(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  const auto rep = make_representation(o, la.algebra);
  const NCPolynomial h =
      o.hamiltonian.empty() ? spectra::kinetic_hamiltonian() : lower_text(o.hamiltonian, la);
  const std::string mode = o.mode.empty() ? "projected" : o.mode;
  spectra::Subspace sub;
  if (mode == "projected")
    sub = spectra::Subspace::projected;
  else if (mode == "full")
    sub = spectra::Subspace::full;
  else
    throw UsageError("--mode must be projected or full for spectrum, got '" + mode + "'");
  const auto r = spectra::spectrum(rep, h, o.levels, parse_convention(o.convention), sub);
  const auto check = spectra::landau_level_check(r, o.tolerance.value_or(1e-9));

  Json levels = Json::array();
  TextTable table({"n", "eigenvalue", "(n+1/2) hbar omega_c", "relative error", "status"});
  for (const auto& l : check.levels) {
    levels.push_back({{"n", l.level},
                      {"eigenvalue", json_number(l.eigenvalue)},
                      {"expected", json_number(l.expected)},
                      {"relative_error", json_number(l.relative_error)},
                      {"pass", l.pass}});
    table.add_row({std::to_string(l.level), format_number(l.eigenvalue), format_number(l.expected),
                   format_number(l.relative_error), verdict(l.pass)});
  }
  Json eig = Json::array();
  for (double x : r.eigenvalues) eig.push_back(json_number(x));
  Outcome out;
  out.report = {{"algebra", algebra_json(la.algebra)},
                {"representation", representation_json(rep, o)},
                {"params", params_json(rep.params())},
                {"hamiltonian", r.hamiltonian},
                {"convention", spectra::to_string(r.convention)},
                {"subspace", mode},
                {"omega_c", json_number(r.omega_c)},
                {"eigenvalues", eig},
                {"landau_check",
                 {{"tolerance", check.tolerance},
                  {"levels", levels},
                  {"spacing_ratio", check.spacing_ratio ? json_number(*check.spacing_ratio) : Json()},
                  {"all_pass", check.all_pass()}}}};
  out.text = key_values({{"representation", rep.label()},
                         {"hamiltonian", r.hamiltonian},
                         {"convention", spectra::to_string(r.convention)},
                         {"subspace", mode},
                         {"omega_c", format_number(r.omega_c)}}) +
             table.render();
  if (check.spacing_ratio)
    out.text += "measured spacing / (hbar omega_c): " + format_number(*check.spacing_ratio) + "\n";
  out.text += std::string("landau levels: ") + (check.all_pass() ? "match" : "do not match") + "\n";
  return out;
}

Json uncertainty_json(const spectra::UncertaintyReport& u) {
  return Json{{"state", u.state},
              {"mean_a", json_number(u.mean_a)},
              {"mean_b", json_number(u.mean_b)},
              {"delta_a", json_number(u.delta_a)},
              {"delta_b", json_number(u.delta_b)},
              {"product", json_number(u.product)},
              {"robertson_bound", json_number(u.robertson_bound)},
              {"hbar_bound", json_number(u.hbar_bound)},
              {"saturation", u.saturation ? json_number(*u.saturation) : Json()}};
}

Outcome cmd_uncertainty(const Options& o) {
  const auto la = load_algebra(o.algebra, parse_epsilon(o.epsilon12));
  if (o.exprs.size() != 0 && o.exprs.size() != 2)
    throw UsageError("uncertainty takes two observables (default Q1 Q2)");
  const std::string at = o.exprs.empty() ? "Q1" : o.exprs[0];
  const std::string bt = o.exprs.empty() ? "Q2" : o.exprs[1];
  const NCPolynomial a = lower_text(at, la);
  const NCPolynomial b = lower_text(bt, la);
  const auto rep = make_representation(o, la.algebra);
  const NCPolynomial h =
      o.hamiltonian.empty() ? spectra::kinetic_hamiltonian() : lower_text(o.hamiltonian, la);

  Outcome out;
  out.report = {{"algebra", algebra_json(la.algebra)},
                {"representation", representation_json(rep, o)},
                {"params", params_json(rep.params())},
                {"a", symalg::to_string(a)},
                {"b", symalg::to_string(b)}};
  if (o.samples > 0) {
    repr::Matrix psi(rep.dimension(), o.samples);
    for (int s = 0; s < o.samples; ++s)
      psi.col(s) = spectra::make_state(
          rep, {spectra::StateSpec::Kind::random, static_cast<long long>(o.seed + s)}, h);
    const auto rows = spectra::uncertainty_batch(rep, psi, a, b);
    double min_margin = INFINITY;
    int violations = 0;
    for (const auto& u : rows) {
      const double margin = u.product - u.robertson_bound;
      min_margin = std::min(min_margin, margin);
      if (margin < -1e-10) ++violations;
    }
    out.exit_code = violations == 0 ? 0 : 1;
    out.report["samples"] = o.samples;
    out.report["seed"] = o.seed;
    out.report["min_margin"] = json_number(min_margin);
    out.report["violations"] = violations;
    out.report["verdict"] = verdict(violations == 0);
    out.text = key_values({{"representation", rep.label()},
                           {"observables", symalg::to_string(a) + ", " + symalg::to_string(b)},
                           {"random states", std::to_string(o.samples) + " (seeds " +
                                                 std::to_string(o.seed) + ".." +
                                                 std::to_string(o.seed + o.samples - 1) + ")"},
                           {"min product - bound", format_number(min_margin)},
                           {"violations", std::to_string(violations)},
                           {"verdict", verdict(violations == 0)}});
    return out;
  }
  spectra::StateSpec spec = spectra::StateSpec::parse(o.state == "random" ? "random:" + std::to_string(o.seed) : o.state);
  const auto u = spectra::uncertainty(rep, spec, a, b, h);
  out.report["result"] = uncertainty_json(u);
  out.text = key_values({{"representation", rep.label()},
                         {"state", u.state},
                         {"<A>", format_number(u.mean_a)},
                         {"<B>", format_number(u.mean_b)},
                         {"dA", format_number(u.delta_a)},
                         {"dB", format_number(u.delta_b)},
                         {"dA dB", format_number(u.product)},
                         {"Robertson |<[A,B]>|/2", format_number(u.robertson_bound)},
                         {"hbar bound", format_number(u.hbar_bound)},
                         {"product / Robertson", u.saturation ? format_number(*u.saturation) : "n/a"}});
  return out;
}

Outcome cmd_scan(const Options& o) {
  spectra::ScanQuantity q;
  if (o.quantity == "commutatorScale")
    q = spectra::ScanQuantity::commutator_scale;
  else if (o.quantity == "magneticLength")
    q = spectra::ScanQuantity::magnetic_length;
  else if (o.quantity == "uncertaintyProduct")
    q = spectra::ScanQuantity::uncertainty_product;
  else
    throw UsageError("--quantity must be commutatorScale, magneticLength or uncertaintyProduct");
  spectra::ScanContext ctx;
  ctx.params = make_params(o);
  ctx.ntrunc = o.ntrunc;
  ctx.epsilon12 = parse_epsilon(o.epsilon12);
  if (o.sector == "QQ")
    ctx.sector = spectra::Sector::QQ;
  else if (o.sector == "PP")
    ctx.sector = spectra::Sector::PP;
  else
    throw UsageError("--sector must be QQ or PP");
  if (ctx.sector == spectra::Sector::PP) {
    ctx.a = NCPolynomial(Generator::P(1));
    ctx.b = NCPolynomial(Generator::P(2));
  }
  const auto table = spectra::limit_scan(q, o.over, parse_values(o.values), ctx);
  Json rows = Json::array();
  TextTable text({o.over, spectra::to_string(q)});
  for (const auto& r : table.rows) {
    rows.push_back({{"param", json_number(r.param)}, {"value", json_number(r.quantity)}});
    text.add_row({format_number(r.param), format_number(r.quantity)});
  }
  Outcome out;
  out.report = {{"quantity", spectra::to_string(q)},
                {"sector", spectra::to_string(ctx.sector)},
                {"param", o.over},
                {"params", params_json(ctx.params)},
                {"epsilon12", ctx.epsilon12},
                {"rows", rows}};
  out.text = key_values({{"quantity", spectra::to_string(q)}, {"sector", spectra::to_string(ctx.sector)}}) +
             text.render();
  return out;
}

Outcome cmd_flux(const Options& o) {
  const int eps = parse_epsilon(o.epsilon12);
  const auto p = make_params(o);
  p.require_positive();
  const flux::GaugeField g(parse_gauge(o.gauge), p.B, p.e, eps);
  const flux::LoopPath path = o.path.rfind("circle:", 0) == 0
                                  ? flux::LoopPath::parse_generator(o.path)
                                  : flux::LoopPath::parse_csv(read_file(o.path));
  const double value = flux::loop_integral(path, g);
  const double h = 2.0 * std::numbers::pi * p.hbar;
  const auto r = flux::flux_quantization(value, h, o.tolerance.value_or(1e-6));
  Outcome out;
  out.exit_code = r.quantized ? 0 : 1;
  out.report = {{"gauge", o.gauge},
                {"params", params_json(p)},
                {"epsilon12", eps},
                {"path",
                 {{"source", o.path},
                  {"points", path.points().size()},
                  {"length", json_number(path.length())},
                  {"signed_area", json_number(path.signed_area())}}},
                {"curl_symbolic", symalg::to_string(g.symbolic_curl())},
                {"curl", json_number(g.curl())},
                {"loop_integral", json_number(value)},
                {"h", json_number(h)},
                {"nearest_n", r.nearest_n},
                {"residual", json_number(r.residual)},
                {"tolerance", r.tolerance},
                {"verdict", verdict(r.quantized, "QUANTIZED", "NOT QUANTIZED")}};
  std::vector<std::pair<std::string, std::string>> kv{
      {"gauge", o.gauge},
      {"curl A", symalg::to_string(g.symbolic_curl()) + " = " + format_number(g.curl())},
      {"path", o.path + " (" + std::to_string(path.points().size()) + " points)"},
      {"signed area", format_number(path.signed_area())},
      {"e oint A.dQ", format_number(value)},
      {"h", format_number(h)},
      {"nearest N", std::to_string(r.nearest_n)},
      {"residual |v/h - N|", format_number(r.residual)}};
  if (!o.subst.empty()) {
    const auto rule = o.subst == "preset:field"
                          ? flux::field_momentum_rule(g)
                          : load_substitution(o.subst, load_algebra(o.algebra, eps));
    const double action = flux::canonical_action_integral(path, rule, g, p.values());
    out.report["canonical_action"] = {{"substitution", o.subst},
                                      {"value", json_number(action)},
                                      {"difference", json_number(action - value)}};
    kv.push_back({"oint P.dQ", format_number(action)});
  }
  kv.push_back({"verdict", verdict(r.quantized, "QUANTIZED", "NOT QUANTIZED")});
  out.text = key_values(kv);
  return out;
}

Outcome cmd_plaquette(const Options& o) {
  const auto p = make_params(o);
  p.require_positive();
  const int eps = parse_epsilon(o.epsilon12);
  const flux::GaugeField g(parse_gauge(o.gauge), p.B, p.e, eps);
  const auto r = flux::plaquette_phase(o.npoints.value_or(16), o.spacing, g, p.hbar);
  Outcome out;
  out.report = {{"gauge", o.gauge},
                {"params", params_json(p)},
                {"epsilon12", eps},
                {"npoints", r.npoints},
                {"spacing", r.spacing},
                {"plaquettes", r.plaquettes},
                {"phase", json_number(r.phase)},
                {"expected_phase", json_number(r.expected_phase)},
                {"max_deviation", json_number(r.max_deviation)},
                {"total_phase", json_number(r.total_phase)}};
  out.text = key_values({{"gauge", o.gauge},
                         {"lattice", std::to_string(r.npoints) + " x " + std::to_string(r.npoints) +
                                         " sites, spacing " + format_number(r.spacing)},
                         {"plaquettes", std::to_string(r.plaquettes)},
                         {"phase per plaquette", format_number(r.phase)},
                         {"e curl a^2 / hbar (mod 2 pi)", format_number(r.expected_phase)},
                         {"max deviation", format_number(r.max_deviation)},
                         {"total phase", format_number(r.total_phase)}});
  return out;
}

// ---------------------------------------------------------------- parser

struct Command {
  const char* name;
  const char* help;
  Outcome (*run)(const Options&);
};

const std::vector<Command>& commands() {
  static const std::vector<Command> list{
      {"commute", "normal-ordered commutator of an expression or two operands", cmd_commute},
      {"normal-order", "normal form of an expression", cmd_normal_order},
      {"jacobi", "Jacobi identity over all generator triples", cmd_jacobi},
      {"dims", "dimensional consistency in geometric units", cmd_dims},
      {"subst", "apply a linear substitution to an expression", cmd_subst},
      {"equiv", "re-derive every declared bracket after a substitution", cmd_equiv},
      {"mixed", "mixed derivative commutator with coefficient matrix c", cmd_mixed},
      {"audit", "commutator residuals of a matrix representation", cmd_audit},
      {"spectrum", "lowest eigenvalues and Landau-level comparison", cmd_spectrum},
      {"uncertainty", "uncertainty product against the Robertson bound", cmd_uncertainty},
      {"scan", "scan a quantity over a parameter toward the classical limit", cmd_scan},
      {"flux", "loop integral of the gauge potential and flux quantization", cmd_flux},
      {"plaquette", "lattice plaquette phases", cmd_plaquette},
  };
  return list;
}

std::unique_ptr<CLI::App> build_app(Options& o) {
  auto app = std::make_unique<CLI::App>("Commutator algebra and magnetic quantization toolkit", "qaxiom");
  app->require_subcommand(1);
  app->fallthrough();
  app->add_flag("--json", o.json, "emit one JSON document on stdout");
  app->add_option("--algebra", o.algebra, "preset (heisenberg2, magnetic2) or algebra file")
      ->capture_default_str();
  app->add_option("--epsilon12", o.epsilon12, "sign of epsilon_12 (+1 or -1)")->capture_default_str();
  app->add_option("--hbar", o.hbar, "value of hbar")->capture_default_str();
  app->add_option("--e", o.e, "value of e")->capture_default_str();
  app->add_option("--B", o.B, "value of B")->capture_default_str();
  app->add_option("--M", o.M, "value of M")->capture_default_str();
  app->add_option("--param", o.params, "extra value name=value (repeatable)");
  app->add_option("--tolerance", o.tolerance, "pass/fail tolerance");
  app->add_option("--seed", o.seed, "seed for random states")->capture_default_str();

  for (const auto& c : commands()) {
    CLI::App* sub = app->add_subcommand(c.name, c.help);
    const std::string name = c.name;
    if (name == "commute" || name == "normal-order" || name == "subst" || name == "uncertainty")
      sub->add_option("first", o.first, name == "uncertainty" ? "observable A" : "expression");
    if (name == "commute" || name == "uncertainty")
      sub->add_option("second", o.second, name == "uncertainty" ? "observable B" : "second operand");
    if (name == "subst" || name == "equiv" || name == "flux")
      sub->add_option("--subst", o.subst, "preset:flux, preset:identity, preset:field (flux command) or file");
    if (name == "mixed") {
      sub->add_option("--matrix", o.matrix, "auto, cyclotron, cyclotron-inverse or 'c11;c12;c21;c22'")
          ->capture_default_str();
      sub->add_option("--mode", o.mode, "position or momentum");
    }
    if (name == "audit" || name == "spectrum" || name == "uncertainty") {
      sub->add_option("--rep", o.rep, "landau or grid")->capture_default_str();
      sub->add_option("--ntrunc", o.ntrunc, "ladder truncation")->capture_default_str();
      sub->add_option("--guiding", o.guiding, "guiding-mode truncation (epsilon12 = +1)")
          ->capture_default_str();
      sub->add_option("--npoints", o.npoints, "grid points per axis (default 32)");
      sub->add_option("--boxsize", o.boxsize, "grid box length")->capture_default_str();
      sub->add_option("--gauge", o.gauge, "paper, symmetric, landau or none")->capture_default_str();
    }
    if (name == "spectrum" || name == "uncertainty")
      sub->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian expression (default kinetic)");
    if (name == "spectrum") {
      sub->add_option("--levels", o.levels, "number of levels")->capture_default_str();
      sub->add_option("--convention", o.convention, "standard (eB/M) or paper (eB/2M)")
          ->capture_default_str();
      sub->add_option("--mode", o.mode, "projected or full");
    }
    if (name == "uncertainty") {
      sub->add_option("--state", o.state, "ground, basis:<n>, random:<seed> or random")
          ->capture_default_str();
      sub->add_option("--samples", o.samples, "check this many seeded random states");
    }
    if (name == "scan") {
      sub->add_option("--quantity", o.quantity, "commutatorScale, magneticLength or uncertaintyProduct")
          ->capture_default_str();
      sub->add_option("--sector", o.sector, "QQ or PP")->capture_default_str();
      sub->add_option("--over", o.over, "parameter to vary (hbar, e, B, M)")->capture_default_str();
      sub->add_option("--values", o.values, "comma-separated values")->capture_default_str();
      sub->add_option("--ntrunc", o.ntrunc, "ladder truncation")->capture_default_str();
    }
    if (name == "flux" || name == "plaquette")
      sub->add_option("--gauge", o.gauge, "paper, symmetric or landau")->capture_default_str();
    if (name == "flux")
      sub->add_option("--path", o.path, "circle:r=<r>,n=<n>[,cx=,cy=] or CSV file")->capture_default_str();
    if (name == "plaquette") {
      sub->add_option("--npoints", o.npoints, "lattice sites per axis (default 16)");
      sub->add_option("--spacing", o.spacing, "lattice spacing")->capture_default_str();
    }
  }
  return app;
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"kind", kind}, {"message", message}};
}

}  // namespace

std::string usage() {
  Options o;
  return build_app(o)->help();
}

CommandResult dispatch(const std::vector<std::string>& args) {
  Options o;
  auto app = build_app(o);
  CommandResult result;
  const Json input{{"argv", args}};

  std::vector<std::string> storage{"qaxiom"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  const bool wants_json =
      std::find(args.begin(), args.end(), std::string("--json")) != args.end();
  auto fail = [&](int code, const Json& error, const std::string& text) {
    result.exit_code = code;
    result.report = {{"input", input}, {"error", error}};
    if (wants_json)
      result.out = dump(result.report);
    result.err = text;
    return result;
  };

  try {
    app->parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    result.out = app->help();
    result.report = {{"input", input}, {"help", result.out}};
    return result;
  } catch (const CLI::ParseError& e) {
    if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
      const bool known = std::any_of(commands().begin(), commands().end(),
                                     [&](const Command& c) { return args[0] == c.name; });
      if (!known)
        return fail(2, error_json("UsageError", "unknown command '" + args[0] + "'"),
                    "error: unknown command '" + args[0] + "'\n\n" + app->help());
    }
    std::string help = app->help();
    for (auto* sub : app->get_subcommands()) help = sub->help();
    return fail(2, error_json("UsageError", e.what()), std::string("error: ") + e.what() + "\n\n" + help);
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands())
    if (app->got_subcommand(c.name)) chosen = &c;

  if (o.first) o.exprs.push_back(*o.first);
  if (o.second) o.exprs.push_back(*o.second);
  try {
    Outcome out = chosen->run(o);
    out.report["command"] = chosen->name;
    out.report["input"] = input;
    result.exit_code = out.exit_code;
    result.report = std::move(out.report);
    result.out = o.json ? dump(result.report) : out.text;
  } catch (const SyntaxError& e) {
    Json err = error_json(e.kind(), e.what());
    err["position"] = e.position();
    err["expected"] = e.expected();
    return fail(2, err, std::string("SyntaxError: ") + e.what() + "\n");
  } catch (const ParseError& e) {
    Json err = error_json(e.kind(), e.what());
    err["line"] = e.line();
    return fail(2, err, std::string("ParseError: ") + e.what() + "\n");
  } catch (const UsageError& e) {
    return fail(2, error_json(e.kind(), e.what()),
                std::string("UsageError: ") + e.what() + "\n\n" + app->get_subcommand(chosen->name)->help());
  } catch (const Error& e) {
    return fail(2, error_json(e.kind(), e.what()), e.kind() + ": " + e.what() + "\n");
  }
  return result;
}

}  // namespace qaxiom::frontend
