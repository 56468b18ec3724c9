#include "qaxiom/spectra/spectra.hpp"

#include <cmath>
#include <exception>
#include <random>

#include "qaxiom/error.hpp"
#include "qaxiom/repr/compile.hpp"

namespace qaxiom::spectra {

using symalg::Coefficient;
using symalg::Generator;
using symalg::Rational;

const char* to_string(Convention c) { return c == Convention::standard ? "standard" : "paper"; }

double cyclotron_frequency(const repr::Params& p, Convention c) {
  double w = p.e * p.B / p.M;
  return c == Convention::standard ? w : w / 2.0;
}

namespace {

void require_hermitian(const NCPolynomial& h, const Representation& rep) {
  const Matrix hv = repr::apply(h, rep, rep.isometry());
  const double scale = std::max(1.0, hv.size() ? hv.cwiseAbs().maxCoeff() : 0.0);
  const double defect = repr::hermiticity_defect(h, rep);
  if (defect > 1e-9 * scale)
    throw NonHermitian("operator " + symalg::to_string(h) + " is not Hermitian (defect " +
                       std::to_string(defect) + ")");
}

Eigen::SelfAdjointEigenSolver<Matrix> diagonalize(const Matrix& m, bool vectors) {
  Matrix sym = (m + m.adjoint()) / 2.0;
  return Eigen::SelfAdjointEigenSolver<Matrix>(sym, vectors ? Eigen::ComputeEigenvectors
                                                            : Eigen::EigenvaluesOnly);
}

Representation full_space(const Representation& rep) {
  auto ops = rep.assignment();
  return Representation(rep.label(), rep.provenance(), rep.params(), rep.epsilon12(), std::move(ops),
                        Matrix::Identity(rep.dimension(), rep.dimension()));
}

}  // namespace

SpectrumReport spectrum(const Representation& rep, const NCPolynomial& h, int nlevels,
                        Convention convention, Subspace subspace) {
  if (nlevels < 0) throw InvalidParam("nlevels must be nonnegative");
  const Representation space = subspace == Subspace::full ? full_space(rep) : rep;
  const Eigen::Index rank = space.projector_rank();
  if (nlevels > rank / 4)
    throw InvalidParam("nlevels " + std::to_string(nlevels) + " exceeds projector rank / 4 = " +
                       std::to_string(rank / 4));
  require_hermitian(h, space);

  SpectrumReport out;
  out.representation = rep.label();
  out.hamiltonian = symalg::to_string(h);
  out.params = rep.params();
  out.convention = convention;
  out.subspace = subspace;
  out.omega_c = cyclotron_frequency(rep.params(), convention);
  if (nlevels == 0) return out;

  const Matrix hp = repr::project(h, space);
  const Eigen::VectorXd ev = diagonalize(hp, false).eigenvalues();

  if (subspace == Subspace::projected) {
    const Eigen::Index half = rank / 2;
    const Eigen::VectorXd ev_half = diagonalize(hp.topLeftCorner(half, half), false).eigenvalues();
    const double top = ev(nlevels - 1), top_half = ev_half(nlevels - 1);
    if (std::abs(top - top_half) > 1e-8 * std::max(1.0, std::abs(top)))
      throw TruncationTooSmall("level " + std::to_string(nlevels - 1) + " moves from " +
                               std::to_string(top_half) + " to " + std::to_string(top) +
                               " between half and full truncation");
  }

  const double hw = rep.params().hbar * out.omega_c;
  for (int n = 0; n < nlevels; ++n) {
    out.eigenvalues.push_back(ev(n));
    out.deviations.push_back(ev(n) - hw * (n + 0.5));
  }
  return out;
}

bool LandauLevelReport::all_pass() const {
  for (const auto& l : levels)
    if (!l.pass) return false;
  return true;
}

LandauLevelReport landau_level_check(const SpectrumReport& report, double tolerance) {
  LandauLevelReport out;
  out.convention = report.convention;
  out.tolerance = tolerance;
  const double hw = report.params.hbar * report.omega_c;
  for (std::size_t n = 0; n < report.eigenvalues.size(); ++n) {
    LevelCheck c;
    c.level = static_cast<int>(n);
    c.eigenvalue = report.eigenvalues[n];
    c.expected = hw * (static_cast<double>(n) + 0.5);
    c.relative_error = std::abs(c.eigenvalue - c.expected) / std::abs(c.expected);
    c.pass = c.relative_error <= tolerance;
    out.levels.push_back(c);
  }
  const auto& ev = report.eigenvalues;
  if (ev.size() >= 2) out.spacing_ratio = (ev.back() - ev.front()) / (ev.size() - 1) / hw;
  return out;
}

StateSpec StateSpec::parse(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidState("malformed state spec '" + text + "'");
    return v;
  };
  if (text == "ground") return {Kind::ground, 0};
  if (text.rfind("basis:", 0) == 0) {
    long long n = number(text.substr(6));
    if (n < 0) throw InvalidState("basis index must be nonnegative in '" + text + "'");
    return {Kind::basis, n};
  }
  if (text.rfind("random:", 0) == 0) return {Kind::random, number(text.substr(7))};
  throw InvalidState("unknown state spec '" + text + "' (expected ground, basis:<n>, random:<seed>)");
}

std::string StateSpec::to_string() const {
  switch (kind) {
    case Kind::ground:
      return "ground";
    case Kind::basis:
      return "basis:" + std::to_string(value);
    case Kind::random:
      break;
  }
  return "random:" + std::to_string(value);
}

NCPolynomial kinetic_hamiltonian() {
  const Coefficient half_inv_m = Coefficient(symalg::Gaussian(Rational(1, 2))) *
                                 Coefficient::constant("M", -1);
  NCPolynomial h;
  h.add({Generator::P(1), Generator::P(1)}, half_inv_m);
  h.add({Generator::P(2), Generator::P(2)}, half_inv_m);
  return h;
}

Vector make_state(const Representation& rep, const StateSpec& spec,
                  const NCPolynomial& hamiltonian) {
  const Matrix& v = rep.isometry();
  const Eigen::Index r = rep.projector_rank();
  switch (spec.kind) {
    case StateSpec::Kind::ground: {
      require_hermitian(hamiltonian, rep);
      auto solver = diagonalize(repr::project(hamiltonian, rep), true);
      Vector c = solver.eigenvectors().col(0);
      // Fix the global phase so the largest component is real positive.
      Eigen::Index k = 0;
      c.cwiseAbs().maxCoeff(&k);
      c *= std::abs(c(k)) / c(k);
      return v * c;
    }
    case StateSpec::Kind::basis:
      if (spec.value >= r)
        throw InvalidState("basis index " + std::to_string(spec.value) + " outside protected rank " +
                           std::to_string(r));
      return v.col(static_cast<Eigen::Index>(spec.value));
    case StateSpec::Kind::random:
      break;
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(spec.value));
  std::normal_distribution<double> g;
  Vector c(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    double re = g(rng);
    c(i) = {re, g(rng)};
  }
  c.normalize();
  return v * c;
}

namespace {

void moments_column(const Matrix& psi, const Matrix& a_psi, const Matrix& b_psi, Eigen::Index j,
                    Moments& m) {
  const std::complex<double> ma = psi.col(j).dot(a_psi.col(j));
  const std::complex<double> mb = psi.col(j).dot(b_psi.col(j));
  const Vector da = a_psi.col(j) - ma.real() * psi.col(j);
  const Vector db = b_psi.col(j) - mb.real() * psi.col(j);
  m.delta_a(j) = da.norm();
  m.delta_b(j) = db.norm();
  // Im <A'psi, B'psi> = <[A, B]> / 2i for Hermitian A, B.
  m.robertson(j) = std::abs(da.dot(db).imag());
}

}  // namespace

Moments uncertainty_moments(const Matrix& psi, const Matrix& a_psi, const Matrix& b_psi,
                            Backend backend) {
  const Eigen::Index n = psi.cols();
  Moments m{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) moments_column(psi, a_psi, b_psi, j, m);
  } else {
    for (Eigen::Index j = 0; j < n; ++j) moments_column(psi, a_psi, b_psi, j, m);
  }
  return m;
}

namespace {

void require_observable(const NCPolynomial& p, const Representation& rep) {
  const Matrix pv = repr::apply(p, rep, rep.isometry());
  const double scale = std::max(1.0, pv.size() ? pv.cwiseAbs().maxCoeff() : 0.0);
  if (repr::hermiticity_defect(p, rep) > 1e-9 * scale)
    throw NonHermitianObservable("observable " + symalg::to_string(p) + " is not Hermitian");
}

void require_state(const Representation& rep, const Matrix& psi) {
  const Matrix& v = rep.isometry();
  for (Eigen::Index j = 0; j < psi.cols(); ++j) {
    const double norm = psi.col(j).norm();
    if (std::abs(norm - 1.0) > 1e-12)
      throw UnnormalizedState("state norm is " + std::to_string(norm) + ", expected 1 within 1e-12");
    const double leak = (psi.col(j) - v * (v.adjoint() * psi.col(j))).norm();
    if (leak > 1e-10)
      throw InvalidState("state has weight " + std::to_string(leak) +
                         " outside the protected subspace");
  }
}

UncertaintyReport make_report(const std::string& state, const NCPolynomial& a,
                              const NCPolynomial& b, const Representation& rep, double mean_a,
                              double mean_b, double da, double db, double robertson) {
  UncertaintyReport r;
  r.state = state;
  r.a = symalg::to_string(a);
  r.b = symalg::to_string(b);
  r.mean_a = mean_a;
  r.mean_b = mean_b;
  r.delta_a = da;
  r.delta_b = db;
  r.product = da * db;
  r.robertson_bound = robertson;
  r.hbar_bound = rep.params().hbar;
  if (robertson > 0) r.saturation = r.product / robertson;
  return r;
}

}  // namespace

std::vector<UncertaintyReport> uncertainty_batch(const Representation& rep, const Matrix& psi,
                                                 const NCPolynomial& a, const NCPolynomial& b,
                                                 Backend backend) {
  require_observable(a, rep);
  require_observable(b, rep);
  require_state(rep, psi);
  const Matrix a_psi = repr::apply(a, rep, psi);
  const Matrix b_psi = repr::apply(b, rep, psi);
  const Moments m = uncertainty_moments(psi, a_psi, b_psi, backend);
  std::vector<UncertaintyReport> out;
  for (Eigen::Index j = 0; j < psi.cols(); ++j)
    out.push_back(make_report("column:" + std::to_string(j), a, b, rep,
                              psi.col(j).dot(a_psi.col(j)).real(),
                              psi.col(j).dot(b_psi.col(j)).real(), m.delta_a(j), m.delta_b(j),
                              m.robertson(j)));
  return out;
}

UncertaintyReport uncertainty(const Representation& rep, const Vector& psi, const NCPolynomial& a,
                              const NCPolynomial& b) {
  auto r = uncertainty_batch(rep, psi, a, b, Backend::serial);
  r.front().state = "vector";
  return r.front();
}

UncertaintyReport uncertainty(const Representation& rep, const StateSpec& state,
                              const NCPolynomial& a, const NCPolynomial& b,
                              const NCPolynomial& hamiltonian) {
  auto r = uncertainty(rep, make_state(rep, state, hamiltonian), a, b);
  r.state = state.to_string();
  return r;
}

const char* to_string(ScanQuantity q) {
  switch (q) {
    case ScanQuantity::commutator_scale:
      return "commutatorScale";
    case ScanQuantity::magnetic_length:
      return "magneticLength";
    case ScanQuantity::uncertainty_product:
      break;
  }
  return "uncertaintyProduct";
}

const char* to_string(Sector s) { return s == Sector::QQ ? "QQ" : "PP"; }

namespace {

double& param_slot(repr::Params& p, const std::string& name) {
  if (name == "hbar") return p.hbar;
  if (name == "e") return p.e;
  if (name == "B") return p.B;
  if (name == "M") return p.M;
  throw InvalidParam("cannot scan parameter '" + name + "' (expected hbar, e, B or M)");
}

double scan_value(ScanQuantity quantity, const repr::Params& p, const ScanContext& ctx) {
  switch (quantity) {
    case ScanQuantity::commutator_scale: {
      // Exact in the binary inputs, so ratios between rows are exact too.
      const Rational hbar(p.hbar), eb = Rational(p.e) * Rational(p.B);
      const Rational v = ctx.sector == Sector::QQ ? Rational(hbar / eb) : Rational(hbar * eb);
      return static_cast<double>(v);
    }
    case ScanQuantity::magnetic_length:
      return std::sqrt(p.hbar / (p.e * p.B));
    case ScanQuantity::uncertainty_product:
      break;
  }
  const auto rep = repr::landau_representation(ctx.ntrunc, p, ctx.epsilon12);
  return uncertainty(rep, StateSpec{}, ctx.a, ctx.b).product;
}

}  // namespace

ScanTable limit_scan(ScanQuantity quantity, const std::string& param_name,
                     const std::vector<double>& values, const ScanContext& context,
                     Backend backend) {
  repr::Params probe = context.params;
  param_slot(probe, param_name);
  for (double v : values)
    if (!(std::isfinite(v) && v > 0))
      throw InvalidParam("scan values must be finite and positive, got " + std::to_string(v));

  ScanTable table{quantity, param_name, std::vector<ScanRow>(values.size())};
  std::vector<std::exception_ptr> errors(values.size());
  auto row = [&](std::size_t i) {
    try {
      repr::Params p = context.params;
      param_slot(p, param_name) = values[i];
      table.rows[i] = {values[i], scan_value(quantity, p, context)};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const long n = static_cast<long>(values.size());
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) row(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < n; ++i) row(static_cast<std::size_t>(i));
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return table;
}

}  // namespace qaxiom::spectra
