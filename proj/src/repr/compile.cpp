#include "qaxiom/repr/compile.hpp"

#include <map>

#include "qaxiom/error.hpp"

namespace qaxiom::repr {

namespace {

void apply_generator(const Representation& rep, Generator g, Matrix& x) { x = rep.apply(g, x); }

}  // namespace

Matrix compile(const symalg::NCPolynomial& p, const Representation& rep) {
  const Eigen::Index d = rep.dimension();
  const auto values = rep.params().values();
  Matrix out = Matrix::Zero(d, d);
  for (const auto& [w, c] : p.terms()) {
    std::complex<double> k = c.evaluate(values);
    if (w.empty()) {
      out.diagonal().array() += k;
      continue;
    }
    Matrix prod = rep.matrix(w.front());
    for (std::size_t i = 1; i < w.size(); ++i) prod = rep.apply_right(prod, w[i]);
    out += k * prod;
  }
  return out;
}

Matrix apply(const symalg::NCPolynomial& p, const Representation& rep, const Matrix& x) {
  const auto values = rep.params().values();
  for (Generator g : p.generators())
    if (!rep.assigns(g)) rep.matrix(g);
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const auto& [w, c] : p.terms()) {
    std::complex<double> k = c.evaluate(values);
    Matrix t = x;
    for (auto it = w.rbegin(); it != w.rend(); ++it) apply_generator(rep, *it, t);
    out += k * t;
  }
  return out;
}

Matrix apply_left(const Matrix& x, const symalg::NCPolynomial& p, const Representation& rep) {
  const auto values = rep.params().values();
  for (Generator g : p.generators())
    if (!rep.assigns(g)) rep.matrix(g);
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const auto& [w, c] : p.terms()) {
    std::complex<double> k = c.evaluate(values);
    Matrix t = x;
    for (Generator g : w) t = rep.apply_right(t, g);
    out += k * t;
  }
  return out;
}

double hermiticity_defect(const symalg::NCPolynomial& p, const Representation& rep) {
  const Matrix& v = rep.isometry();
  Matrix left = apply_left(v.adjoint(), p, rep);
  Matrix right = apply(p, rep, v);
  if (left.size() == 0) return 0.0;
  return (left - right.adjoint()).cwiseAbs().maxCoeff();
}

Matrix project(const symalg::NCPolynomial& p, const Representation& rep) {
  return rep.isometry().adjoint() * apply(p, rep, rep.isometry());
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

namespace {

double residual_from_images(const Matrix& lg, const Matrix& rg, const Matrix& lh, const Matrix& rh,
                            std::complex<double> expected) {
  Matrix r = lg * rh - lh * rg;
  r.diagonal().array() -= expected;
  return operator_norm(r);
}

// (V^dagger M, M V).
std::pair<Matrix, Matrix> images(const Representation& rep, Generator g) {
  const Matrix& v = rep.isometry();
  Matrix vd = v.adjoint();
  return {rep.apply_right(vd, g), rep.apply(g, v)};
}

}  // namespace

double commutator_residual(const Representation& rep, const Matrix& g, const Matrix& h,
                           std::complex<double> expected) {
  const Matrix& v = rep.isometry();
  Matrix rg = g * v, rh = h * v;
  Matrix lg = v.adjoint() * g, lh = v.adjoint() * h;
  return residual_from_images(lg, rg, lh, rh, expected);
}

double commutator_residual(const Representation& rep, Generator g, Generator h,
                           const symalg::Coefficient& expected) {
  auto [lg, rg] = images(rep, g);
  auto [lh, rh] = images(rep, h);
  return residual_from_images(lg, rg, lh, rh, expected.evaluate(rep.params().values()));
}

double default_tolerance(const Representation& rep, Generator g, Generator h) {
  if (rep.provenance() == Provenance::landau) return 1e-10;
  using symalg::GenKind;
  if (g.kind == GenKind::Q && h.kind == GenKind::Q) return 1e-12;
  if (g.kind != h.kind) return g.index == h.index ? 1e-5 : 1e-12;
  // Two momenta: exact only when they are the canonical spectral derivatives.
  return rep.canonical_momenta() ? 1e-12 : 1e-5;
}

std::vector<ResidualReport> representation_audit(const Representation& rep,
                                                 const symalg::Algebra& a,
                                                 std::optional<double> tolerance) {
  std::map<Generator, std::pair<Matrix, Matrix>> cache;
  for (const auto& entry : a.entries())
    for (Generator g : {entry.left, entry.right})
      if (!cache.count(g)) cache.emplace(g, images(rep, g));

  const auto values = rep.params().values();
  std::vector<ResidualReport> out;
  for (const auto& entry : a.entries()) {
    ResidualReport r{entry.left, entry.right, entry.value};
    const auto& [lg, rg] = cache.at(entry.left);
    const auto& [lh, rh] = cache.at(entry.right);
    r.norm = residual_from_images(lg, rg, lh, rh, entry.value.evaluate(values));
    r.tolerance = tolerance.value_or(default_tolerance(rep, entry.left, entry.right));
    r.pass = r.norm < r.tolerance;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qaxiom::repr
