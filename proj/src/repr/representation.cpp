#include "qaxiom/repr/representation.hpp"

#include <cmath>
#include <numbers>

#include "qaxiom/error.hpp"

namespace qaxiom::repr {

using symalg::to_string;

std::map<std::string, double> Params::values() const {
  std::map<std::string, double> out = extra;
  out["hbar"] = hbar;
  out["e"] = e;
  out["B"] = B;
  out["M"] = M;
  return out;
}

void Params::require_positive() const {
  for (auto [name, v] : {std::pair{"hbar", hbar}, {"e", e}, {"B", B}, {"M", M}})
    if (!(std::isfinite(v) && v > 0))
      throw InvalidParam(std::string(name) + " must be finite and positive, got " + std::to_string(v));
}

namespace {

bool diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != std::complex<double>(0.0)) return false;
  return true;
}

}  // namespace

Matrix KronSum::dense() const {
  const Eigen::Index d = n * n;
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (right.size() != 0) out.block(i * n, i * n, n, n) += right;
    if (left.size() != 0)
      for (Eigen::Index j = 0; j < n; ++j)
        if (left(i, j) != std::complex<double>(0.0))
          out.block(i * n, j * n, n, n).diagonal().array() += left(i, j);
  }
  if (diagonal.size() != 0) out.diagonal() += diagonal;
  return out;
}

Matrix KronSum::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  if (right.size() != 0) {
    // Column-major x viewed as n x (n * cols): each block of n rows is one i1.
    Eigen::Map<const Matrix> xs(x.data(), n, n * x.cols());
    Eigen::Map<Matrix> os(out.data(), n, n * x.cols());
    os.noalias() += right * xs;
  }
  if (left.size() != 0) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      Eigen::Map<const Matrix> xc(x.col(c).data(), n, n);  // (i2, i1)
      Eigen::Map<Matrix> oc(out.col(c).data(), n, n);
      oc.noalias() += xc * left.transpose();
    }
  }
  if (diagonal.size() != 0) out += diagonal.asDiagonal() * x;
  return out;
}

KronSum KronSum::transpose() const {
  return {n, left.size() ? Matrix(left.transpose()) : Matrix(),
          right.size() ? Matrix(right.transpose()) : Matrix(), diagonal};
}

Representation::Representation(std::string label, Provenance provenance, Params params,
                               int epsilon12, std::map<Generator, Matrix> assignment,
                               Matrix isometry)
    : label_(std::move(label)),
      provenance_(provenance),
      params_(std::move(params)),
      epsilon12_(epsilon12),
      dimension_(isometry.rows()),
      isometry_(std::move(isometry)) {
  for (auto& [g, m] : assignment) {
    check_shape(g, m.rows(), m.cols());
    Op o;
    o.diagonal = diagonal(m);
    o.dense = std::make_shared<Matrix>(std::move(m));
    ops_.emplace(g, std::move(o));
  }
}

Representation::Representation(std::string label, Provenance provenance, Params params,
                               int epsilon12, std::map<Generator, KronSum> assignment,
                               Matrix isometry, std::map<std::string, KronSum> auxiliary,
                               bool canonical_momenta)
    : label_(std::move(label)),
      provenance_(provenance),
      params_(std::move(params)),
      epsilon12_(epsilon12),
      dimension_(isometry.rows()),
      isometry_(std::move(isometry)),
      auxiliary_(std::move(auxiliary)),
      canonical_momenta_(canonical_momenta) {
  for (auto& [g, m] : assignment) {
    check_shape(g, m.n * m.n, m.n * m.n);
    Op o;
    o.diagonal = (m.left.size() == 0 || diagonal(m.left)) && (m.right.size() == 0 || diagonal(m.right));
    o.structured = std::move(m);
    ops_.emplace(g, std::move(o));
  }
}

void Representation::check_shape(Generator g, Eigen::Index rows, Eigen::Index cols) const {
  if (rows != dimension_ || cols != dimension_)
    throw InvalidParam("matrix for " + to_string(g) + " is not " + std::to_string(dimension_) + "x" +
                       std::to_string(dimension_));
}

const Representation::Op& Representation::op(Generator g) const {
  auto it = ops_.find(g);
  if (it == ops_.end())
    throw UnknownGenerator("representation '" + label_ + "' assigns no matrix to " + to_string(g));
  return it->second;
}

std::vector<Generator> Representation::generators() const {
  std::vector<Generator> out;
  for (const auto& [g, o] : ops_) out.push_back(g);
  return out;
}

const Matrix& Representation::matrix(Generator g) const {
  const Op& o = op(g);
  std::call_once(*o.once, [&] {
    if (!o.dense) o.dense = std::make_shared<Matrix>(o.structured->dense());
  });
  return *o.dense;
}

bool Representation::is_diagonal(Generator g) const { return op(g).diagonal; }

Matrix Representation::apply(Generator g, const Matrix& x) const {
  const Op& o = op(g);
  if (o.structured) return o.structured->apply(x);
  if (o.diagonal) return o.dense->diagonal().asDiagonal() * x;
  return *o.dense * x;
}

Matrix Representation::apply_right(const Matrix& x, Generator g) const {
  const Op& o = op(g);
  if (o.structured) return o.structured->transpose().apply(x.transpose()).transpose();
  if (o.diagonal) return x * o.dense->diagonal().asDiagonal();
  return x * *o.dense;
}

std::map<Generator, Matrix> Representation::assignment() const {
  std::map<Generator, Matrix> out;
  for (const auto& [g, o] : ops_) out.emplace(g, matrix(g));
  return out;
}

Representation Representation::transformed(const Matrix& unitary) const {
  std::map<Generator, Matrix> assignment;
  for (const auto& [g, o] : ops_) assignment[g] = unitary * matrix(g) * unitary.adjoint();
  return Representation(label_, provenance_, params_, epsilon12_, std::move(assignment),
                        unitary * isometry_);
}

Representation Representation::restricted(Eigen::Index rank) const {
  if (rank < 1 || rank > projector_rank())
    throw InvalidParam("restricted rank " + std::to_string(rank) + " outside [1, " +
                       std::to_string(projector_rank()) + "]");
  Representation out = *this;
  out.isometry_ = isometry_.leftCols(rank);
  return out;
}

Representation Representation::with_assignment(std::map<Generator, Matrix> assignment) const {
  return Representation(label_, provenance_, params_, epsilon12_, std::move(assignment), isometry_);
}

namespace {

// Truncated annihilation operator: a|n> = sqrt(n)|n-1>.
Matrix lowering(int n) {
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Representation landau_representation(int ntrunc, const Params& params, int epsilon12,
                                     int guiding_trunc) {
  if (ntrunc < 2) throw InvalidTruncation("ntrunc must be at least 2, got " + std::to_string(ntrunc));
  if (epsilon12 != 1 && epsilon12 != -1) throw InvalidParam("epsilon12 must be +1 or -1");
  params.require_positive();
  const std::complex<double> I(0.0, 1.0);
  const double eB = params.e * params.B;
  const double s = std::sqrt(params.hbar * eB / 2.0);

  const Matrix a = lowering(ntrunc);
  const Matrix ad = a.adjoint();
  Matrix pi1 = s * (a + ad);
  Matrix pi2 = I * s * (ad - a);
  Matrix q1 = -pi2 / eB;
  Matrix q2 = pi1 / eB;

  std::map<Generator, Matrix> assignment;
  Matrix isometry;
  if (epsilon12 == -1) {
    isometry = Matrix::Identity(ntrunc, ntrunc).leftCols(ntrunc - 1);
    assignment = {{Generator::P(1), pi1}, {Generator::P(2), pi2}, {Generator::Q(1), q1},
                  {Generator::Q(2), q2}};
  } else {
    if (guiding_trunc < 2)
      throw InvalidTruncation("guiding-center truncation must be at least 2");
    const int ng = guiding_trunc;
    const double t = std::sqrt(params.hbar / eB);
    const Matrix b = lowering(ng);
    const Matrix bd = b.adjoint();
    const Matrix x1 = t * (b + bd);
    const Matrix x2 = -I * t * (bd - b);
    const Matrix ic = Matrix::Identity(ntrunc, ntrunc);
    const Matrix ig = Matrix::Identity(ng, ng);
    assignment = {{Generator::P(1), kron(pi1, ig)},
                  {Generator::P(2), kron(pi2, ig)},
                  {Generator::Q(1), kron(q1, ig) + kron(ic, x1)},
                  {Generator::Q(2), kron(q2, ig) + kron(ic, x2)}};
    isometry = Matrix::Zero(static_cast<Eigen::Index>(ntrunc) * ng,
                            static_cast<Eigen::Index>(ntrunc - 1) * (ng - 1));
    Eigen::Index col = 0;
    for (int na = 0; na < ntrunc - 1; ++na)
      for (int nb = 0; nb < ng - 1; ++nb) isometry(na * ng + nb, col++) = 1.0;
  }
  return Representation("landau(ntrunc=" + std::to_string(ntrunc) + ")", Provenance::landau,
                        params, epsilon12, std::move(assignment), std::move(isometry));
}

namespace {

// Fourier differentiation on an even number of periodic points, period L.
Eigen::MatrixXd spectral_derivative(int n, double length) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      double sign = ((j - k) % 2 == 0) ? 1.0 : -1.0;
      d(j, k) = (std::numbers::pi / length) * sign / std::tan(std::numbers::pi * (j - k) / n);
    }
  return d;
}

// Lowest `count` Hermite functions of width sigma sampled on the grid and
// orthonormalized (modified Gram-Schmidt, so column order is preserved).
Eigen::MatrixXd hermite_isometry(const Eigen::VectorXd& x, double spacing, double sigma,
                                 int count) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd u(n, count);
  for (Eigen::Index j = 0; j < n; ++j) {
    double y = x(j) / sigma;
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y) / std::sqrt(sigma);
    for (int k = 0; k < count; ++k) {
      u(j, k) = cur * std::sqrt(spacing);
      double next = std::sqrt(2.0 / (k + 1)) * y * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
  }
  for (int k = 0; k < count; ++k) {
    for (int pass = 0; pass < 2; ++pass)
      for (int m = 0; m < k; ++m) u.col(k) -= u.col(m).dot(u.col(k)) * u.col(m);
    u.col(k).normalize();
  }
  return u;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Representation grid_representation(int npoints, double boxsize, GaugeKind gauge,
                                   const Params& params, int epsilon12) {
  if (npoints < 16 || !power_of_two(npoints))
    throw InvalidGrid("npoints must be a power of two >= 16, got " + std::to_string(npoints));
  if (!(std::isfinite(boxsize) && boxsize > 0))
    throw InvalidGrid("boxsize must be positive, got " + std::to_string(boxsize));
  if (epsilon12 != 1 && epsilon12 != -1) throw InvalidParam("epsilon12 must be +1 or -1");
  if (!(params.hbar > 0 && params.e > 0 && params.M > 0 && params.B >= 0 && std::isfinite(params.B)))
    throw InvalidParam("grid parameters must be positive (B may be zero)");

  const int n = npoints;
  const double h = boxsize / n;
  Eigen::VectorXd x(n);
  for (int j = 0; j < n; ++j) x(j) = -boxsize / 2 + j * h;

  const std::complex<double> I(0.0, 1.0);
  const Matrix k = -I * params.hbar * spectral_derivative(n, boxsize).cast<std::complex<double>>();
  Vector x1(n * n), x2(n * n);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      x1(i1 * n + i2) = x(i1);
      x2(i1 * n + i2) = x(i2);
    }

  const Mat2 j = gauge_matrix(gauge, params.B, epsilon12);
  auto shift = [&](int m) -> Vector {
    Vector a = -params.e * (j[m][0] * x1 + j[m][1] * x2);
    return a.cwiseAbs().maxCoeff() == 0.0 ? Vector() : a;
  };
  KronSum p1{n, k, Matrix(), shift(0)};
  KronSum p2{n, Matrix(), k, shift(1)};
  KronSum k1{n, k, Matrix(), Vector()};
  KronSum k2{n, Matrix(), k, Vector()};
  const bool canonical = gauge == GaugeKind::none || params.B == 0.0;

  const double sigma = boxsize / std::sqrt(2.0 * std::numbers::pi * n);
  const Eigen::MatrixXd u = hermite_isometry(x, h, sigma, n / 4);
  Matrix isometry = kron(u.cast<std::complex<double>>(), u.cast<std::complex<double>>());

  std::map<Generator, KronSum> assignment{{Generator::P(1), std::move(p1)},
                                          {Generator::P(2), std::move(p2)},
                                          {Generator::Q(1), KronSum{n, {}, {}, x1}},
                                          {Generator::Q(2), KronSum{n, {}, {}, x2}}};
  std::map<std::string, KronSum> aux{{"K1", std::move(k1)}, {"K2", std::move(k2)}};
  return Representation("grid(npoints=" + std::to_string(n) + ", gauge=" +
                            std::string(to_string(gauge)) + ")",
                        Provenance::grid, params, epsilon12, std::move(assignment),
                        std::move(isometry), std::move(aux), canonical);
}

}  // namespace qaxiom::repr
