#include "qaxiom/flux/flux.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qaxiom/error.hpp"

namespace qaxiom::flux {

using symalg::Coefficient;
using symalg::Generator;
using symalg::NCPolynomial;

GaugeField::GaugeField(GaugeKind kind, double B, double e, int epsilon12)
    : kind_(kind), B_(B), e_(e), epsilon12_(epsilon12) {
  if (kind == GaugeKind::none) throw InvalidParam("a gauge field needs kind paper, symmetric or landau");
  if (!std::isfinite(B) || !std::isfinite(e)) throw InvalidParam("B and e must be finite");
  if (epsilon12 != 1 && epsilon12 != -1) throw InvalidParam("epsilon12 must be +1 or -1");
}

Point GaugeField::A(const Point& q) const {
  const Mat2 j = gauge_matrix(kind_, B_, epsilon12_);
  return AffineField{j, {}}.at(q);
}

Coefficient GaugeField::symbolic_curl() const {
  return Coefficient(static_cast<int>(gauge_curl_factor(kind_, epsilon12_))) *
         Coefficient::constant("B");
}

double GaugeField::curl() const { return gauge_curl_factor(kind_, epsilon12_) * B_; }

AffineField GaugeField::field_momentum() const {
  Mat2 j = gauge_matrix(kind_, B_, epsilon12_);
  for (auto& row : j)
    for (double& x : row) x *= e_;
  return {j, {}};
}

LoopPath::LoopPath(std::vector<Point> points, bool closed)
    : points_(std::move(points)), closed_(closed) {
  for (const auto& p : points_)
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw InvalidPath("path point is not finite");
  if (points_.size() < 2) throw InvalidPath("a path needs at least 2 points");
  if (closed_) {
    if (points_.size() < 3) throw InvalidPath("a closed path needs at least 3 points");
    if (points_.front() == points_.back())
      throw InvalidPath("a closed path must not repeat its first point at the end");
  }
}

LoopPath LoopPath::circle(double radius, long n, Point center) {
  if (!(std::isfinite(radius) && radius > 0)) throw InvalidPath("circle radius must be positive");
  if (n < 3) throw InvalidPath("a circle needs at least 3 segments");
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    pts[static_cast<std::size_t>(k)] = {center[0] + radius * std::cos(t),
                                        center[1] + radius * std::sin(t)};
  }
  return LoopPath(std::move(pts), true);
}

namespace {

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

LoopPath LoopPath::parse_generator(const std::string& spec) {
  const std::string prefix = "circle:";
  if (spec.rfind(prefix, 0) != 0)
    throw InvalidPath("unknown path generator '" + spec + "' (expected circle:r=<r>,n=<n>)");
  double r = 1.0, n = 0.0, cx = 0.0, cy = 0.0;
  bool have_n = false;
  std::stringstream in(spec.substr(prefix.size()));
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    double v = 0.0;
    if (eq == std::string::npos || !parse_double(item.substr(eq + 1), v))
      throw InvalidPath("malformed circle parameter '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (key == "r") {
      r = v;
    } else if (key == "n") {
      n = v;
      have_n = true;
    } else if (key == "cx") {
      cx = v;
    } else if (key == "cy") {
      cy = v;
    } else {
      throw InvalidPath("unknown circle parameter '" + key + "'");
    }
  }
  if (!have_n || n != std::floor(n) || n > 1e9)
    throw InvalidPath("circle needs an integer segment count n");
  return circle(r, static_cast<long>(n), {cx, cy});
}

LoopPath LoopPath::parse_csv(const std::string& text) {
  std::vector<Point> pts;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    std::istringstream fields(line);
    std::vector<std::string> cols;
    for (std::string f; fields >> f;) cols.push_back(f);
    double x = 0.0, y = 0.0;
    const bool numeric = cols.size() == 2 && parse_double(cols[0], x) && parse_double(cols[1], y);
    if (!numeric) {
      if (header_allowed && pts.empty()) {
        header_allowed = false;
        continue;
      }
      throw InvalidPath("line " + std::to_string(lineno) + ": expected two numeric columns");
    }
    header_allowed = false;
    pts.push_back({x, y});
  }
  bool closed = pts.size() >= 2 && pts.front() == pts.back();
  if (closed) pts.pop_back();
  return LoopPath(std::move(pts), closed);
}

double LoopPath::length() const {
  double total = 0.0;
  const std::size_t n = points_.size();
  for (std::size_t k = 0; k < segment_count(); ++k) {
    const Point& a = points_[k];
    const Point& b = points_[(k + 1) % n];
    total += std::hypot(b[0] - a[0], b[1] - a[1]);
  }
  return total;
}

double LoopPath::signed_area() const {
  double twice = 0.0;
  const std::size_t n = points_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point& a = points_[k];
    const Point& b = points_[(k + 1) % n];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return twice / 2.0;
}

LoopPath LoopPath::reversed() const {
  std::vector<Point> pts(points_.rbegin(), points_.rend());
  return LoopPath(std::move(pts), closed_);
}

LoopPath LoopPath::translated(const Point& by) const {
  std::vector<Point> pts = points_;
  for (auto& p : pts) {
    p[0] += by[0];
    p[1] += by[1];
  }
  return LoopPath(std::move(pts), closed_);
}

namespace {

constexpr std::size_t kChunk = 4096;

inline double segment_term(const std::vector<Point>& pts, std::size_t k, const AffineField& f) {
  const Point& a = pts[k];
  const Point& b = pts[k + 1 == pts.size() ? 0 : k + 1];
  const Point mid{(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0};
  const Point v = f.at(mid);
  return v[0] * (b[0] - a[0]) + v[1] * (b[1] - a[1]);
}

}  // namespace

double line_integral(const LoopPath& path, const AffineField& f, Backend backend) {
  const auto& pts = path.points();
  const std::size_t n = path.segment_count();
  if (backend == Backend::serial) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += segment_term(pts, k, f);
    return total;
  }
  const long chunks = static_cast<long>((n + kChunk - 1) / kChunk);
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += segment_term(pts, k, f);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

double loop_integral(const LoopPath& path, const GaugeField& g, Backend backend) {
  if (!path.closed()) throw OpenPath("loop_integral needs a closed path");
  return line_integral(path, g.field_momentum(), backend);
}

FluxReport flux_quantization(double value, double h, double tolerance) {
  if (!(h > 0) || !std::isfinite(h)) throw NonPositiveQuantum("flux quantum must be positive");
  if (!std::isfinite(value)) throw InvalidParam("flux value must be finite");
  FluxReport r;
  r.value = value;
  r.h = h;
  r.tolerance = tolerance;
  const double ratio = value / h;
  r.nearest_n = std::llround(ratio);
  r.residual = std::min(0.5, std::abs(ratio - static_cast<double>(r.nearest_n)));
  r.quantized = r.residual < tolerance;
  return r;
}

double principal_angle(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(x, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

namespace {

double circular_distance(double a, double b) { return std::abs(principal_angle(a - b)); }

}  // namespace

PlaquetteReport plaquette_phase(int npoints, double spacing, const GaugeField& g, double hbar,
                                Backend backend) {
  if (npoints < 2) throw InvalidGrid("plaquette lattice needs npoints >= 2");
  if (!(spacing > 0) || !std::isfinite(spacing)) throw InvalidGrid("lattice spacing must be positive");
  if (!(hbar > 0) || !std::isfinite(hbar)) throw InvalidParam("hbar must be positive");

  const int n = npoints;
  const double a = spacing;
  const AffineField f = g.field_momentum();
  auto coord = [&](int i) { return (i - (n - 1) / 2.0) * a; };
  // Phase (e / hbar) int A . dl along the bond from site (i, j) in +x or +y.
  auto link_x = [&](int i, int j) {
    const Point v = f.at({coord(i) + a / 2, coord(j)});
    return v[0] * a / hbar;
  };
  auto link_y = [&](int i, int j) {
    const Point v = f.at({coord(i), coord(j) + a / 2});
    return v[1] * a / hbar;
  };
  auto plaquette = [&](int i, int j) {
    return link_x(i, j) + link_y(i + 1, j) - link_x(i, j + 1) - link_y(i, j);
  };

  PlaquetteReport r;
  r.npoints = n;
  r.spacing = a;
  r.plaquettes = static_cast<long long>(n - 1) * (n - 1);
  const double reference = plaquette(0, 0);
  r.phase = principal_angle(reference);
  r.expected_phase = principal_angle(g.e() * g.curl() * a * a / hbar);

  std::vector<double> row_sum(static_cast<std::size_t>(n - 1), 0.0);
  std::vector<double> row_dev(static_cast<std::size_t>(n - 1), 0.0);
  auto row = [&](int j) {
    double s = 0.0, dev = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double p = plaquette(i, j);
      s += p;
      dev = std::max(dev, circular_distance(p, reference));
    }
    row_sum[static_cast<std::size_t>(j)] = s;
    row_dev[static_cast<std::size_t>(j)] = dev;
  };
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n - 1; ++j) row(j);
  } else {
    for (int j = 0; j < n - 1; ++j) row(j);
  }
  double total = 0.0;
  for (int j = 0; j < n - 1; ++j) {
    total += row_sum[static_cast<std::size_t>(j)];
    r.max_deviation = std::max(r.max_deviation, row_dev[static_cast<std::size_t>(j)]);
  }
  r.total_phase = principal_angle(total);
  return r;
}

namespace {

// Reads off J and c from an image that is affine in Q1, Q2.
void affine_row(const NCPolynomial& image, int m, const std::map<std::string, double>& values,
                AffineField& f) {
  for (const auto& [w, c] : image.terms()) {
    const std::complex<double> v = c.evaluate(values);
    if (std::abs(v.imag()) > 1e-15 * std::max(1.0, std::abs(v.real())))
      throw NonLinearSubstitution("momentum rule for P" + std::to_string(m + 1) +
                                  " has a complex coefficient");
    if (w.empty()) {
      f.c[m] += v.real();
    } else if (w.size() == 1 && w[0].kind == symalg::GenKind::Q && w[0].index >= 1 &&
               w[0].index <= 2) {
      f.j[m][w[0].index - 1] += v.real();
    } else {
      throw NonLinearSubstitution("momentum rule for P" + std::to_string(m + 1) +
                                  " must be affine in Q1, Q2, got " + symalg::to_string(image));
    }
  }
}

}  // namespace

double canonical_action_integral(const LoopPath& path, const symalg::Substitution& rule,
                                 const GaugeField& g, const std::map<std::string, double>& values,
                                 Backend backend) {
  if (!path.closed()) throw OpenPath("canonical_action_integral needs a closed path");
  std::map<std::string, double> all = values;
  all["e"] = g.e();
  all["B"] = g.B();
  AffineField f;
  for (int m = 0; m < 2; ++m) affine_row(rule.image(Generator::P(m + 1)), m, all, f);
  return line_integral(path, f, backend);
}

symalg::Substitution field_momentum_rule(const GaugeField& g) {
  const Mat2 unit = gauge_matrix(g.kind(), 1.0, g.epsilon12());
  const Coefficient eb = Coefficient::constant("e") * Coefficient::constant("B");
  std::map<Generator, NCPolynomial> images;
  for (int m = 0; m < 2; ++m) {
    NCPolynomial img;
    for (int n = 0; n < 2; ++n) {
      // Entries of the unit-field gauge matrix are 0, +-1 or +-1/2.
      const double u = unit[m][n];
      if (u == 0.0) continue;
      const symalg::Rational r = std::abs(u) == 0.5 ? symalg::Rational(1, 2) : symalg::Rational(1);
      const Coefficient k(symalg::Gaussian(u < 0 ? symalg::Rational(-r) : r));
      img.add({Generator::Q(n + 1)}, k * eb);
    }
    images[Generator::P(m + 1)] = img;
  }
  return symalg::Substitution(images);
}

}  // namespace qaxiom::flux
