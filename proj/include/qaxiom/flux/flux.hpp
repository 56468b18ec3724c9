#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qaxiom/backend.hpp"
#include "qaxiom/gauge.hpp"
#include "qaxiom/symalg/scalar.hpp"
#include "qaxiom/symalg/substitution.hpp"

namespace qaxiom::flux {

using Point = std::array<double, 2>;

/// Affine planar field F(q) = J q + c.
struct AffineField {
  Mat2 j{};
  Point c{};
  Point at(const Point& q) const {
    return {j[0][0] * q[0] + j[0][1] * q[1] + c[0], j[1][0] * q[0] + j[1][1] * q[1] + c[1]};
  }
};

/// Vector potential of a constant magnetic field in one of three gauges.
class GaugeField {
 public:
  /// Throws InvalidParam for kind none or non-finite B, e.
  GaugeField(GaugeKind kind, double B, double e = 1.0, int epsilon12 = -1);

  GaugeKind kind() const { return kind_; }
  double B() const { return B_; }
  double e() const { return e_; }
  int epsilon12() const { return epsilon12_; }

  Point A(const Point& q) const;
  /// curl A as an exact multiple of the constant B, e.g. "2*B".
  symalg::Coefficient symbolic_curl() const;
  double curl() const;
  /// The field momentum e A as an affine field.
  AffineField field_momentum() const;

 private:
  GaugeKind kind_;
  double B_;
  double e_;
  int epsilon12_;
};

/// Polyline in the plane. A closed path joins its last point back to the
/// first; the first point is not repeated.
class LoopPath {
 public:
  /// Throws InvalidPath: non-finite points, fewer than 2 points, fewer than
  /// 3 when closed, or a closed path that repeats its first point at the end.
  LoopPath(std::vector<Point> points, bool closed = true);

  /// Regular n-gon inscribed in the circle, counterclockwise from angle 0.
  static LoopPath circle(double radius, long n, Point center = {0.0, 0.0});
  /// "circle:r=1,n=100000[,cx=0,cy=0]".
  static LoopPath parse_generator(const std::string& spec);
  /// Two comma- or whitespace-separated columns per line; blank lines and
  /// lines starting with '#' are skipped, as is one non-numeric header. The
  /// path is closed when the last row repeats the first (the repeat is
  /// dropped) and open otherwise.
  static LoopPath parse_csv(const std::string& text);

  const std::vector<Point>& points() const { return points_; }
  bool closed() const { return closed_; }
  std::size_t segment_count() const { return closed_ ? points_.size() : points_.size() - 1; }
  double length() const;
  /// Shoelace area, positive for counterclockwise loops.
  double signed_area() const;
  LoopPath reversed() const;
  LoopPath translated(const Point& by) const;

 private:
  std::vector<Point> points_;
  bool closed_;
};

/// Midpoint-rule integral of F . dq over every segment of the path. Exact
/// for affine F on polylines. The OpenMP kernel sums fixed 4096-segment
/// chunks and adds the chunk totals in order, so its result does not depend
/// on the thread count.
double line_integral(const LoopPath& path, const AffineField& f, Backend backend = default_backend());

/// e times the closed-loop integral of A . dq. Throws OpenPath.
double loop_integral(const LoopPath& path, const GaugeField& g, Backend backend = default_backend());

struct FluxReport {
  double value = 0.0;
  double h = 0.0;
  long long nearest_n = 0;
  /// |value - N h| / h, in [0, 0.5]
  double residual = 0.0;
  double tolerance = 0.0;
  bool quantized = false;
};

/// Nearest multiple of h. Throws NonPositiveQuantum unless h > 0.
FluxReport flux_quantization(double value, double h, double tolerance = 1e-6);

struct PlaquetteReport {
  int npoints = 0;
  double spacing = 0.0;
  long long plaquettes = 0;
  /// Principal value in (-pi, pi] of the phase accumulated around one
  /// counterclockwise plaquette, (e / hbar) times the loop integral of A;
  /// the product of Peierls factors exp(-i (e / hbar) int A . dl) around it
  /// is exp(-i phase).
  double phase = 0.0;
  /// Largest circular distance of any plaquette from `phase`.
  double max_deviation = 0.0;
  /// Principal value of the summed phase over all plaquettes.
  double total_phase = 0.0;
  /// Principal value of e curl spacing^2 / hbar.
  double expected_phase = 0.0;
};

/// Link phases on an npoints x npoints lattice centered at the origin.
/// Throws InvalidGrid for npoints < 2 or spacing <= 0, InvalidParam for
/// hbar <= 0.
PlaquetteReport plaquette_phase(int npoints, double spacing, const GaugeField& g, double hbar,
                                Backend backend = default_backend());

/// Closed-loop integral of P . dq with each P_m replaced by the rule's image,
/// which must be affine in Q1, Q2. Constants are evaluated with e and B
/// taken from the field and everything else (hbar, M, alphadot, ...) from
/// `values`. Uses the same quadrature as loop_integral.
/// Throws OpenPath, NonLinearSubstitution, MissingParam.
double canonical_action_integral(const LoopPath& path, const symalg::Substitution& rule,
                                 const GaugeField& g,
                                 const std::map<std::string, double>& values = {},
                                 Backend backend = default_backend());

/// The rule P_m = e A_m for a gauge field.
symalg::Substitution field_momentum_rule(const GaugeField& g);

/// Principal value in (-pi, pi].
double principal_angle(double x);

}  // namespace qaxiom::flux
