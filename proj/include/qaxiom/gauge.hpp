#pragma once

#include <array>
#include <string>
#include <string_view>

namespace qaxiom {

/// Linear vector potentials for a constant field: A_m(Q) = sum_n J_mn Q_n.
///   paper:     A_m = B eps_mn Q_n        (curl 2 B eps_21)
///   symmetric: A = (B/2) (-Q2, Q1)       (curl B)
///   landau:    A = (0, B Q1)             (curl B)
enum class GaugeKind { none, paper, symmetric, landau };

using Mat2 = std::array<std::array<double, 2>, 2>;

inline Mat2 gauge_matrix(GaugeKind kind, double B, int epsilon12) {
  switch (kind) {
    case GaugeKind::paper:
      return {{{0.0, B * epsilon12}, {-B * epsilon12, 0.0}}};
    case GaugeKind::symmetric:
      return {{{0.0, -B / 2}, {B / 2, 0.0}}};
    case GaugeKind::landau:
      return {{{0.0, 0.0}, {B, 0.0}}};
    case GaugeKind::none:
      break;
  }
  return {{{0.0, 0.0}, {0.0, 0.0}}};
}

/// curl A = dA2/dQ1 - dA1/dQ2 in units of B.
inline double gauge_curl_factor(GaugeKind kind, int epsilon12) {
  switch (kind) {
    case GaugeKind::paper:
      return -2.0 * epsilon12;
    case GaugeKind::symmetric:
    case GaugeKind::landau:
      return 1.0;
    case GaugeKind::none:
      break;
  }
  return 0.0;
}

inline std::string_view to_string(GaugeKind kind) {
  switch (kind) {
    case GaugeKind::paper: return "paper";
    case GaugeKind::symmetric: return "symmetric";
    case GaugeKind::landau: return "landau";
    case GaugeKind::none: break;
  }
  return "none";
}

}  // namespace qaxiom
