#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qaxiom/gauge.hpp"
#include "qaxiom/symalg/algebra.hpp"

namespace qaxiom::repr {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using symalg::Generator;

/// Numeric values for the symbolic constants.
struct Params {
  double hbar = 1.0;
  double e = 1.0;
  double B = 1.0;
  double M = 1.0;
  std::map<std::string, double> extra;  // alphadot, user constants

  std::map<std::string, double> values() const;
  /// Throws InvalidParam unless hbar, e, B, M are finite and positive.
  void require_positive() const;
};

enum class Provenance { landau, grid };

/// Operator on C^n (x) C^n of the form left (x) 1 + 1 (x) right + diag(d),
/// with basis index i1 * n + i2. Empty factors are omitted.
struct KronSum {
  Eigen::Index n = 0;
  Matrix left;
  Matrix right;
  Vector diagonal;

  Matrix dense() const;
  /// this * x for x with n*n rows.
  Matrix apply(const Matrix& x) const;
  KronSum transpose() const;
};

/// Finite-dimensional assignment of complex matrices to generators, plus an
/// isometry V (d x r) whose range is the subspace on which commutator
/// identities survive truncation. Generators may be stored sparse; the dense
/// matrix is then built on first request.
class Representation {
 public:
  Representation(std::string label, Provenance provenance, Params params, int epsilon12,
                 std::map<Generator, Matrix> assignment, Matrix isometry);
  Representation(std::string label, Provenance provenance, Params params, int epsilon12,
                 std::map<Generator, KronSum> assignment, Matrix isometry,
                 std::map<std::string, KronSum> auxiliary, bool canonical_momenta);

  const std::string& label() const { return label_; }
  Provenance provenance() const { return provenance_; }
  const Params& params() const { return params_; }
  int epsilon12() const { return epsilon12_; }
  Eigen::Index dimension() const { return dimension_; }
  Eigen::Index projector_rank() const { return isometry_.cols(); }
  const Matrix& isometry() const { return isometry_; }

  std::vector<Generator> generators() const;
  bool assigns(Generator g) const { return ops_.count(g) != 0; }
  /// Throws UnknownGenerator.
  const Matrix& matrix(Generator g) const;
  /// True when the matrix of g is diagonal.
  bool is_diagonal(Generator g) const;
  /// m * x using whichever storage is cheapest.
  Matrix apply(Generator g, const Matrix& x) const;
  /// x * m.
  Matrix apply_right(const Matrix& x, Generator g) const;
  std::map<Generator, Matrix> assignment() const;
  /// Named helper operators (the canonical momenta "K1", "K2" on grids).
  const std::map<std::string, KronSum>& auxiliary() const { return auxiliary_; }
  /// True when P_m are the unshifted spectral derivatives, so [P1, P2] = 0
  /// holds exactly.
  bool canonical_momenta() const { return canonical_momenta_; }

  /// U M U^dagger for every matrix and U V for the isometry.
  Representation transformed(const Matrix& unitary) const;
  /// Same operators restricted to the first `rank` isometry columns.
  Representation restricted(Eigen::Index rank) const;
  /// Same operators with every generator replaced by the supplied matrices.
  Representation with_assignment(std::map<Generator, Matrix> assignment) const;

 private:
  struct Op {
    std::optional<KronSum> structured;
    mutable std::shared_ptr<Matrix> dense;
    mutable std::shared_ptr<std::once_flag> once = std::make_shared<std::once_flag>();
    bool diagonal = false;
  };
  const Op& op(Generator g) const;
  void check_shape(Generator g, Eigen::Index rows, Eigen::Index cols) const;

  std::string label_;
  Provenance provenance_;
  Params params_;
  int epsilon12_;
  Eigen::Index dimension_;
  std::map<Generator, Op> ops_;
  Matrix isometry_;
  std::map<std::string, KronSum> auxiliary_;
  bool canonical_momenta_ = false;
};

/// Ladder-operator realization. Kinetic momenta P_m = pi_m satisfy
/// [pi_1, pi_2] = i hbar e B. Positions are Q_m = -e_mn pi_n / (e B) + X_m,
/// where the guiding-center pair X is present only for epsilon12 = +1 with
/// [X1, X2] = -2 i hbar / (e B); with it [Q1, Q2] = -i eps12 hbar / (e B).
/// The isometry keeps every mode below its top rung.
/// Throws InvalidTruncation for ntrunc < 2 (or guiding_trunc < 2 when used).
Representation landau_representation(int ntrunc, const Params& params, int epsilon12 = -1,
                                     int guiding_trunc = 16);

/// Periodic npoints x npoints grid on [-L/2, L/2)^2 with Fourier-spectral
/// derivatives. Q_m are diagonal; P_m are kinetic momenta -i hbar d_m - e A_m
/// for the gauge (canonical when gauge = none). Canonical momenta are kept
/// as auxiliary "K1", "K2". Generators are stored as Kronecker sums. The isometry spans tensor products of the
/// lowest npoints/4 Hermite functions, which are localized away from the
/// periodic seam and band-limited well below Nyquist.
/// Throws InvalidGrid.
Representation grid_representation(int npoints, double boxsize, GaugeKind gauge,
                                   const Params& params, int epsilon12 = -1);

}  // namespace qaxiom::repr
