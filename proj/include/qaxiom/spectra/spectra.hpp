#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaxiom/backend.hpp"
#include "qaxiom/repr/representation.hpp"
#include "qaxiom/symalg/polynomial.hpp"

namespace qaxiom::spectra {

using repr::Matrix;
using repr::Representation;
using repr::Vector;
using symalg::NCPolynomial;

/// Cyclotron frequency convention: standard omega_c = eB/M, or the halved
/// eB/(2M) that sets omega_c equal to the rotation rate alphadot.
enum class Convention { standard, paper };

const char* to_string(Convention c);
double cyclotron_frequency(const repr::Params& p, Convention c);

/// Which subspace the Hamiltonian is diagonalized on. `full` uses every
/// basis state of the representation and skips the truncation check; it is
/// meant for grids, whose protected subspace excludes extended states such
/// as the constant mode.
enum class Subspace { projected, full };

struct SpectrumReport {
  std::string representation;
  std::string hamiltonian;
  repr::Params params;
  Convention convention = Convention::standard;
  Subspace subspace = Subspace::projected;
  double omega_c = 0.0;
  std::vector<double> eigenvalues;  // ascending
  /// eigenvalues[n] - hbar omega_c (n + 1/2)
  std::vector<double> deviations;
};

/// Lowest nlevels eigenvalues of V^dagger H V.
/// Throws NonHermitian when H fails Hermiticity by more than 1e-9 (relative
/// to max(1, |H V|)), InvalidParam when nlevels exceeds rank / 4, and
/// TruncationTooSmall when the top requested level moves by more than 1e-8
/// on the half-rank subspace.
SpectrumReport spectrum(const Representation& rep, const NCPolynomial& h, int nlevels,
                        Convention convention = Convention::standard,
                        Subspace subspace = Subspace::projected);

struct LevelCheck {
  int level = 0;
  double eigenvalue = 0.0;
  double expected = 0.0;
  double relative_error = 0.0;
  bool pass = false;
};

struct LandauLevelReport {
  Convention convention = Convention::standard;
  double tolerance = 1e-9;
  std::vector<LevelCheck> levels;
  /// Mean level spacing over hbar omega_c; absent with fewer than two levels.
  std::optional<double> spacing_ratio;
  bool all_pass() const;
};

/// Compares each eigenvalue with hbar omega_c (n + 1/2) under the report's
/// convention at relative tolerance 1e-9.
LandauLevelReport landau_level_check(const SpectrumReport& report, double tolerance = 1e-9);

/// State specifications: "ground", "basis:<n>", "random:<seed>". All live in
/// the protected subspace, psi = V c.
struct StateSpec {
  enum class Kind { ground, basis, random } kind = Kind::ground;
  long long value = 0;

  /// Throws InvalidState on anything else.
  static StateSpec parse(const std::string& text);
  std::string to_string() const;
};

/// The default Hamiltonian (P1^2 + P2^2) / (2 M).
NCPolynomial kinetic_hamiltonian();

/// Materializes a state. `ground` diagonalizes `hamiltonian` on the
/// protected subspace; `basis:n` is the n-th isometry column; `random:seed`
/// draws complex Gaussian coefficients from a seeded mt19937_64.
/// Throws InvalidState (basis index out of range).
Vector make_state(const Representation& rep, const StateSpec& spec,
                  const NCPolynomial& hamiltonian = kinetic_hamiltonian());

struct UncertaintyReport {
  std::string state;
  std::string a;
  std::string b;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double delta_a = 0.0;
  double delta_b = 0.0;
  double product = 0.0;
  /// |<[A, B]>| / 2
  double robertson_bound = 0.0;
  /// hbar, the unnormalized bound quoted for position-momentum pairs.
  double hbar_bound = 0.0;
  /// product / robertson_bound; absent when the bound vanishes.
  std::optional<double> saturation;
};

/// Standard deviations and bounds for observables a, b in the state psi.
/// Throws UnnormalizedState when |psi| differs from 1 by more than 1e-12,
/// InvalidState when psi leaves the protected subspace, and
/// NonHermitianObservable when a or b is not Hermitian within 1e-9.
UncertaintyReport uncertainty(const Representation& rep, const Vector& psi, const NCPolynomial& a,
                              const NCPolynomial& b);
UncertaintyReport uncertainty(const Representation& rep, const StateSpec& state,
                              const NCPolynomial& a, const NCPolynomial& b,
                              const NCPolynomial& hamiltonian = kinetic_hamiltonian());

/// Moments for many states at once. Column j of psi, a_psi and b_psi are a
/// state and the two observables applied to it.
struct Moments {
  Eigen::VectorXd delta_a, delta_b, robertson;
};
Moments uncertainty_moments(const Matrix& psi, const Matrix& a_psi, const Matrix& b_psi,
                            Backend backend = default_backend());

/// Uncertainty reports for states psi.col(j), sharing one application of
/// each observable.
std::vector<UncertaintyReport> uncertainty_batch(const Representation& rep, const Matrix& psi,
                                                 const NCPolynomial& a, const NCPolynomial& b,
                                                 Backend backend = default_backend());

enum class ScanQuantity { commutator_scale, magnetic_length, uncertainty_product };
enum class Sector { QQ, PP };

const char* to_string(ScanQuantity q);
const char* to_string(Sector s);

struct ScanContext {
  repr::Params params;
  Sector sector = Sector::QQ;
  int ntrunc = 64;
  int epsilon12 = -1;
  NCPolynomial a = NCPolynomial(symalg::Generator::Q(1));
  NCPolynomial b = NCPolynomial(symalg::Generator::Q(2));
};

struct ScanRow {
  double param = 0.0;
  double quantity = 0.0;
};

struct ScanTable {
  ScanQuantity quantity = ScanQuantity::commutator_scale;
  std::string param_name;
  std::vector<ScanRow> rows;
};

/// Sweeps one parameter (hbar, e, B or M) over `values`:
///   commutator_scale     hbar/(eB) for the QQ sector, hbar e B for PP,
///                        evaluated in exact rational arithmetic;
///   magnetic_length      sqrt(hbar/(eB));
///   uncertainty_product  Delta a * Delta b on the lowest state of the
///                        kinetic Hamiltonian of a ladder representation.
/// Rows are computed independently (in parallel under OpenMP) and returned
/// in input order. Throws InvalidParam for unknown names or values that are
/// not finite and positive.
ScanTable limit_scan(ScanQuantity quantity, const std::string& param_name,
                     const std::vector<double>& values, const ScanContext& context = {},
                     Backend backend = default_backend());

}  // namespace qaxiom::spectra
