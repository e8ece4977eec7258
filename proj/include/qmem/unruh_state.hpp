#pragma once

// Alice-Rob two-qubit state for a Dirac field mode seen by a uniformly
// accelerated observer, after tracing out the causally disconnected Rindler
// wedge.
//
// Basis ordering everywhere: |00>, |01>, |10>, |11>, with Alice as the first
// tensor factor and Rob (region I) as the second.

#include <numbers>
#include <string>

#include "qmem/matcore.hpp"

namespace qmem {

/// Tolerances shared by every DensityMatrix check.
struct StateTolerance {
  static constexpr double hermitian = 1e-12;
  static constexpr double trace = 1e-12;
  static constexpr double min_eigenvalue = -1e-10;
};

/// A validated 4x4 two-qubit density matrix: Hermitian, unit trace and
/// positive semidefinite, each up to StateTolerance.
class DensityMatrix {
 public:
  /// Throws InvalidArgument if any invariant fails.
  explicit DensityMatrix(ComplexMatrix mat);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Complex operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  /// weight * a + (1 - weight) * b, weight in [0, 1].
  static DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double weight);

 private:
  ComplexMatrix mat_;
};

/// Reasons a candidate matrix is not a density matrix, empty when it is one.
std::string density_matrix_violation(const ComplexMatrix& mat);

/// Frequency, speed of light and proper acceleration in SI units.
struct AccelerationInput {
  double omega;
  double c;
  double a;
};

/// Dimensionless Unruh angle r in [0, pi/4]; r = 0 is the inertial limit and
/// r -> pi/4 the infinite-acceleration limit.
class UnruhParam {
 public:
  /// Throws InvalidArgument outside [0, pi/4].
  explicit UnruhParam(double r);
  double value() const noexcept { return r_; }

  static constexpr double max_value() { return std::numbers::pi / 4; }

 private:
  double r_;
};

/// cos r = (exp(-2 pi omega c / a) + 1)^(-1/2), evaluated as
/// r = atan(exp(-pi omega c / a)) so that a -> infinity lands exactly on pi/4.
/// Throws InvalidArgument unless omega, c, a are all positive.
UnruhParam unruh_param_from_acceleration(const AccelerationInput& in);

/// 1/2 [cos^2 r |00><00| + cos r (|00><11| + |11><00|) + sin^2 r |01><01| + |11><11|]
DensityMatrix unruh_density_matrix(UnruhParam r);

/// |Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt(2).
DensityMatrix bell_state();

}  // namespace qmem
