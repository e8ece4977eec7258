#pragma once

// Two-qubit concurrence through the spin-flip construction.

#include <array>

#include "qmem/unruh_state.hpp"

namespace qmem {

/// Numerical tolerances of the concurrence pipeline.
struct ConcurrenceTolerance {
  /// Eigenvalues of rho * rho~ in [-clamp, 0) are treated as zero; anything
  /// lower is a failure.
  static constexpr double negative_clamp = 1e-9;
  static constexpr double max_imag = 1e-9;
  /// Eigenvalues of rho below rank_cut * lambda_max are exact zeros when
  /// taking sqrt(rho).
  static constexpr double rank_cut = 1e-14;
  /// Values in (1, 1 + overshoot] are rounded down to 1.
  static constexpr double overshoot = 1e-12;
};

struct ConcurrenceResult {
  double concurrence;
  /// Eigenvalues of rho * rho~, descending and non-negative.
  std::array<double, 4> lambdas;
  /// Largest |Im| among the eigenvalues of rho * rho~ from the general solver.
  double max_imag_residual;
};

/// (Y (x) Y) conj(rho) (Y (x) Y).
ComplexMatrix spin_flip(const DensityMatrix& rho);

/// C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).
///
/// The square roots sqrt(l_i) are obtained directly as the singular values of
/// sqrt(rho) (Y (x) Y) conj(sqrt(rho)), whose Gram matrix is similar to
/// rho * rho~. Taking square roots of eigenvalues that are zero up to rounding
/// would otherwise inflate ~1e-17 noise to ~1e-8. The eigenvalues of
/// rho * rho~ are also computed with the general solver as a consistency
/// check. Throws NumericalFailure when that check reports an imaginary part
/// above 1e-9 or a real part below -1e-9.
ConcurrenceResult concurrence(const DensityMatrix& rho);

/// max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) for lambdas already
/// sorted descending and non-negative, rounded down to 1 within overshoot.
double concurrence_from_lambdas(const std::array<double, 4>& sorted_lambdas);

}  // namespace qmem
