#pragma once

// Closed-form reference expressions for the final two-qubit state and for the
// eigenvalues of rho * rho~, one set per channel, transcribed term for term
// from their published form.
//
// They are audit targets, not ground truth: the Kraus pipeline in channels.hpp
// is authoritative. Several published matrices carry an off-diagonal entry
// with no Hermitian partner, and some eigenvalue expressions take square roots
// of negative radicands; both are reported rather than repaired.

#include <array>
#include <optional>

#include "qmem/channels.hpp"

namespace qmem {

enum class ClosedFormVariant {
  /// Every entry exactly as published.
  Literal,
  /// Off-diagonal entries whose transpose position is structurally zero are
  /// dropped. All other entries, including mismatched pairs, are kept.
  PairedEntriesOnly,
};

/// Final state after the channel, as a plain matrix (it need not be a valid
/// density matrix). r is the Unruh angle in radians.
ComplexMatrix closed_form_state(ChannelKind kind, double p, double mu, double r,
                                ClosedFormVariant variant = ClosedFormVariant::Literal);

/// Published eigenvalues of rho * rho~, in published order (not sorted). An
/// entry is NaN wherever the expression takes the root of a negative radicand.
std::array<double, 4> closed_form_lambdas(ChannelKind kind, double p, double mu, double r);

struct ClosedFormConcurrence {
  /// NaN when `has_nan` or `negative_lambda` is set.
  double value;
  /// closed_form_lambdas sorted descending (NaNs last), before clamping.
  std::array<double, 4> sorted_lambdas;
  bool has_nan;
  /// Some lambda is below -kClosedFormNegativeTolerance.
  bool negative_lambda;
};

inline constexpr double kClosedFormNegativeTolerance = 1e-6;
/// Closed-form lambdas below this fraction of the largest one are rounding
/// residue of a cancelling difference and count as zero.
inline constexpr double kClosedFormRelativeFloor = 1e-14;

ClosedFormConcurrence concurrence_closed_form(ChannelKind kind, double p, double mu, double r);

/// Comparison of the closed forms against the Kraus pipeline at one point.
/// Optional fields are empty when the closed form is not finite there.
struct CrosscheckReport {
  ChannelKind kind;
  double p;
  double mu;
  double r;
  /// max entry deviation of the literal matrix from the pipeline state.
  double matrix_max_dev;
  /// Same, with unpaired off-diagonal entries dropped.
  double matrix_paired_max_dev;
  /// Whether the literal matrix is Hermitian within the requested tolerance.
  bool matrix_hermitian;
  bool matrix_paired_hermitian;
  std::optional<double> lambda_max_dev;
  std::optional<double> concurrence_dev;
  bool lambda_nan;
  bool lambda_negative;
};

/// Never throws on a mismatch; mismatches are data. `tol` is the Hermiticity
/// tolerance applied to the literal matrix.
CrosscheckReport crosscheck_point(ChannelKind kind, double p, double mu, double r, double tol);

}  // namespace qmem
