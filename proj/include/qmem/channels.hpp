#pragma once

// Noise channels acting on both qubits of the Alice-Rob pair, with partial
// memory between the two channel uses.
//
// A memory parameter mu in [0, 1] interpolates between independent noise on
// each qubit (mu = 0) and the same error operator hitting both qubits (mu = 1).

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qmem/matcore.hpp"
#include "qmem/unruh_state.hpp"

namespace qmem {

enum class ChannelKind { AmplitudeDamping, Depolarizing, BitPhaseFlip, PhaseFlip };

inline constexpr std::array<ChannelKind, 4> kAllChannels = {
    ChannelKind::AmplitudeDamping, ChannelKind::Depolarizing, ChannelKind::BitPhaseFlip, ChannelKind::PhaseFlip};

/// "ad", "dep", "bpf", "pf".
std::string_view short_name(ChannelKind kind);
/// "amplitude damping", "depolarizing", ...
std::string_view display_name(ChannelKind kind);
/// Accepts the short names; throws InvalidArgument otherwise.
ChannelKind parse_channel_kind(std::string_view text);

/// Channel kind plus decoherence probability p and memory mu, both in [0, 1].
class ChannelSpec {
 public:
  /// Throws InvalidArgument when p or mu is outside [0, 1] (no clamping).
  ChannelSpec(ChannelKind kind, double p, double mu);

  ChannelKind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  double mu() const noexcept { return mu_; }

 private:
  ChannelKind kind_;
  double p_;
  double mu_;
};

/// Operators of a channel rho -> sum_k K rho K^dagger, already scaled.
class KrausSet {
 public:
  KrausSet() = default;
  explicit KrausSet(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }

 private:
  std::vector<ComplexMatrix> ops_;
};

/// Completeness tolerance every constructed KrausSet is held to.
inline constexpr double kCompletenessTolerance = 1e-12;

/// Single-qubit operators of the uncorrelated channel:
///   AD:  {diag(1, sqrt(1-p)), sqrt(p)|0><1|}
///   Dep: {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}
///   BPF: {sqrt(1-p) I, sqrt(p) Y}
///   PF:  {sqrt(1-p) I, sqrt(p) Z}
std::vector<ComplexMatrix> single_qubit_kraus(ChannelKind kind, double p);

/// Probabilities over (I, X, Y, Z) for the Pauli channels. Throws
/// InvalidArgument for AmplitudeDamping.
std::array<double, 4> pauli_probability_vector(ChannelKind kind, double p);

/// A_ij = sqrt(p_i [(1 - mu) p_j + mu delta_ij]) sigma_i (x) sigma_j.
/// Operators with zero weight are dropped.
KrausSet correlated_pauli_kraus(ChannelKind kind, double p, double mu);

/// Fully correlated amplitude damping on two qubits, sin(chi) = sqrt(p):
///   {diag(cos chi, 1, 1, 1), sin chi |11><00|}.
KrausSet correlated_ad_kraus(double p);

/// All products A_i (x) A_j of the single-qubit operators (independent noise).
KrausSet uncorrelated_kraus(ChannelKind kind, double p);

/// One Kraus set realizing the whole two-use channel described by `spec`. For
/// amplitude damping this is sqrt(1-mu) * uncorrelated plus sqrt(mu) *
/// correlated operators.
KrausSet channel_kraus(const ChannelSpec& spec);

/// max |sum_k K^dagger K - I|.
double completeness_residual(const KrausSet& ks);

/// sum_k K rho K^dagger without validating the result.
ComplexMatrix apply_kraus(const ComplexMatrix& rho, const KrausSet& ks);

/// Pushes rho through the two-use memory channel. Throws NumericalFailure if the
/// output is not a valid density matrix.
DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelSpec& spec);

}  // namespace qmem
