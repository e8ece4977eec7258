#include "qmem/channels.hpp"

#include <cmath>
#include <sstream>

namespace qmem {

namespace {

void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name << "=" << v << " outside [0, 1]";
    throw InvalidArgument(msg.str());
  }
}

// sqrt(1 - 3p/4) is real for p <= 1, but 1 - p can round to -0.0 or a tiny
// negative; keep the argument non-negative.
double safe_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace

std::string_view short_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return "ad";
    case ChannelKind::Depolarizing: return "dep";
    case ChannelKind::BitPhaseFlip: return "bpf";
    case ChannelKind::PhaseFlip: return "pf";
  }
  return "?";
}

std::string_view display_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return "amplitude damping";
    case ChannelKind::Depolarizing: return "depolarizing";
    case ChannelKind::BitPhaseFlip: return "bit-phase flip";
    case ChannelKind::PhaseFlip: return "phase flip";
  }
  return "?";
}

ChannelKind parse_channel_kind(std::string_view text) {
  for (ChannelKind k : kAllChannels) {
    if (short_name(k) == text) return k;
  }
  throw InvalidArgument("unknown channel '" + std::string(text) + "' (expected ad, dep, bpf or pf)");
}

ChannelSpec::ChannelSpec(ChannelKind kind, double p, double mu) : kind_(kind), p_(p), mu_(mu) {
  require_probability(p, "p");
  require_probability(mu, "mu");
}

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  for (const auto& k : ops_) {
    if (!k.is_square() || k.rows() != ops_.front().rows()) {
      throw InvalidArgument("KrausSet: operators must be square and of equal size");
    }
  }
}

std::vector<ComplexMatrix> single_qubit_kraus(ChannelKind kind, double p) {
  require_probability(p, "p");
  switch (kind) {
    case ChannelKind::AmplitudeDamping:
      return {ComplexMatrix{{1.0, 0.0}, {0.0, safe_sqrt(1.0 - p)}},
              ComplexMatrix{{0.0, std::sqrt(p)}, {0.0, 0.0}}};
    case ChannelKind::Depolarizing: {
      const double w = std::sqrt(p / 4.0);
      return {safe_sqrt(1.0 - 3.0 * p / 4.0) * pauli::identity(), w * pauli::x(), w * pauli::y(), w * pauli::z()};
    }
    case ChannelKind::BitPhaseFlip:
      return {safe_sqrt(1.0 - p) * pauli::identity(), std::sqrt(p) * pauli::y()};
    case ChannelKind::PhaseFlip:
      return {safe_sqrt(1.0 - p) * pauli::identity(), std::sqrt(p) * pauli::z()};
  }
  throw InvalidArgument("single_qubit_kraus: unknown channel kind");
}

std::array<double, 4> pauli_probability_vector(ChannelKind kind, double p) {
  require_probability(p, "p");
  switch (kind) {
    case ChannelKind::Depolarizing: return {1.0 - 3.0 * p / 4.0, p / 4.0, p / 4.0, p / 4.0};
    case ChannelKind::BitPhaseFlip: return {1.0 - p, 0.0, p, 0.0};
    case ChannelKind::PhaseFlip: return {1.0 - p, 0.0, 0.0, p};
    case ChannelKind::AmplitudeDamping: break;
  }
  throw InvalidArgument("amplitude damping is not a Pauli channel");
}

KrausSet correlated_pauli_kraus(ChannelKind kind, double p, double mu) {
  require_probability(mu, "mu");
  const auto probs = pauli_probability_vector(kind, p);
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double weight = probs[i] * ((1.0 - mu) * probs[j] + (i == j ? mu : 0.0));
      if (weight <= 0.0) continue;
      ops.push_back(std::sqrt(weight) * tensor(pauli::by_index(i), pauli::by_index(j)));
    }
  }
  return KrausSet(std::move(ops));
}

KrausSet correlated_ad_kraus(double p) {
  require_probability(p, "p");
  const double sin_chi = std::sqrt(p);
  const double cos_chi = safe_sqrt(1.0 - p);
  ComplexMatrix a00 = ComplexMatrix::diagonal({cos_chi, 1.0, 1.0, 1.0});
  ComplexMatrix a11 = ComplexMatrix(4, 4).with_entry(3, 0, sin_chi);
  return KrausSet({std::move(a00), std::move(a11)});
}

KrausSet uncorrelated_kraus(ChannelKind kind, double p) {
  const auto single = single_qubit_kraus(kind, p);
  std::vector<ComplexMatrix> ops;
  ops.reserve(single.size() * single.size());
  for (const auto& a : single)
    for (const auto& b : single) ops.push_back(tensor(a, b));
  return KrausSet(std::move(ops));
}

KrausSet channel_kraus(const ChannelSpec& spec) {
  if (spec.kind() != ChannelKind::AmplitudeDamping) {
    return correlated_pauli_kraus(spec.kind(), spec.p(), spec.mu());
  }
  std::vector<ComplexMatrix> ops;
  const double mu = spec.mu();
  if (mu < 1.0) {
    const double w = std::sqrt(1.0 - mu);
    const KrausSet independent = uncorrelated_kraus(spec.kind(), spec.p());
    for (const auto& k : independent.operators()) ops.push_back(w * k);
  }
  if (mu > 0.0) {
    const double w = std::sqrt(mu);
    const KrausSet correlated = correlated_ad_kraus(spec.p());
    for (const auto& k : correlated.operators()) ops.push_back(w * k);
  }
  return KrausSet(std::move(ops));
}

double completeness_residual(const KrausSet& ks) {
  if (ks.size() == 0) return 1.0;
  const std::size_t n = ks.operators().front().rows();
  ComplexMatrix sum(n, n);
  for (const auto& k : ks.operators()) sum = sum + dagger(k) * k;
  return max_abs_diff(sum, ComplexMatrix::identity(n));
}

ComplexMatrix apply_kraus(const ComplexMatrix& rho, const KrausSet& ks) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const auto& k : ks.operators()) out = out + k * rho * dagger(k);
  return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelSpec& spec) {
  ComplexMatrix out = apply_kraus(rho.matrix(), channel_kraus(spec));
  if (auto why = density_matrix_violation(out); !why.empty()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "channel " << short_name(spec.kind()) << " p=" << spec.p() << " mu=" << spec.mu()
        << " produced an invalid state: " << why;
    throw NumericalFailure(msg.str());
  }
  return DensityMatrix(std::move(out));
}

}  // namespace qmem
