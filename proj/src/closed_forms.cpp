#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qmem/closed_forms.hpp"
#include "qmem/entanglement.hpp"

namespace qmem {

namespace {

struct Angles {
  double c;   // cos r
  double c2;  // cos^2 r
  double c4;  // cos^4 r
  double s2;  // sin^2 r
  double cos2r;
  double cos4r;

  explicit Angles(double r)
      : c(std::cos(r)), c2(c * c), c4(c2 * c2), s2(std::sin(r) * std::sin(r)),
        cos2r(std::cos(2.0 * r)), cos4r(std::cos(4.0 * r)) {}
};

ComplexMatrix state_from_entries(double e11, double e14, double e22, double e23, double e33, double e41,
                                 double e44) {
  return ComplexMatrix(4, 4, {
      e11, 0.0, 0.0, e14,
      0.0, e22, e23, 0.0,
      0.0, 0.0, e33, 0.0,
      e41, 0.0, 0.0, e44,
  });
}

ComplexMatrix ad_state(double p, double mu, const Angles& a) {
  const double q = std::sqrt(std::max(1.0 - p, 0.0));
  const double e11 = 0.5 * (-(-1 + mu) * p * (1 + p) - (-1 + p) * a.c2);
  const double e14 = 0.5 * (1 - p + mu * (-1 + q + p)) * a.c;
  const double e22 = 0.5 * (1 + (-1 + mu) * p * p + (-1 + p - mu * p) * a.c2);
  const double e33 = 0.5 * (-1 + mu) * (-1 + p) * p;
  const double e44 = 0.5 * (1 - (-1 + mu) * (-2 + p) * p + mu * p * a.c2);
  return state_from_entries(e11, e14, e22, 0.0, e33, e14, e44);
}

// Depolarizing and bit-phase flip share their lower rows and the (1,4), (2,2),
// (2,3), (4,4) entries; only (1,1) differs.
double pauli_e14(double p, double mu, const Angles& a) {
  return (1.0 / 16) * a.c * (4 + (-2 + mu) * p + (4 + p * (-10 + mu * (11 - 6 * p) + 6 * p)) * a.c2);
}
double pauli_e22(double p, double mu, const Angles& a) {
  return (1.0 / 16) * (4 + (-2 + mu) * p + 2 * (-2 + p) * (1 + (-1 + mu) * p) * a.c2) * a.s2;
}
double pauli_e23(double p, double mu, const Angles& a) { return -(1.0 / 16) * mu * p * a.c * a.s2; }
double pauli_e41(double p, double mu, const Angles& a) {
  return (1.0 / 8) * a.c * (2 + p * (-3 - 2 * mu * (-2 + p) + 2 * p) - (-2 + p) * (1 + (-1 + mu) * p) * a.c2);
}
double pauli_e44(double p, double mu, const Angles& a) {
  return (1.0 / 16) * (4 + (-2 + mu) * p + (4 + p * (-10 + mu * (11 - 6 * p) + 6 * p)) * a.c2);
}

ComplexMatrix dep_state(double p, double mu, const Angles& a) {
  const double e11 =
      (1.0 / 8) * a.c2 * (2 + p * (-3 - 2 * mu * (-2 + p) + 2 * p) - (-2 + p) * (1 + (-1 + mu) * p) * a.c2);
  return state_from_entries(e11, pauli_e14(p, mu, a), pauli_e22(p, mu, a), pauli_e23(p, mu, a), 0.0,
                            pauli_e41(p, mu, a), pauli_e44(p, mu, a));
}

ComplexMatrix bpf_state(double p, double mu, const Angles& a) {
  const double e11 =
      0.25 * (1 + p * (-1 - 2 * mu * (-1 + p) + 2 * p) - (-1 + p) * (1 + 2 * (-1 + mu) * p) * a.cos2r);
  return state_from_entries(e11, pauli_e14(p, mu, a), pauli_e22(p, mu, a), pauli_e23(p, mu, a), 0.0,
                            pauli_e41(p, mu, a), pauli_e44(p, mu, a));
}

ComplexMatrix pf_state(double p, double mu, const Angles& a) {
  const double e14 = 0.5 * (1 + 4 * p * (-1 + mu + p - mu * p)) * a.c;
  return state_from_entries(0.5 * a.c2, e14, 0.5 * a.s2, pauli_e23(p, mu, a), 0.0, e14, 0.5);
}

std::array<double, 4> ad_lambdas(double p, double mu, const Angles& a) {
  const double q = std::sqrt(std::max(1.0 - p, 0.0));
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, mu2 = mu * mu;
  const double c2 = a.c2, c4 = a.c4;
  const double base = p - mu * p - p2 + 3 * mu * p2 - 2 * mu2 * p2 - p3 + 2 * mu * p3 - mu2 * p3 + p4 -
                      2 * mu * p4 + mu2 * p4 + 2 * c2 - 2 * mu * c2 + 2 * mu2 * c2 + 2 * mu * q * c2 -
                      2 * mu2 * q * c2 - 5 * p * c2 + 6 * mu * p * c2 - 3 * mu2 * p * c2 - 2 * mu * q * p * c2 +
                      2 * mu2 * q * p * c2 + 4 * p2 * c2 - 4 * mu * p2 * c2 - p3 * c2 + 2 * mu * p3 * c2 -
                      mu2 * p3 * c2 + mu * p * c4 - mu * p2 * c4;
  const double left = (-1 + p) * (-1 + p - 2 * mu * (-1 + q + p) + mu2 * (-2 + 2 * q + p));
  const double right = 4 - 4 * p + 3 * mu * p + 4 * p2 + 13 * mu * p2 - 20 * mu2 * p2 - 12 * p3 + 24 * mu * p3 -
                       12 * mu2 * p3 + 8 * p4 - 16 * mu * p4 + 8 * mu2 * p4 -
                       4 * (-1 - 3 * (-1 + mu) * p + (-3 + 3 * mu + mu2) * p2 + (-1 + mu) * (-1 + mu) * p3) * a.cos2r -
                       mu * (-1 + p) * p * a.cos4r;
  const double root = std::sqrt(left * c2 * right) / std::numbers::sqrt2;
  const double l34 = 0.25 * (-1 + mu) * (-1 + p) * p * (1 + (-1 + mu) * p2 + (-1 + p - mu * p) * c2);
  return {0.25 * (base + root), 0.25 * (base - root), l34, l34};
}

std::array<double, 4> dep_lambdas(double p, double mu, const Angles& a) {
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, mu2 = mu * mu, m1 = -1 + mu;
  const double l1 =
      (1.0 / 32) * a.c2 *
      (8 + 2 * (-8 + 9 * mu) * p + (14 - 19 * mu + 4 * mu2) * p2 - 2 * (2 - 3 * mu + mu2) * p3 +
       (16 + 48 * m1 * p + 2 * (30 - 52 * mu + 23 * mu2) * p2 + (-40 + 87 * mu - 47 * mu2) * p3 + 12 * m1 * m1 * p4) *
           a.c2 +
       (-2 + p) * (-4 + (14 - 15 * mu) * p + (-16 + 27 * mu - 11 * mu2) * p2 + 6 * m1 * m1 * p3) * a.c4);
  return {l1, 0.0, 0.0, 0.0};
}

std::array<double, 4> bpf_lambdas(double p, double mu, const Angles& a) {
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, mu2 = mu * mu, m1 = -1 + mu;
  const double C2 = a.cos2r, C4 = a.cos4r;

  // Terms in cos(4r) common to both pairs.
  const double quartic = -p * C4 + 2 * mu * p * C4 + 5 * p2 * C4 - 10 * mu * p2 * C4 + 4 * mu2 * p2 * C4 -
                         8 * p3 * C4 + 16 * mu * p3 * C4 - 8 * mu2 * p3 * C4 + 4 * p4 * C4 - 8 * mu * p4 * C4 +
                         4 * mu2 * p4 * C4;
  const double mix4 = (1 - 2 * p) * (1 - 2 * p) - 2 * mu * (1 - 2 * p) * (1 - 2 * p) + 4 * mu2 * (-1 + p) * p;

  const double s12 = 8 - 27 * p + 30 * mu * p + 55 * p2 - 86 * mu * p2 + 28 * mu2 * p2 - 56 * p3 + 112 * mu * p3 -
                     56 * mu2 * p3 + 28 * p4 - 56 * mu * p4 + 28 * mu2 * p4 + 8 * C2 - 36 * p * C2 +
                     32 * mu * p * C2 + 68 * p2 * C2 - 96 * mu * p2 * C2 + 32 * mu2 * p2 * C2 - 64 * p3 * C2 +
                     128 * mu * p3 * C2 - 64 * mu2 * p3 * C2 + 32 * p4 * C2 - 64 * mu * p4 * C2 +
                     32 * mu2 * p4 * C2 + quartic;
  const double pf_factor = 1 + 2 * m1 * p - 2 * m1 * p2;
  const double q12 = pf_factor * pf_factor * a.c2 *
                     (4 - 11 * p + 14 * mu * p + 23 * p2 - 38 * mu * p2 + 12 * mu2 * p2 - 24 * p3 + 48 * mu * p3 -
                      24 * mu2 * p3 + 12 * p4 - 24 * mu * p4 + 12 * mu2 * p4 +
                      4 * (1 + (-5 + 4 * mu) * p + (3 - 2 * mu) * (3 - 2 * mu) * p2 - 8 * m1 * m1 * p3 +
                           4 * m1 * m1 * p4) *
                          C2 +
                      (-1 + p) * p * mix4 * C4);
  const double root12 = 4 * std::numbers::sqrt2 * std::sqrt(q12);

  const double s34 = 5 * p - 2 * mu * p + 23 * p2 - 54 * mu * p2 + 28 * mu2 * p2 - 56 * p3 + 112 * mu * p3 -
                     56 * mu2 * p3 + 28 * p4 - 56 * mu * p4 + 28 * mu2 * p4 - 4 * p * C2 + 36 * p2 * C2 -
                     64 * mu * p2 * C2 + 32 * mu2 * p2 * C2 - 64 * p3 * C2 + 128 * mu * p3 * C2 -
                     64 * mu2 * p3 * C2 + 32 * p4 * C2 - 64 * mu * p4 * C2 + 32 * mu2 * p4 * C2 + quartic;
  const double q34 = m1 * m1 * (-1 + p) * (-1 + p) * (-1 + p) * p3 * a.c2 *
                     (-5 + 2 * mu - 12 * p + 24 * mu * p - 12 * mu2 * p + 12 * p2 - 24 * mu * p2 + 12 * mu2 * p2 +
                      4 * (1 - 4 * m1 * m1 * p + 4 * m1 * m1 * p2) * C2 + mix4 * C4);
  const double root34 = 8 * std::numbers::sqrt2 * std::sqrt(q34);

  return {(s12 + root12) / 32, (s12 - root12) / 32, (s34 + root34) / 32, (s34 - root34) / 32};
}

std::array<double, 4> pf_lambdas(double p, double mu, const Angles& a) {
  const double m1 = -1 + mu;
  const double head = 1 + 2 * m1 * p - 2 * m1 * p * p;
  return {head * head * a.c2, 4 * m1 * m1 * (-1 + p) * (-1 + p) * p * p * a.c2, 0.0, 0.0};
}

std::array<double, 4> sorted_descending(std::array<double, 4> v) {
  std::sort(v.begin(), v.end(), [](double x, double y) {
    if (std::isnan(x)) return false;
    if (std::isnan(y)) return true;
    return x > y;
  });
  return v;
}

}  // namespace

ComplexMatrix closed_form_state(ChannelKind kind, double p, double mu, double r, ClosedFormVariant variant) {
  const Angles a(r);
  ComplexMatrix m = [&] {
    switch (kind) {
      case ChannelKind::AmplitudeDamping: return ad_state(p, mu, a);
      case ChannelKind::Depolarizing: return dep_state(p, mu, a);
      case ChannelKind::BitPhaseFlip: return bpf_state(p, mu, a);
      case ChannelKind::PhaseFlip: return pf_state(p, mu, a);
    }
    throw InvalidArgument("closed_form_state: unknown channel kind");
  }();
  if (variant == ClosedFormVariant::PairedEntriesOnly) {
    // (2,3) is the only published entry without a partner position.
    m = m.with_entry(1, 2, 0.0);
  }
  return m;
}

std::array<double, 4> closed_form_lambdas(ChannelKind kind, double p, double mu, double r) {
  const Angles a(r);
  switch (kind) {
    case ChannelKind::AmplitudeDamping: return ad_lambdas(p, mu, a);
    case ChannelKind::Depolarizing: return dep_lambdas(p, mu, a);
    case ChannelKind::BitPhaseFlip: return bpf_lambdas(p, mu, a);
    case ChannelKind::PhaseFlip: return pf_lambdas(p, mu, a);
  }
  throw InvalidArgument("closed_form_lambdas: unknown channel kind");
}

ClosedFormConcurrence concurrence_closed_form(ChannelKind kind, double p, double mu, double r) {
  ClosedFormConcurrence out{};
  out.sorted_lambdas = sorted_descending(closed_form_lambdas(kind, p, mu, r));
  out.has_nan = std::any_of(out.sorted_lambdas.begin(), out.sorted_lambdas.end(),
                            [](double l) { return std::isnan(l); });
  out.negative_lambda = std::any_of(out.sorted_lambdas.begin(), out.sorted_lambdas.end(),
                                    [](double l) { return l < -kClosedFormNegativeTolerance; });
  if (out.has_nan || out.negative_lambda) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  std::array<double, 4> clamped = out.sorted_lambdas;
  const double floor = kClosedFormRelativeFloor * clamped[0];
  for (double& l : clamped) l = l <= floor ? 0.0 : l;
  out.value = concurrence_from_lambdas(clamped);
  return out;
}

CrosscheckReport crosscheck_point(ChannelKind kind, double p, double mu, double r, double tol) {
  const DensityMatrix state = apply_channel(unruh_density_matrix(UnruhParam(r)), ChannelSpec(kind, p, mu));
  const ConcurrenceResult numeric = concurrence(state);

  const ComplexMatrix literal = closed_form_state(kind, p, mu, r, ClosedFormVariant::Literal);
  const ComplexMatrix paired = closed_form_state(kind, p, mu, r, ClosedFormVariant::PairedEntriesOnly);

  CrosscheckReport rep{};
  rep.kind = kind;
  rep.p = p;
  rep.mu = mu;
  rep.r = r;
  rep.matrix_max_dev = max_abs_diff(literal, state.matrix());
  rep.matrix_paired_max_dev = max_abs_diff(paired, state.matrix());
  rep.matrix_hermitian = is_hermitian(literal, tol);
  rep.matrix_paired_hermitian = is_hermitian(paired, tol);

  const ClosedFormConcurrence closed = concurrence_closed_form(kind, p, mu, r);
  rep.lambda_nan = closed.has_nan;
  rep.lambda_negative = closed.negative_lambda;
  if (!closed.has_nan) {
    double dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i) dev = std::max(dev, std::abs(closed.sorted_lambdas[i] - numeric.lambdas[i]));
    rep.lambda_max_dev = dev;
  }
  if (std::isfinite(closed.value)) rep.concurrence_dev = std::abs(closed.value - numeric.concurrence);
  return rep;
}

}  // namespace qmem
