#include "qmem/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmem {

namespace {

const ComplexMatrix& yy() {
  static const ComplexMatrix m = tensor(pauli::y(), pauli::y());
  return m;
}

double finish_concurrence(double value) {
  if (value <= 0.0) return 0.0;
  if (value > 1.0 && value <= 1.0 + ConcurrenceTolerance::overshoot) return 1.0;
  return value;
}

}  // namespace

ComplexMatrix spin_flip(const DensityMatrix& rho) { return yy() * conjugate(rho.matrix()) * yy(); }

double concurrence_from_lambdas(const std::array<double, 4>& l) {
  return finish_concurrence(std::sqrt(l[0]) - std::sqrt(l[1]) - std::sqrt(l[2]) - std::sqrt(l[3]));
}

ConcurrenceResult concurrence(const DensityMatrix& rho) {
  const ComplexMatrix root = sqrt_psd(rho.matrix(), ConcurrenceTolerance::rank_cut);
  const std::vector<double> sv = singular_values(root * yy() * conjugate(root));

  std::array<double, 4> roots{};
  std::copy_n(sv.begin(), 4, roots.begin());
  std::array<double, 4> lambdas{};
  for (std::size_t i = 0; i < 4; ++i) lambdas[i] = roots[i] * roots[i];

  double max_imag = 0.0;
  double min_real = 0.0;
  for (const Complex& ev : eigenvalues_general(rho.matrix() * spin_flip(rho))) {
    max_imag = std::max(max_imag, std::abs(ev.imag()));
    min_real = std::min(min_real, ev.real());
  }
  if (max_imag > ConcurrenceTolerance::max_imag || min_real < -ConcurrenceTolerance::negative_clamp) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "concurrence: eigenvalues of rho*rho~ are not real non-negative (max |imag| " << max_imag
        << ", min real " << min_real << ")";
    throw NumericalFailure(msg.str());
  }

  const double c = finish_concurrence(roots[0] - roots[1] - roots[2] - roots[3]);
  return {c, lambdas, max_imag};
}

}  // namespace qmem
