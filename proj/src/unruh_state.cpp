#include "qmem/unruh_state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qmem {

std::string density_matrix_violation(const ComplexMatrix& mat) {
  if (mat.rows() != 4 || mat.cols() != 4) return "density matrix must be 4x4";
  std::ostringstream why;
  why.precision(3);
  const double herm = hermiticity_residual(mat);
  if (herm > StateTolerance::hermitian) {
    why << "hermiticity residual " << herm << "; ";
    return why.str();
  }
  const Complex tr = trace(mat);
  if (std::abs(tr - 1.0) > StateTolerance::trace) why << "trace " << tr.real() << " != 1; ";
  const double min_eig = eigenvalues_hermitian(mat).back();
  if (min_eig < StateTolerance::min_eigenvalue) why << "negative eigenvalue " << min_eig << "; ";
  return why.str();
}

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (auto why = density_matrix_violation(mat_); !why.empty()) {
    throw InvalidArgument("DensityMatrix: " + why);
  }
}

DensityMatrix DensityMatrix::mix(const DensityMatrix& a, const DensityMatrix& b, double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw InvalidArgument("DensityMatrix::mix: weight outside [0, 1]");
  return DensityMatrix(weight * a.mat_ + (1.0 - weight) * b.mat_);
}

UnruhParam::UnruhParam(double r) : r_(r) {
  if (!(r >= 0.0 && r <= max_value())) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Unruh parameter r=" << r << " outside [0, pi/4]";
    throw InvalidArgument(msg.str());
  }
}

UnruhParam unruh_param_from_acceleration(const AccelerationInput& in) {
  if (!(in.omega > 0.0 && in.c > 0.0 && in.a > 0.0)) {
    throw InvalidArgument("acceleration input: omega, c and a must all be positive");
  }
  // tan r = exp(-pi omega c / a); exp underflows to 0 as a -> 0+, giving r = 0.
  const double tan_r = std::exp(-std::numbers::pi * in.omega * in.c / in.a);
  return UnruhParam(std::atan(tan_r));
}

DensityMatrix unruh_density_matrix(UnruhParam param) {
  const double r = param.value();
  const double c = std::cos(r), s = std::sin(r);
  ComplexMatrix m(4, 4, {
      0.5 * c * c, 0.0,         0.0, 0.5 * c,
      0.0,         0.5 * s * s, 0.0, 0.0,
      0.0,         0.0,         0.0, 0.0,
      0.5 * c,     0.0,         0.0, 0.5,
  });
  return DensityMatrix(std::move(m));
}

DensityMatrix bell_state() { return unruh_density_matrix(UnruhParam(0.0)); }

}  // namespace qmem
