#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qmem/entanglement.hpp"
#include "qmem/unruh_state.hpp"
#include "test_support.hpp"

using namespace qmem;
using std::numbers::pi;

namespace {

// Three-qubit pure state over (Alice, Rob in region I, region II) built from
// the single-mode Minkowski vacuum and excitation, then region II is summed
// out by hand.
Eigen::MatrixXcd traced_three_mode_state(double r) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  const double k = 1.0 / std::sqrt(2.0);
  // index = 4*alice + 2*rob + region_two
  psi(0b000) = k * std::cos(r);
  psi(0b011) = k * std::sin(r);
  psi(0b110) = k;
  const Eigen::MatrixXcd full = psi * psi.adjoint();
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int e = 0; e < 2; ++e) reduced(a, b) += full(2 * a + e, 2 * b + e);
  return reduced;
}

}  // namespace

TEST_CASE("unruh_density_matrix examples") {
  const DensityMatrix r0 = unruh_density_matrix(UnruhParam(0.0));
  CHECK(max_abs_diff(r0.matrix(), bell_state().matrix()) < 1e-15);
  CHECK(concurrence(r0).concurrence == doctest::Approx(1.0).epsilon(1e-12));

  const DensityMatrix q = unruh_density_matrix(UnruhParam(pi / 4));
  CHECK(std::abs(q(0, 0) - 0.25) < 1e-15);
  CHECK(std::abs(q(1, 1) - 0.25) < 1e-15);
  CHECK(std::abs(q(2, 2)) == 0.0);
  CHECK(std::abs(q(3, 3) - 0.5) < 1e-15);
  CHECK(std::abs(q(0, 3) - 0.5 * std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(q(3, 0) - 0.5 * std::sqrt(0.5)) < 1e-15);

  const DensityMatrix s = unruh_density_matrix(UnruhParam(pi / 6));
  CHECK(std::abs(s(0, 0) - 0.375) < 1e-15);
  CHECK(std::abs(s(1, 1) - 0.125) < 1e-15);
  CHECK(std::abs(s(0, 3) - std::sqrt(3.0) / 4.0) < 1e-15);
  CHECK(std::abs(s(3, 0) - std::sqrt(3.0) / 4.0) < 1e-15);
  CHECK(std::abs(s(3, 3) - 0.5) < 1e-15);
}

TEST_CASE("unruh_density_matrix matches an explicit region-II partial trace") {
  for (double r : test::grid(0.0, pi / 4, 16)) {
    const auto oracle = traced_three_mode_state(r);
    const auto mine = test::to_eigen(unruh_density_matrix(UnruhParam(r)).matrix());
    CHECK((mine - oracle).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("property: every r on a pi/64 grid gives a valid state with C = cos r") {
  for (double r : test::grid(0.0, pi / 4, 16)) {
    CAPTURE(r);
    const DensityMatrix rho = unruh_density_matrix(UnruhParam(r));
    CHECK(density_matrix_violation(rho.matrix()).empty());
    CHECK(hermiticity_residual(rho.matrix()) <= 1e-12);
    CHECK(std::abs(trace(rho.matrix()) - 1.0) <= 1e-12);
    CHECK(eigenvalues_hermitian(rho.matrix()).back() >= -1e-10);
    CHECK(std::abs(concurrence(rho).concurrence - std::cos(r)) <= 1e-12);
  }
}

TEST_CASE("UnruhParam range") {
  CHECK_NOTHROW(UnruhParam(0.0));
  CHECK_NOTHROW(UnruhParam(pi / 4));
  CHECK_THROWS_AS(UnruhParam(-1e-15), InvalidArgument);
  CHECK_THROWS_AS(UnruhParam(pi / 4 + 1e-12), InvalidArgument);
  CHECK_THROWS_AS(UnruhParam(std::nan("")), InvalidArgument);
}

TEST_CASE("unruh_param_from_acceleration") {
  SUBCASE("analytic point: exp(-2 pi omega c / a) = 1/3 gives pi/6") {
    const UnruhParam r = unruh_param_from_acceleration({1.0, 1.0, 2.0 * pi / std::log(3.0)});
    CHECK(std::abs(r.value() - pi / 6) < 1e-15);
    CHECK(std::abs(std::cos(r.value()) - std::pow(4.0 / 3.0, -0.5)) < 1e-15);
  }
  SUBCASE("limits") {
    CHECK(unruh_param_from_acceleration({1.0, 1.0, 1e-300}).value() == 0.0);
    CHECK(unruh_param_from_acceleration({1.0, 1.0, std::numeric_limits<double>::max()}).value() == pi / 4);
    CHECK(unruh_param_from_acceleration({1.0, 1.0, std::numeric_limits<double>::infinity()}).value() == pi / 4);
  }
  SUBCASE("agrees with the arccos form away from the limits") {
    for (double a : {0.5, 1.0, 3.0, 10.0, 100.0}) {
      const double expected = std::acos(std::pow(std::exp(-2.0 * pi / a) + 1.0, -0.5));
      CHECK(std::abs(unruh_param_from_acceleration({1.0, 1.0, a}).value() - expected) < 1e-14);
    }
  }
  SUBCASE("monotone in a") {
    double prev = -1.0;
    for (double a = 0.05; a < 1e4; a *= 1.3) {
      const double r = unruh_param_from_acceleration({2.0, 3.0, a}).value();
      CHECK(r >= prev);
      prev = r;
    }
  }
  SUBCASE("rejects non-positive inputs") {
    CHECK_THROWS_AS(unruh_param_from_acceleration({0.0, 1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(unruh_param_from_acceleration({1.0, -1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(unruh_param_from_acceleration({1.0, 1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(unruh_param_from_acceleration({std::nan(""), 1.0, 1.0}), InvalidArgument);
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(4)), InvalidArgument);  // trace 4
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal({1.5, -0.5, 0.0, 0.0})), InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(2)), InvalidArgument);
  const ComplexMatrix skew = ComplexMatrix::diagonal({0.25, 0.25, 0.25, 0.25}).with_entry(0, 1, 0.1);
  CHECK_THROWS_AS(DensityMatrix{skew}, InvalidArgument);
  CHECK_NOTHROW(DensityMatrix(0.25 * ComplexMatrix::identity(4)));
  CHECK_FALSE(density_matrix_violation(skew).empty());

  const DensityMatrix mixed = DensityMatrix::mix(bell_state(), DensityMatrix(0.25 * ComplexMatrix::identity(4)), 0.5);
  CHECK(std::abs(mixed(0, 3) - 0.25) < 1e-15);
  CHECK_THROWS_AS(DensityMatrix::mix(bell_state(), bell_state(), 1.5), InvalidArgument);
}
