#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qmem/matcore.hpp"
#include "qmem/unruh_state.hpp"
#include "qmem/entanglement.hpp"
#include "test_support.hpp"

using namespace qmem;
using qmem::test::to_eigen;

namespace {

const Complex I(0.0, 1.0);

double max_diff(const ComplexMatrix& a, const Eigen::MatrixXcd& e) {
  return (to_eigen(a) - e).cwiseAbs().maxCoeff();
}

std::vector<double> eigen_sorted_hermitian(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.rbegin(), v.rend());
  return v;
}

bool complex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

TEST_CASE("construction validates shape and finiteness") {
  CHECK_THROWS_AS(ComplexMatrix(0, 2), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(0.0, HUGE_VAL)}), InvalidArgument);
  CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), InvalidArgument);

  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(m(1, 0) == Complex(3.0));
  const ComplexMatrix m2 = m.with_entry(1, 0, I);
  CHECK(m2(1, 0) == I);
  CHECK(m(1, 0) == Complex(3.0));
}

TEST_CASE("arithmetic checks dimensions") {
  const ComplexMatrix a(2, 2), b(3, 3), c(2, 3);
  CHECK_THROWS_AS(a + b, InvalidArgument);
  CHECK_THROWS_AS(a - b, InvalidArgument);
  CHECK_THROWS_AS(c * c, InvalidArgument);
  CHECK((a * c).cols() == 3);
}

TEST_CASE("tensor examples") {
  CHECK(tensor(pauli::identity(), pauli::identity()) == ComplexMatrix::identity(4));
  CHECK(tensor(pauli::z(), pauli::z()) == ComplexMatrix::diagonal({1.0, -1.0, -1.0, 1.0}));

  const ComplexMatrix xy = tensor(pauli::x(), pauli::y());
  Eigen::Matrix2cd x, y;
  x << 0, 1, 1, 0;
  y << 0, -I, I, 0;
  const Eigen::MatrixXcd oracle = Eigen::kroneckerProduct(x, y);
  CHECK(max_diff(xy, oracle) == 0.0);
  // Only the anti-diagonal is populated.
  CHECK(xy(0, 3) == -I);
  CHECK(xy(1, 2) == I);
  CHECK(xy(2, 1) == -I);
  CHECK(xy(3, 0) == I);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i + j != 3) CHECK(xy(i, j) == Complex(0.0));

  const ComplexMatrix rect = tensor(ComplexMatrix(2, 3, std::vector<Complex>(6, 1.0)), pauli::z());
  CHECK(rect.rows() == 4);
  CHECK(rect.cols() == 6);
}

TEST_CASE("dagger examples") {
  CHECK(dagger(ComplexMatrix::identity(4)) == ComplexMatrix::identity(4));
  CHECK(dagger(pauli::y()) == pauli::y());
  const ComplexMatrix a1{{0.0, std::sqrt(0.3)}, {0.0, 0.0}};
  const ComplexMatrix d = dagger(a1);
  CHECK(d(1, 0) == Complex(std::sqrt(0.3)));
  CHECK(d(0, 1) == Complex(0.0));
  const ComplexMatrix rect{{1.0, I, 2.0}};
  CHECK(dagger(rect).rows() == 3);
  CHECK(dagger(rect)(1, 0) == -I);
}

TEST_CASE("is_hermitian examples") {
  CHECK(is_hermitian(pauli::y(), 1e-12));
  CHECK_FALSE(is_hermitian(ComplexMatrix{{0.0, std::sqrt(0.5)}, {0.0, 0.0}}, 1e-12));
  CHECK_THROWS_AS(is_hermitian(ComplexMatrix(2, 3), 1e-12), InvalidArgument);
  CHECK(hermiticity_residual(ComplexMatrix{{1.0, 2.0}, {2.5, 1.0}}) == doctest::Approx(0.5));
}

TEST_CASE("eigenvalues_hermitian examples") {
  auto v = eigenvalues_hermitian(ComplexMatrix::diagonal({0.5, 0.0, 0.5, 0.0}));
  CHECK(v == std::vector<double>{0.5, 0.5, 0.0, 0.0});

  v = eigenvalues_hermitian(bell_state().matrix());
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(v[i]) < 1e-14);

  const ComplexMatrix rho = unruh_density_matrix(UnruhParam(std::numbers::pi / 4)).matrix();
  v = eigenvalues_hermitian(rho);
  const auto oracle = eigen_sorted_hermitian(rho);
  const std::vector<double> expected{0.75, 0.25, 0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(v[i] - expected[i]) < 1e-14);
    CHECK(std::abs(v[i] - oracle[i]) < 1e-14);
  }

  CHECK_THROWS_AS(eigenvalues_hermitian(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(eigenvalues_hermitian(ComplexMatrix(2, 3)), InvalidArgument);
}

TEST_CASE("eigen_hermitian vectors diagonalize the input") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix h = test::random_hermitian(rng, 4);
    const HermitianEigen eg = eigen_hermitian(h);
    const ComplexMatrix d = dagger(eg.vectors) * h * eg.vectors;
    std::vector<Complex> diag(eg.values.begin(), eg.values.end());
    CHECK(max_abs_diff(d, ComplexMatrix::diagonal(diag)) < 1e-12);
    CHECK(max_abs_diff(dagger(eg.vectors) * eg.vectors, ComplexMatrix::identity(4)) < 1e-13);
    CHECK(std::is_sorted(eg.values.rbegin(), eg.values.rend()));
  }
}

TEST_CASE("eigenvalues_general examples") {
  auto v = eigenvalues_general(ComplexMatrix::identity(4));
  for (auto z : v) CHECK(std::abs(z - 1.0) < 1e-14);

  v = eigenvalues_general(ComplexMatrix::diagonal({4.0, 3.0, 2.0, 1.0}));
  std::sort(v.begin(), v.end(), complex_less);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(v[i] - Complex(i + 1.0)) < 1e-13);

  // rho * rho~ of the accelerated state: one non-zero eigenvalue cos^2 r.
  const double r = std::numbers::pi / 6;
  const DensityMatrix rho = unruh_density_matrix(UnruhParam(r));
  const ComplexMatrix prod = rho.matrix() * spin_flip(rho);
  v = eigenvalues_general(prod);
  std::sort(v.begin(), v.end(), complex_less);
  CHECK(std::abs(v[3] - Complex(std::pow(std::cos(r), 2))) < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(v[i]) < 1e-12);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(prod));
  double max_oracle = 0.0;
  for (auto z : es.eigenvalues()) max_oracle = std::max(max_oracle, z.real());
  CHECK(std::abs(v[3].real() - max_oracle) < 1e-12);

  // A rotation has a complex-conjugate pair.
  v = eigenvalues_general(ComplexMatrix{{0.0, -1.0}, {1.0, 0.0}});
  std::sort(v.begin(), v.end(), complex_less);
  CHECK(std::abs(v[0] - Complex(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(v[1] - Complex(0.0, 1.0)) < 1e-14);

  // Defective (Jordan block): both roots at 2.
  v = eigenvalues_general(ComplexMatrix{{2.0, 1.0}, {0.0, 2.0}});
  for (auto z : v) CHECK(std::abs(z - 2.0) < 1e-7);

  CHECK_THROWS_AS(eigenvalues_general(ComplexMatrix(2, 3)), InvalidArgument);
}

TEST_CASE("eigenvalues_general agrees with an independent solver on random matrices") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const ComplexMatrix a = test::random_matrix(rng, 4, 4);
    auto mine = eigenvalues_general(a);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
    std::vector<Complex> theirs(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    // Match greedily: each oracle root must have a counterpart.
    for (auto z : theirs) {
      auto it = std::min_element(mine.begin(), mine.end(),
                                 [&](Complex x, Complex y) { return std::abs(x - z) < std::abs(y - z); });
      REQUIRE(it != mine.end());
      CHECK(std::abs(*it - z) < 1e-10);
      mine.erase(it);
    }
  }
}

TEST_CASE("property: Hermitian and general eigenvalues agree") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const ComplexMatrix h = test::random_hermitian(rng, 4);
    const auto herm = eigenvalues_hermitian(h);
    auto gen = eigenvalues_general(h);
    std::sort(gen.begin(), gen.end(), [](Complex a, Complex b) { return a.real() > b.real(); });
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(gen[i].real() - herm[i]) < 1e-9);
      CHECK(std::abs(gen[i].imag()) < 1e-9);
    }
    double sum = 0.0;
    for (double x : herm) sum += x;
    CHECK(std::abs(sum - trace(h).real()) < 1e-10);
  }
}

TEST_CASE("property: tensor associativity and trace multiplicativity") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    const ComplexMatrix a = test::random_matrix(rng, 2, 2);
    const ComplexMatrix b = test::random_matrix(rng, 2, 2);
    const ComplexMatrix c = test::random_matrix(rng, 2, 2);
    CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) <= 1e-14);
    CHECK(std::abs(trace(tensor(a, b)) - trace(a) * trace(b)) <= 1e-12);
    CHECK(dagger(dagger(a)) == a);
    CHECK(max_diff(tensor(a, b), Eigen::kroneckerProduct(to_eigen(a), to_eigen(b)).eval()) == 0.0);
  }
}

TEST_CASE("singular values agree with an independent SVD") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix a = test::random_matrix(rng, 4, 4);
    const auto s = singular_values(a);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(s[i] - svd.singularValues()(i)) < 1e-12);
  }
  const auto s = singular_values(ComplexMatrix{{3.0, 0.0, 0.0}, {0.0, -4.0, 0.0}});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == doctest::Approx(4.0));
  CHECK(s[1] == doctest::Approx(3.0));
}

TEST_CASE("sqrt_psd squares back to its input") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix rho = test::random_density(rng);
    const ComplexMatrix s = sqrt_psd(rho.matrix(), 1e-14);
    CHECK(is_hermitian(s, 1e-14));
    CHECK(max_abs_diff(s * s, rho.matrix()) < 1e-13);
  }
  // Rank-deficient input: the null space stays exactly zero.
  const ComplexMatrix s = sqrt_psd(ComplexMatrix::diagonal({0.25, 0.0, 1e-20, 0.0}), 1e-14);
  CHECK(std::abs(s(0, 0) - 0.5) < 1e-15);
  CHECK(s(2, 2) == Complex(0.0));
}

TEST_CASE("pauli matrices") {
  CHECK(pauli::by_index(0) == pauli::identity());
  CHECK(pauli::by_index(3) == pauli::z());
  CHECK_THROWS_AS(pauli::by_index(4), InvalidArgument);
  CHECK(max_abs_diff(pauli::x() * pauli::y(), I * pauli::z()) == 0.0);
}
