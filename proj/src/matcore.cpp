#include "qmem/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace qmem {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch");
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) throw InvalidArgument(std::string(what) + ": matrix is not square");
}

// Mutable square work array used inside the iterative solvers.
struct Work {
  std::size_t n;
  std::vector<Complex> d;
  explicit Work(const ComplexMatrix& m) : n(m.rows()), d(m.entries().begin(), m.entries().end()) {}
  explicit Work(std::size_t size) : n(size), d(size * size) {
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
  }
  Complex& operator()(std::size_t i, std::size_t j) { return d[i * n + j]; }
};

// 2x2 unitary U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] that diagonalizes the
// Hermitian block [[app, apq], [conj(apq), aqq]] via U^H B U.
struct Rotation {
  double c;
  double s;
  Complex phase;  // e^{-i phi}
};

Rotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double mag = std::abs(apq);
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, std::conj(apq) / mag};
}

// Columns p, q of m <- [col_p, col_q] * U.
void rotate_columns(Work& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex upp = r.c, upq = r.s, uqp = -r.s * r.phase, uqq = r.c * r.phase;
  for (std::size_t k = 0; k < m.n; ++k) {
    const Complex mp = m(k, p), mq = m(k, q);
    m(k, p) = mp * upp + mq * uqp;
    m(k, q) = mp * upq + mq * uqq;
  }
}

// Rows p, q of m <- U^H * [row_p; row_q].
void rotate_rows(Work& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex upp = r.c, upq = r.s, uqp = -r.s * r.phase, uqq = r.c * r.phase;
  for (std::size_t k = 0; k < m.n; ++k) {
    const Complex mp = m(p, k), mq = m(q, k);
    m(p, k) = std::conj(upp) * mp + std::conj(uqp) * mq;
    m(q, k) = std::conj(upq) * mp + std::conj(uqq) * mq;
  }
}

// Householder reduction to upper Hessenberg form, in place.
void reduce_to_hessenberg(Work& h) {
  const std::size_t n = h.n;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
    if (tail == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const double norm_x = std::sqrt(tail + std::norm(x0));
    const Complex unit = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    std::vector<Complex> v(n, 0.0);
    v[k + 1] = x0 + unit * norm_x;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    vnorm = std::sqrt(vnorm);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
    // H <- (I - 2 v v^H) H
    for (std::size_t j = 0; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i] * dot;
    }
    // H <- H (I - 2 v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= 2.0 * dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Eigenvalue of the trailing 2x2 block closer to its bottom-right entry.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const Complex l1 = half_tr + disc, l2 = half_tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0)) {
  if (rows == 0 || cols == 0) throw InvalidArgument("ComplexMatrix: zero dimension");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw InvalidArgument("ComplexMatrix: zero dimension");
  if (data_.size() != rows * cols) throw InvalidArgument("ComplexMatrix: entry count does not match shape");
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("ComplexMatrix: zero dimension");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("ComplexMatrix: ragged initializer");
    for (const auto& z : row) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("ComplexMatrix: non-finite entry");
      }
      data_.push_back(z);
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.data_[i * diag.size() + i] = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::with_entry(std::size_t i, std::size_t j, Complex value) const {
  if (i >= rows_ || j >= cols_) throw InvalidArgument("ComplexMatrix::with_entry: index out of range");
  std::vector<Complex> d = data_;
  d[i * cols_ + j] = value;
  return ComplexMatrix(rows_, cols_, std::move(d));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  std::vector<Complex> d(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += b.entries()[k];
  return ComplexMatrix(a.rows(), a.cols(), std::move(d));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  std::vector<Complex> d(a.entries().begin(), a.entries().end());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] -= b.entries()[k];
  return ComplexMatrix(a.rows(), a.cols(), std::move(d));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("operator*: inner dimension mismatch");
  std::vector<Complex> d(a.rows() * b.cols(), Complex(0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) d[i * b.cols() + j] += aik * b(k, j);
    }
  }
  return ComplexMatrix(a.rows(), b.cols(), std::move(d));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  std::vector<Complex> d(a.entries().begin(), a.entries().end());
  for (auto& z : d) z *= s;
  return ComplexMatrix(a.rows(), a.cols(), std::move(d));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<Complex> d(rows * cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          d[(i * b.rows() + k) * cols + (j * b.cols() + l)] = a(i, j) * b(k, l);
  return ComplexMatrix(rows, cols, std::move(d));
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  std::vector<Complex> d(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d[j * a.rows() + i] = std::conj(a(i, j));
  return ComplexMatrix(a.cols(), a.rows(), std::move(d));
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  std::vector<Complex> d(a.entries().begin(), a.entries().end());
  for (auto& z : d) z = std::conj(z);
  return ComplexMatrix(a.rows(), a.cols(), std::move(d));
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  std::vector<Complex> d(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d[j * a.rows() + i] = a(i, j);
  return ComplexMatrix(a.cols(), a.rows(), std::move(d));
}

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

double hermiticity_residual(const ComplexMatrix& a) {
  require_square(a, "hermiticity_residual");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

bool is_hermitian(const ComplexMatrix& a, double tol) { return hermiticity_residual(a) <= tol; }

HermitianEigen eigen_hermitian(const ComplexMatrix& a) {
  require_square(a, "eigen_hermitian");
  if (hermiticity_residual(a) > 1e-10) throw InvalidArgument("eigen_hermitian: matrix is not Hermitian");

  const std::size_t n = a.rows();
  Work m(a);
  Work v(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i).real();

  double total = 0.0;
  for (const auto& z : m.d) total += std::norm(z);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    if (off == 0.0 || off <= 1e-36 * total) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        if (std::abs(apq) < std::numeric_limits<double>::min()) continue;
        const Rotation r = jacobi_rotation(m(p, p).real(), m(q, q).real(), apq);
        rotate_columns(m, p, q, r);
        rotate_rows(m, p, q, r);
        rotate_columns(v, p, q, r);
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return m(x, x).real() > m(y, y).real(); });

  std::vector<double> values(n);
  std::vector<Complex> vecs(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = m(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) vecs[i * n + k] = v(i, order[k]);
  }
  return {std::move(values), ComplexMatrix(n, n, std::move(vecs))};
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& a) { return eigen_hermitian(a).values; }

std::vector<Complex> eigenvalues_general(const ComplexMatrix& a) {
  require_square(a, "eigenvalues_general");
  const std::size_t n = a.rows();
  Work h(a);
  reduce_to_hessenberg(h);

  std::vector<Complex> eig(n);
  std::size_t hi = n - 1;
  int iter = 0;
  while (true) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    // Find the top of the unreduced block ending at hi.
    std::size_t lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (std::abs(h(lo, lo - 1)) <= kEps * scale || std::abs(h(lo, lo - 1)) < std::numeric_limits<double>::min()) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > 100) throw NumericalFailure("eigenvalues_general: QR iteration did not converge");

    Complex shift;
    if (iter % 10 == 0) {
      shift = h(hi, hi) + 1.5 * std::abs(h(hi, hi - 1));
    } else {
      shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= shift;
    std::vector<std::pair<Complex, Complex>> givens;
    for (std::size_t k = lo; k < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double rr = std::hypot(std::abs(x), std::abs(y));
      Complex c = 1.0, s = 0.0;
      if (rr > 0.0) {
        c = x / rr;
        s = y / rr;
      }
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex top = h(k, j), bot = h(k + 1, j);
        h(k, j) = std::conj(c) * top + std::conj(s) * bot;
        h(k + 1, j) = -s * top + c * bot;
      }
      givens.emplace_back(c, s);
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const auto [c, s] = givens[k - lo];
      for (std::size_t i = lo; i <= hi; ++i) {
        const Complex left = h(i, k), right = h(i, k + 1);
        h(i, k) = left * c + right * s;
        h(i, k + 1) = -left * std::conj(s) + right * std::conj(c);
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += shift;
  }
  return eig;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  // Work on a square copy padded with zero rows/columns; one-sided Jacobi
  // orthogonalizes the columns and the singular values are the column norms.
  const std::size_t n = std::max(a.rows(), a.cols());
  Work m(n);
  std::fill(m.d.begin(), m.d.end(), Complex(0.0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          alpha += std::norm(m(k, p));
          beta += std::norm(m(k, q));
          gamma += std::conj(m(k, p)) * m(k, q);
        }
        if (std::abs(gamma) <= kEps * std::sqrt(alpha * beta) || std::abs(gamma) < std::numeric_limits<double>::min()) {
          continue;
        }
        rotated = true;
        rotate_columns(m, p, q, jacobi_rotation(alpha, beta, gamma));
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(std::min(a.rows(), a.cols()));
  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(m(k, j));
    norms[j] = std::sqrt(s);
  }
  std::sort(norms.begin(), norms.end(), std::greater<>());
  std::copy_n(norms.begin(), sv.size(), sv.begin());
  return sv;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& a, double rank_tol) {
  const HermitianEigen e = eigen_hermitian(a);
  const std::size_t n = a.rows();
  const double top = std::max(e.values.front(), 0.0);
  std::vector<Complex> d(n * n, Complex(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    if (e.values[k] <= rank_tol * top) continue;
    const double root = std::sqrt(e.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] += root * e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return ComplexMatrix(n, n, std::move(d));
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix by_index(int i) {
  switch (i) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: throw InvalidArgument("pauli::by_index: index must be in 0..3");
  }
}

}  // namespace pauli

}  // namespace qmem
