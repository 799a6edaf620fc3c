#pragma once

// Shared generators and independent oracles for the test suites. Everything
// here must stay independent of the implementation paths it checks.

#include <complex>
#include <functional>
#include <random>

#include "quadsphere/core.hpp"

namespace qstest {

using qs::Complex;
using qs::Index;
using qs::Matrix;
using qs::RealVector;
using qs::Vector;

using Rng = std::mt19937_64;

inline Matrix random_complex(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline Matrix random_symmetric(Rng& rng, Index n) {
  Matrix m = random_complex(rng, n, n);
  return 0.5 * (m + m.transpose());
}

inline Matrix random_unitary(Rng& rng, Index n) {
  Eigen::HouseholderQR<Matrix> qr(random_complex(rng, n, n));
  Matrix q = qr.householderQ();
  // Fix the phase freedom so Q is Haar-ish and deterministic given the seed.
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
  }
  return q;
}

inline qs::RealMatrix random_orthogonal(Rng& rng, Index n) {
  std::normal_distribution<double> normal;
  qs::RealMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = normal(rng);
  Eigen::HouseholderQR<qs::RealMatrix> qr(m);
  qs::RealMatrix q = qr.householderQ();
  qs::RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

/// Random point of SU(2) as the pair (a, b) with |a|^2 + |b|^2 = 1.
inline std::pair<Complex, Complex> random_su2(Rng& rng) {
  std::normal_distribution<double> normal;
  Complex a(normal(rng), normal(rng));
  Complex b(normal(rng), normal(rng));
  double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

inline Complex random_disk_point(Rng& rng, double radius) {
  std::uniform_real_distribution<double> unif(-radius, radius);
  while (true) {
    Complex z(unif(rng), unif(rng));
    if (std::abs(z) <= radius) return z;
  }
}

/// Singular values of M by an independent route: the eigenvalues of the
/// Hermitian matrix M^* M, nonnegative and sorted nondecreasingly.
inline RealVector singular_values_by_hermitian_eig(const Matrix& m) {
  Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  RealVector out = es.eigenvalues();
  for (Index i = 0; i < out.size(); ++i) out[i] = std::sqrt(std::max(0.0, out[i]));
  return out;
}

/// Wirtinger derivative d/dz of a C^n-valued function of (z, zbar) by
/// central differences: (d/dx - i d/dy)/2.
inline Vector wirtinger_dz(const std::function<Vector(Complex)>& f, Complex z, double h = 1e-5) {
  Vector dx = (f(z + h) - f(z - h)) / (2 * h);
  Vector dy = (f(z + Complex(0, h)) - f(z - Complex(0, h))) / (2 * h);
  return 0.5 * (dx - Complex(0, 1) * dy);
}

/// Wirtinger derivative d/dzbar: (d/dx + i d/dy)/2.
inline Vector wirtinger_dzbar(const std::function<Vector(Complex)>& f, Complex z, double h = 1e-5) {
  Vector dx = (f(z + h) - f(z - h)) / (2 * h);
  Vector dy = (f(z + Complex(0, h)) - f(z - Complex(0, h))) / (2 * h);
  return 0.5 * (dx + Complex(0, 1) * dy);
}

inline double wirtinger_dz_scalar(const std::function<double(Complex)>& f, Complex z, double h,
                                  bool imag_part) {
  double dx = (f(z + h) - f(z - h)) / (2 * h);
  double dy = (f(z + Complex(0, h)) - f(z - Complex(0, h))) / (2 * h);
  return imag_part ? dy : dx;
}

}  // namespace qstest
