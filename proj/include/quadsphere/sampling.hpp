#pragma once

#include <random>

#include "quadsphere/quadrics.hpp"

namespace qs {

using Rng = std::mt19937_64;

inline Matrix random_complex_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline Matrix random_unitary(Rng& rng, Index n) {
  Eigen::HouseholderQR<Matrix> qr(random_complex_matrix(rng, n, n));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
  }
  return q;
}

inline GroupElement random_group_element(Rng& rng) {
  std::normal_distribution<double> normal;
  Complex a(normal(rng), normal(rng));
  Complex b(normal(rng), normal(rng));
  double n = std::sqrt(std::norm(a) + std::norm(b));
  return GroupElement(a / n, b / n);
}

inline Complex random_disk_point(Rng& rng, double radius) {
  std::uniform_real_distribution<double> unif(-radius, radius);
  while (true) {
    Complex z(unif(rng), unif(rng));
    if (std::abs(z) <= radius) return z;
  }
}

/// Random real combination of a kernel basis; generically a generic point of
/// the solution space.
inline Matrix random_kernel_element(const std::vector<Matrix>& basis, Rng& rng) {
  require(!basis.empty(), "random_kernel_element: empty basis");
  std::normal_distribution<double> normal;
  Matrix s = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const Matrix& b : basis) s += normal(rng) * b;
  return s;
}

/// Random member of S_{d,2d+1,p}: a kernel element rescaled so its largest
/// singular value is `target` < 1.
inline Matrix sample_member(int d, int p, Rng& rng, double target = 0.0) {
  std::vector<Matrix> basis = kernel_basis(d, p);
  require(!basis.empty(), "sample_member: the solution space is trivial");
  if (target <= 0.0) {
    std::uniform_real_distribution<double> unif(0.3, 0.9);
    target = unif(rng);
  }
  Matrix s = random_kernel_element(basis, rng);
  double top = svd(s).spectrum.max_value();
  require(top > 0, "sample_member: degenerate sample");
  return symmetrize(s * (target / top));
}

}  // namespace qs
