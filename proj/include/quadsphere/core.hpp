#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative Frobenius tolerance used by factorizations and residual checks.
inline constexpr double kDefaultTol = 1e-10;

/// Absolute gap below which adjacent singular values belong to one cluster.
inline constexpr double kClusterTol = 1e-8;

/// A precondition on the input data does not hold.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not reach the requested accuracy.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInputError(msg);
}

inline void require_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite()) throw InvalidInputError(what + ": non-finite entries");
}

/// Scale used to turn relative tolerances into absolute ones; never below 1
/// so that zero and tiny matrices are judged on an absolute scale.
inline double norm_scale(const Matrix& m) { return std::max(1.0, m.norm()); }

inline bool is_symmetric(const Matrix& s, double tol = kDefaultTol) {
  if (s.rows() != s.cols()) return false;
  return (s - s.transpose()).norm() <= tol * norm_scale(s);
}

/// Symmetric part (S + S^T)/2; the stored form of every quadric matrix.
inline Matrix symmetrize(const Matrix& s) {
  return 0.5 * (s + s.transpose());
}

/// x^n for integer n with the polynomial convention 0^0 = 1.
inline Complex cpow(Complex x, int n) {
  if (n < 0) return Complex(1, 0) / cpow(x, -n);
  Complex r(1, 0);
  while (n) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

}  // namespace qs
